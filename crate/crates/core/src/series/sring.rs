use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::RngCore;

use super::{divrem_monic_mod, min_valuation, random_residues, residues_to_zpoly, zpoly_residues, Eisenstein};
use crate::base::{invert_by_series, BaseRing, PolyRing};
use crate::error::{Error, Result};
use crate::padic::{pow_p, PAdic};
use crate::zpoly::ZPoly;

#[derive(PartialEq, Eq, Debug)]
struct Ctx {
    e: Eisenstein,
    m: usize,
    modulus: ZPoly,
}

/// The ring `Z_p[u]/(E^m)`, free over `Z_p` with basis `1, u, ..., u^{em-1}`.
#[derive(Clone)]
pub struct SRing(Arc<Ctx>);

impl PartialEq for SRing {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}
impl Eq for SRing {}

impl fmt::Debug for SRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}[u]/({:?})^{}", self.prime(), self.0.e.poly(), self.0.m)
    }
}

impl SRing {
    pub fn new(e: Eisenstein, m: usize) -> Self {
        assert!(m >= 1, "E-adic order must be positive");
        let modulus = e.poly().pow(m as u64);
        SRing(Arc::new(Ctx { e, m, modulus }))
    }

    pub fn eisenstein(&self) -> &Eisenstein {
        &self.0.e
    }

    pub fn prime(&self) -> u64 {
        self.0.e.prime()
    }

    pub fn order(&self) -> usize {
        self.0.m
    }

    pub fn e_degree(&self) -> usize {
        self.0.e.degree()
    }

    /// Rank over `Z_p`.
    pub fn dim(&self) -> usize {
        self.e_degree() * self.0.m
    }

    pub fn modulus(&self) -> &ZPoly {
        &self.0.modulus
    }

    pub fn zero(&self, prec: u32) -> SRingElem {
        SRingElem { ring: self.clone(), prec, coeffs: vec![BigUint::zero(); self.dim()] }
    }

    pub fn one(&self, prec: u32) -> SRingElem {
        self.from_poly(&ZPoly::one(), prec)
    }

    pub fn u(&self, prec: u32) -> SRingElem {
        self.from_poly(&ZPoly::u(), prec)
    }

    /// The image of `E(u)`.
    pub fn e_elem(&self, prec: u32) -> SRingElem {
        self.from_poly(self.0.e.poly(), prec)
    }

    pub fn from_poly(&self, f: &ZPoly, prec: u32) -> SRingElem {
        let r = f.rem_monic(&self.0.modulus);
        let m = pow_p(self.prime(), prec);
        SRingElem { ring: self.clone(), prec, coeffs: zpoly_residues(&r, self.dim(), &m) }
    }

    pub fn from_residues(&self, coeffs: Vec<BigUint>, prec: u32) -> Result<SRingElem> {
        if coeffs.len() > self.dim() {
            return Err(Error::Invalid(format!(
                "{} coefficients given for a ring of rank {}",
                coeffs.len(),
                self.dim()
            )));
        }
        let mut c = coeffs;
        c.resize(self.dim(), BigUint::zero());
        Ok(SRingElem::from_raw(self, prec, c))
    }

    /// Element with coordinates in the basis `u^a E^k` (`k` major, `a < e`).
    pub fn from_e_adic(&self, coords: &[BigUint], prec: u32) -> SRingElem {
        assert_eq!(coords.len(), self.dim());
        let e = self.e_degree();
        let mut acc = ZPoly::zero();
        let mut epow = ZPoly::one();
        for k in 0..self.0.m {
            let r = residues_to_zpoly(&coords[k * e..(k + 1) * e]);
            acc = acc.add(&r.mul(&epow));
            epow = epow.mul(self.0.e.poly());
        }
        self.from_poly(&acc, prec)
    }

    pub fn random(&self, prec: u32, rng: &mut dyn RngCore) -> SRingElem {
        let m = pow_p(self.prime(), prec);
        SRingElem { ring: self.clone(), prec, coeffs: random_residues(&m, self.dim(), rng) }
    }

    /// Precision to which `u -> u^p` is multiplicative on this quotient: the least
    /// `k` with `p(m-k) < m`, since `phi(E)^m = (E^p + p h)^m`.
    pub fn frobenius_precision(&self) -> u32 {
        let (m, p) = (self.0.m as u64, self.prime());
        (m * (p - 1) / p + 1) as u32
    }
}

/// An element of `Z_p[u]/(E^m)` known modulo `p^N`.
#[derive(Clone, PartialEq)]
pub struct SRingElem {
    ring: SRing,
    prec: u32,
    coeffs: Vec<BigUint>,
}

impl fmt::Debug for SRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + O({}^{})", self.to_zpoly(), self.ring.prime(), self.prec)
    }
}

impl SRingElem {
    fn from_raw(ring: &SRing, prec: u32, raw: Vec<BigUint>) -> Self {
        let m = pow_p(ring.prime(), prec);
        let (_, mut r) = divrem_monic_mod(&raw, ring.modulus(), &m);
        r.resize(ring.dim(), BigUint::zero());
        SRingElem { ring: ring.clone(), prec, coeffs: r }
    }

    pub fn ring(&self) -> &SRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PAdic {
        PAdic::new(self.ring.prime(), self.prec, self.coeffs[i].clone())
    }

    /// The canonical representative, coefficients in `[0, p^N)`.
    pub fn to_zpoly(&self) -> ZPoly {
        residues_to_zpoly(&self.coeffs)
    }

    /// Coordinates in the basis `u^a E^k` (`k` major, `a < e`).
    pub fn to_e_adic(&self) -> Vec<BigUint> {
        let e = self.ring.e_degree();
        let m = self.modulus();
        let parts = self.to_zpoly().adic_expansion(self.ring.eisenstein().poly());
        let mut out = Vec::with_capacity(self.ring.dim());
        for k in 0..self.ring.order() {
            let r = parts.get(k).cloned().unwrap_or_default();
            out.extend(zpoly_residues(&r, e, &m));
        }
        out
    }

    fn modulus(&self) -> BigUint {
        pow_p(self.ring.prime(), self.prec)
    }

    fn check(&self, o: &Self) {
        assert!(self.ring == o.ring, "mixing elements of {:?} and {:?}", self.ring, o.ring);
    }

    /// Formal `d/du` of the representative.
    pub fn derivative(&self) -> SRingElem {
        self.ring.from_poly(&self.to_zpoly().derivative(), self.prec)
    }

    /// `u -> u^p` applied to the representative. Multiplicative modulo
    /// `p^{frobenius_precision}`.
    pub fn frobenius_lift(&self) -> SRingElem {
        let f = self.to_zpoly().substitute_power(self.ring.prime() as usize);
        let m = self.modulus();
        let raw = zpoly_residues(&f, f.coeffs().len(), &m);
        SRingElem::from_raw(&self.ring, self.prec, raw)
    }

    pub fn inverse(&self) -> Result<SRingElem> {
        let c0 = self.coeff(0);
        if !c0.is_unit() {
            return Err(Error::NotAUnit(format!("{self:?}")));
        }
        let b0 = self.ring.from_poly(&ZPoly::constant(BigInt::from(c0.inverse()?.residue().clone())), self.prec);
        invert_by_series(self, &b0)
    }

    /// `x + O(p^N)` with the constant term an exact scalar.
    pub fn scalar(&self, c: &PAdic) -> SRingElem {
        self.ring.from_poly(&ZPoly::constant(BigInt::from(c.residue().clone())), self.prec.min(c.precision()))
    }
}

impl BaseRing for SRingElem {
    fn prime(&self) -> u64 {
        self.ring.prime()
    }
    fn precision(&self) -> u32 {
        self.prec
    }
    fn zero_like(&self) -> Self {
        self.ring.zero(self.prec)
    }
    fn one_like(&self) -> Self {
        self.ring.one(self.prec)
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        self.ring.from_poly(&ZPoly::constant(n.clone()), self.prec)
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        let prec = self.prec.min(o.prec);
        let m = pow_p(self.prime(), prec);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a + b) % &m).collect();
        SRingElem { ring: self.ring.clone(), prec, coeffs }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn neg(&self) -> Self {
        let m = self.modulus();
        let coeffs = self.coeffs.iter().map(|a| if a.is_zero() { a.clone() } else { &m - a }).collect();
        SRingElem { ring: self.ring.clone(), prec: self.prec, coeffs }
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let prec = self.prec.min(o.prec);
        let d = self.ring.dim();
        let mut raw = vec![BigUint::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        SRingElem::from_raw(&self.ring, prec, raw)
    }
    fn valuation(&self) -> u32 {
        min_valuation(self.prime(), self.prec, &self.coeffs)
    }
    fn div_p_power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.prec <= k {
            return Err(Error::PrecisionExhausted(format!("dividing by p^{k} at precision {}", self.prec)));
        }
        let v = self.valuation();
        if v < k {
            return Err(Error::InsufficientValuation { needed: k, found: v });
        }
        let d = pow_p(self.prime(), k);
        let coeffs = self.coeffs.iter().map(|a| a / &d).collect();
        Ok(SRingElem { ring: self.ring.clone(), prec: self.prec - k, coeffs })
    }
    fn mul_p_power(&self, k: u32) -> Self {
        let d = pow_p(self.prime(), k);
        let coeffs = self.coeffs.iter().map(|a| a * &d).collect();
        SRingElem { ring: self.ring.clone(), prec: self.prec + k, coeffs }
    }
    fn with_precision(&self, prec: u32) -> Self {
        let m = pow_p(self.prime(), prec);
        let coeffs = self.coeffs.iter().map(|a| a % &m).collect();
        SRingElem { ring: self.ring.clone(), prec, coeffs }
    }
    fn random_like(&self, rng: &mut dyn RngCore) -> Self {
        self.ring.random(self.prec, rng)
    }
    fn inverse(&self) -> Result<Self> {
        SRingElem::inverse(self)
    }
    fn is_unit(&self) -> bool {
        self.prec > 0 && !(&self.coeffs[0] % self.prime()).is_zero()
    }
}

impl PolyRing for SRingElem {
    fn embed(&self, f: &ZPoly) -> Self {
        self.ring.from_poly(f, self.prec)
    }
    fn embed_over_p(&self, f: &ZPoly) -> Result<Self> {
        let r = f.rem_monic(self.ring.modulus());
        let q = r.div_exact_int(&BigInt::from(self.prime())).ok_or(Error::InsufficientValuation { needed: 1, found: 0 })?;
        Ok(self.ring.from_poly(&q, self.prec))
    }
}

impl SRingElem {
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}
