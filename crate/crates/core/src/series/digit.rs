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
    n: usize,
}

/// `S[[E/p]] / ((E/p)^n)`, presented as `Z_p[T]/(T^n)[u]/(E(u) - pT)`.
///
/// An element is a list of `n` digits `d_j` in `O_K = Z_p[u]/(E)`, standing for
/// `sum_j d_j (E/p)^j`. Multiplying digits lands in degree `<= 2e-2`; the part
/// `q E` of such a product equals `p q T`, so it carries into the next digit.
#[derive(Clone)]
pub struct DigitRing(Arc<Ctx>);

impl PartialEq for DigitRing {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}
impl Eq for DigitRing {}

impl fmt::Debug for DigitRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S[[E/p]]/(E/p)^{} for E = {:?}", self.0.n, self.0.e.poly())
    }
}

impl DigitRing {
    pub fn new(e: Eisenstein, n: usize) -> Self {
        assert!(n >= 1, "need at least one digit");
        DigitRing(Arc::new(Ctx { e, n }))
    }

    pub fn eisenstein(&self) -> &Eisenstein {
        &self.0.e
    }

    pub fn prime(&self) -> u64 {
        self.0.e.prime()
    }

    pub fn digits(&self) -> usize {
        self.0.n
    }

    pub fn e_degree(&self) -> usize {
        self.0.e.degree()
    }

    pub fn dim(&self) -> usize {
        self.e_degree() * self.0.n
    }

    pub fn zero(&self, prec: u32) -> DigitElem {
        DigitElem { ring: self.clone(), prec, c: vec![BigUint::zero(); self.dim()] }
    }

    pub fn one(&self, prec: u32) -> DigitElem {
        self.from_poly(&ZPoly::one(), prec)
    }

    /// The element `E/p`.
    pub fn t(&self, prec: u32) -> DigitElem {
        let mut x = self.zero(prec);
        if self.0.n > 1 {
            x.c[self.e_degree()] = BigUint::one() % pow_p(self.prime(), prec);
        }
        x
    }

    /// Image of an integer polynomial: with `f = sum_j r_j E^j`, digit `j` is `p^j r_j`.
    pub fn from_poly(&self, f: &ZPoly, prec: u32) -> DigitElem {
        self.from_adic_parts(f, prec, 0).expect("shift 0 never fails")
    }

    /// Image of `f / p^shift`, which must be integral in this ring.
    fn from_adic_parts(&self, f: &ZPoly, prec: u32, shift: u32) -> Result<DigitElem> {
        let e = self.e_degree();
        let m = pow_p(self.prime(), prec);
        let parts = f.adic_expansion(self.0.e.poly());
        let mut c = vec![BigUint::zero(); self.dim()];
        for (j, r) in parts.iter().enumerate().take(self.0.n) {
            let j32 = j as u32;
            let r = if j32 >= shift {
                r.scale(&BigInt::from(pow_p(self.prime(), j32 - shift)))
            } else {
                r.div_exact_int(&BigInt::from(pow_p(self.prime(), shift - j32))).ok_or_else(|| {
                    Error::InsufficientValuation { needed: shift - j32, found: r.content_valuation(self.prime()).unwrap_or(0) }
                })?
            };
            c[j * e..(j + 1) * e].clone_from_slice(&zpoly_residues(&r, e, &m));
        }
        Ok(DigitElem { ring: self.clone(), prec, c })
    }

    pub fn from_digits(&self, digits: Vec<Vec<BigUint>>, prec: u32) -> Result<DigitElem> {
        let e = self.e_degree();
        if digits.len() > self.0.n || digits.iter().any(|d| d.len() > e) {
            return Err(Error::Invalid(format!("digit array does not fit {self:?}")));
        }
        let m = pow_p(self.prime(), prec);
        let mut c = vec![BigUint::zero(); self.dim()];
        for (j, d) in digits.iter().enumerate() {
            for (a, x) in d.iter().enumerate() {
                c[j * e + a] = x % &m;
            }
        }
        Ok(DigitElem { ring: self.clone(), prec, c })
    }

    pub fn random(&self, prec: u32, rng: &mut dyn RngCore) -> DigitElem {
        let m = pow_p(self.prime(), prec);
        DigitElem { ring: self.clone(), prec, c: random_residues(&m, self.dim(), rng) }
    }
}

/// An element of the digit ring known modulo `p^N`.
#[derive(Clone, PartialEq)]
pub struct DigitElem {
    ring: DigitRing,
    prec: u32,
    c: Vec<BigUint>,
}

impl fmt::Debug for DigitElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for j in 0..self.ring.digits() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.digit_poly(j))?;
        }
        write!(f, "] + O({}^{})", self.ring.prime(), self.prec)
    }
}

impl DigitElem {
    pub fn ring(&self) -> &DigitRing {
        &self.ring
    }

    pub fn digit(&self, j: usize) -> &[BigUint] {
        let e = self.ring.e_degree();
        &self.c[j * e..(j + 1) * e]
    }

    pub fn digit_poly(&self, j: usize) -> ZPoly {
        residues_to_zpoly(self.digit(j))
    }

    pub fn digits(&self) -> Vec<Vec<BigUint>> {
        (0..self.ring.digits()).map(|j| self.digit(j).to_vec()).collect()
    }

    /// Coefficient of `u^a (E/p)^j`.
    pub fn coeff(&self, j: usize, a: usize) -> PAdic {
        PAdic::new(self.ring.prime(), self.prec, self.digit(j)[a].clone())
    }

    fn check(&self, o: &Self) {
        assert!(self.ring == o.ring, "mixing elements of {:?} and {:?}", self.ring, o.ring);
    }

    pub fn inverse(&self) -> Result<DigitElem> {
        let c0 = self.coeff(0, 0);
        if !c0.is_unit() {
            return Err(Error::NotAUnit(format!("{self:?}")));
        }
        let b0 = self.ring.from_poly(&ZPoly::constant(BigInt::from(c0.inverse()?.residue().clone())), self.prec);
        invert_by_series(self, &b0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }
}

impl BaseRing for DigitElem {
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
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % &m).collect();
        DigitElem { ring: self.ring.clone(), prec, c }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn neg(&self) -> Self {
        let m = pow_p(self.prime(), self.prec);
        let c = self.c.iter().map(|a| if a.is_zero() { a.clone() } else { &m - a }).collect();
        DigitElem { ring: self.ring.clone(), prec: self.prec, c }
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let prec = self.prec.min(o.prec);
        let m = pow_p(self.prime(), prec);
        let e = self.ring.e_degree();
        let n = self.ring.digits();
        let w = 2 * e - 1;
        let mut raw = vec![vec![BigUint::zero(); w]; n];
        for i in 0..n {
            let di = self.digit(i);
            if di.iter().all(|x| x.is_zero()) {
                continue;
            }
            for j in 0..n - i {
                let dj = o.digit(j);
                for (a, x) in di.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (b, y) in dj.iter().enumerate() {
                        if !y.is_zero() {
                            raw[i + j][a + b] += x * y;
                        }
                    }
                }
            }
        }
        let pb = BigUint::from(self.prime());
        let mut c = vec![BigUint::zero(); self.ring.dim()];
        let mut carry: Vec<BigUint> = Vec::new();
        for (k, mut cur) in raw.into_iter().enumerate() {
            for (a, x) in carry.iter().enumerate() {
                cur[a] += x;
            }
            let (q, r) = divrem_monic_mod(&cur, self.ring.eisenstein().poly(), &m);
            c[k * e..(k + 1) * e].clone_from_slice(&r);
            carry = q.into_iter().map(|x| (x * &pb) % &m).collect();
        }
        DigitElem { ring: self.ring.clone(), prec, c }
    }
    fn valuation(&self) -> u32 {
        min_valuation(self.prime(), self.prec, &self.c)
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
        let c = self.c.iter().map(|a| a / &d).collect();
        Ok(DigitElem { ring: self.ring.clone(), prec: self.prec - k, c })
    }
    fn mul_p_power(&self, k: u32) -> Self {
        let d = pow_p(self.prime(), k);
        let c = self.c.iter().map(|a| a * &d).collect();
        DigitElem { ring: self.ring.clone(), prec: self.prec + k, c }
    }
    fn with_precision(&self, prec: u32) -> Self {
        let m = pow_p(self.prime(), prec);
        let c = self.c.iter().map(|a| a % &m).collect();
        DigitElem { ring: self.ring.clone(), prec, c }
    }
    fn random_like(&self, rng: &mut dyn RngCore) -> Self {
        self.ring.random(self.prec, rng)
    }
    fn inverse(&self) -> Result<Self> {
        DigitElem::inverse(self)
    }
    fn is_unit(&self) -> bool {
        self.prec > 0 && !(&self.c[0] % self.prime()).is_zero()
    }
}

impl PolyRing for DigitElem {
    fn embed(&self, f: &ZPoly) -> Self {
        self.ring.from_poly(f, self.prec)
    }
    fn embed_over_p(&self, f: &ZPoly) -> Result<Self> {
        self.ring.from_adic_parts(f, self.prec, 1)
    }
}
