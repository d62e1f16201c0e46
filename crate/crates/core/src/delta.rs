//! The free delta-ring `Z[u]{t}[eps]/(eps^2)`, truncated at `delta^D(t)` and at a
//! total degree in the generators, with `phi(u) = u^p`, `phi(eps) = 0` and
//! `phi(delta^i t) = (delta^i t)^p + p delta^{i+1} t`.
//!
//! `eta` is the ring map `u -> u + eps E(u)`, `t -> t (1 - eps E'(u))`, extended to
//! `delta^i(t)` by commuting with `delta`. Its `eps`-coefficient is the Sen
//! operator `Theta`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::Eisenstein;
use crate::zpoly::ZPoly;

/// Truncation: generators `t, delta t, ..., delta^depth t`; monomials of total
/// degree at most `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaCaps {
    pub depth: usize,
    pub degree: u32,
}

impl DeltaCaps {
    pub fn for_prime(p: u64) -> Self {
        DeltaCaps { depth: 4, degree: 3 * p as u32 }
    }
}

/// Exponent vector over `t, delta t, ..., delta^depth t`.
pub type Monomial = Vec<u32>;

/// `re + eps * eps_coeff`, both in `Z[u]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DualCoeff {
    pub re: ZPoly,
    pub eps: ZPoly,
}

impl DualCoeff {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }

    fn mul(&self, o: &DualCoeff) -> DualCoeff {
        DualCoeff { re: self.re.mul(&o.re), eps: self.re.mul(&o.eps).add(&self.eps.mul(&o.re)) }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct DeltaPoly {
    p: u64,
    caps: DeltaCaps,
    terms: BTreeMap<Monomial, DualCoeff>,
}

fn degree_of(m: &Monomial) -> u32 {
    m.iter().sum()
}

fn fmt_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| {
            let g = match i {
                0 => String::from("t"),
                1 => String::from("d(t)"),
                _ => format!("d^{i}(t)"),
            };
            if a == 1 {
                g
            } else {
                format!("{g}^{a}")
            }
        })
        .collect();
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join("*")
    }
}

impl fmt::Debug for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?} + eps {:?}) {}", c.re, c.eps, fmt_monomial(m))?;
        }
        Ok(())
    }
}

impl DeltaPoly {
    pub fn zero(p: u64, caps: DeltaCaps) -> Self {
        DeltaPoly { p, caps, terms: BTreeMap::new() }
    }

    /// A polynomial in `u` alone.
    pub fn constant(p: u64, caps: DeltaCaps, f: ZPoly) -> Self {
        let mut x = Self::zero(p, caps);
        x.add_term(vec![0; caps.depth + 1], DualCoeff { re: f, eps: ZPoly::zero() });
        x
    }

    pub fn one(p: u64, caps: DeltaCaps) -> Self {
        Self::constant(p, caps, ZPoly::one())
    }

    /// `delta^i(t)`.
    pub fn generator(p: u64, caps: DeltaCaps, i: usize) -> Result<Self> {
        if i > caps.depth {
            return Err(Error::CapExceeded(format!("delta^{i}(t) beyond depth {}", caps.depth)));
        }
        let mut m = vec![0; caps.depth + 1];
        m[i] = 1;
        let mut x = Self::zero(p, caps);
        x.add_term(m, DualCoeff { re: ZPoly::one(), eps: ZPoly::zero() });
        Ok(x)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn caps(&self) -> DeltaCaps {
        self.caps
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &DualCoeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> DualCoeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(degree_of).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: DualCoeff) {
        let slot = self.terms.entry(m).or_default();
        slot.re = slot.re.add(&c.re);
        slot.eps = slot.eps.add(&c.eps);
        self.terms.retain(|_, c| !c.is_zero());
    }

    fn check(&self, o: &DeltaPoly) {
        assert!(self.p == o.p && self.caps == o.caps, "mixing delta-polynomials over different truncations");
    }

    pub fn add(&self, o: &DeltaPoly) -> DeltaPoly {
        self.check(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DeltaPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), DualCoeff { re: c.re.neg(), eps: c.eps.neg() })).collect();
        DeltaPoly { p: self.p, caps: self.caps, terms }
    }

    pub fn sub(&self, o: &DeltaPoly) -> DeltaPoly {
        self.add(&o.neg())
    }

    /// `eps * x`.
    pub fn times_eps(&self) -> DeltaPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| !c.re.is_zero())
            .map(|(m, c)| (m.clone(), DualCoeff { re: ZPoly::zero(), eps: c.re.clone() }))
            .collect();
        DeltaPoly { p: self.p, caps: self.caps, terms }
    }

    /// `f(u) * x`.
    pub fn scale(&self, f: &ZPoly) -> DeltaPoly {
        let mut out = Self::zero(self.p, self.caps);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), DualCoeff { re: c.re.mul(f), eps: c.eps.mul(f) });
        }
        out
    }

    pub fn mul(&self, o: &DeltaPoly) -> Result<DeltaPoly> {
        self.check(o);
        let mut out = Self::zero(self.p, self.caps);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1.mul(c2);
                if c.is_zero() {
                    continue;
                }
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                if degree_of(&m) > self.caps.degree {
                    return Err(Error::CapExceeded(format!(
                        "monomial {} exceeds total degree {}",
                        fmt_monomial(&m),
                        self.caps.degree
                    )));
                }
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<DeltaPoly> {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.caps);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The `eps`-free part.
    pub fn real_part(&self) -> DeltaPoly {
        let mut out = Self::zero(self.p, self.caps);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), DualCoeff { re: c.re.clone(), eps: ZPoly::zero() });
        }
        out
    }

    /// The coefficient of `eps`, as an `eps`-free polynomial.
    pub fn eps_part(&self) -> DeltaPoly {
        let mut out = Self::zero(self.p, self.caps);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), DualCoeff { re: c.eps.clone(), eps: ZPoly::zero() });
        }
        out
    }

    /// The Frobenius lift.
    pub fn phi(&self) -> Result<DeltaPoly> {
        let p = self.p;
        let mut images = Vec::with_capacity(self.caps.depth + 1);
        for i in 0..=self.caps.depth {
            let used = self.terms.iter().any(|(m, c)| m[i] > 0 && !c.re.is_zero());
            if !used {
                images.push(None);
                continue;
            }
            let g = Self::generator(p, self.caps, i)?;
            let next = Self::generator(p, self.caps, i + 1)?;
            images.push(Some(g.pow(p)?.add(&next.scale(&ZPoly::constant(BigInt::from(p))))));
        }
        let mut out = Self::zero(p, self.caps);
        for (m, c) in &self.terms {
            if c.re.is_zero() {
                continue;
            }
            let mut term = Self::constant(p, self.caps, c.re.substitute_power(p as usize));
            for (i, &a) in m.iter().enumerate() {
                if a > 0 {
                    let img = images[i].as_ref().expect("computed above");
                    term = term.mul(&img.pow(a as u64)?)?;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `delta(x) = (phi(x) - x^p) / p`, the division checked exact.
    pub fn delta(&self) -> Result<DeltaPoly> {
        let diff = self.phi()?.sub(&self.pow(self.p)?);
        let pb = BigInt::from(self.p);
        let mut out = Self::zero(self.p, self.caps);
        for (m, c) in &diff.terms {
            let div = |f: &ZPoly| {
                f.div_exact_int(&pb)
                    .ok_or_else(|| Error::InexactDivision(format!("coefficient of {} is {:?}", fmt_monomial(m), f)))
            };
            out.add_term(m.clone(), DualCoeff { re: div(&c.re)?, eps: div(&c.eps)? });
        }
        Ok(out)
    }

    /// Monomials where `self` and `o` differ, with both coefficients.
    pub fn diff(&self, o: &DeltaPoly) -> Vec<String> {
        let d = self.sub(o);
        d.terms
            .keys()
            .map(|m| {
                let (a, b) = (self.coeff(m), o.coeff(m));
                format!("{}: ({:?} + eps {:?}) vs ({:?} + eps {:?})", fmt_monomial(m), a.re, a.eps, b.re, b.eps)
            })
            .collect()
    }
}

/// `f / g` over `Z`, when exact.
fn div_exact_poly(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let dg = g.degree()?;
    let lead = g.coeff(dg);
    let mut r = f.clone();
    let mut q = vec![BigInt::zero(); f.coeffs().len().saturating_sub(dg).max(1)];
    while let Some(dr) = r.degree() {
        if dr < dg {
            return None;
        }
        let (c, rem) = r.coeff(dr).div_rem(&lead);
        if !rem.is_zero() {
            return None;
        }
        q[dr - dg] = c.clone();
        r = r.sub(&ZPoly::monomial(c, dr - dg).mul(g));
    }
    Some(ZPoly::new(q))
}

/// `eta` on generators, computed once.
#[derive(Clone, Debug)]
pub struct EtaMap {
    e: Eisenstein,
    caps: DeltaCaps,
    images: Vec<DeltaPoly>,
    stopped: Option<Error>,
}

impl EtaMap {
    /// Images of `delta^i(t)` for as many `i <= depth` as the caps allow.
    pub fn new(e: &Eisenstein, caps: DeltaCaps) -> Self {
        let p = e.prime();
        let t = DeltaPoly::generator(p, caps, 0).expect("depth >= 0");
        let first = t.sub(&t.scale(&e.derivative()).times_eps());
        let mut images = vec![first];
        let mut stopped = None;
        while images.len() <= caps.depth {
            match images.last().expect("nonempty").delta() {
                Ok(x) => images.push(x),
                Err(err) => {
                    stopped = Some(err);
                    break;
                }
            }
        }
        EtaMap { e: e.clone(), caps, images, stopped }
    }

    pub fn eisenstein(&self) -> &Eisenstein {
        &self.e
    }

    /// `eta(delta^i(t))`.
    pub fn image(&self, i: usize) -> Result<&DeltaPoly> {
        self.images.get(i).ok_or_else(|| {
            self.stopped
                .clone()
                .unwrap_or_else(|| Error::CapExceeded(format!("delta^{i}(t) beyond depth {}", self.caps.depth)))
        })
    }

    /// `f(u + eps E) = f + eps f' E`.
    pub fn apply_u_poly(&self, f: &ZPoly) -> DualCoeff {
        DualCoeff { re: f.clone(), eps: f.derivative().mul(self.e.poly()) }
    }

    pub fn apply(&self, x: &DeltaPoly) -> Result<DeltaPoly> {
        let p = self.e.prime();
        let mut out = DeltaPoly::zero(p, self.caps);
        for (m, c) in &x.terms {
            let mut coeff = self.apply_u_poly(&c.re);
            coeff.eps = coeff.eps.add(&c.eps);
            let mut term = DeltaPoly::zero(p, self.caps);
            term.add_term(vec![0; self.caps.depth + 1], coeff);
            for (i, &a) in m.iter().enumerate() {
                if a > 0 {
                    term = term.mul(&self.image(i)?.pow(a as u64)?)?;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

pub fn eta_apply(x: &DeltaPoly, e: &Eisenstein) -> Result<DeltaPoly> {
    EtaMap::new(e, x.caps).apply(x)
}

/// `Theta(x)`: the `eps`-coefficient of `eta` on the `eps`-free part of `x`.
pub fn theta(x: &DeltaPoly, eta: &EtaMap) -> Result<DeltaPoly> {
    Ok(eta.apply(&x.real_part())?.eps_part())
}

/// `(prod_{j<i} delta^j t)^{p-1} t`.
fn product_term(p: u64, caps: DeltaCaps, i: usize) -> Result<DeltaPoly> {
    let mut prod = DeltaPoly::one(p, caps);
    for j in 0..i {
        prod = prod.mul(&DeltaPoly::generator(p, caps, j)?)?;
    }
    prod.pow(p - 1)?.mul(&DeltaPoly::generator(p, caps, 0)?)
}

fn sign(i: usize) -> BigInt {
    if i % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Closed form `delta^i t + (-1)^{i-1} (prod_{j<i} delta^j t)^{p-1} t E'(u) eps`, `i >= 1`.
pub fn closed_eta(e: &Eisenstein, i: usize, caps: DeltaCaps) -> Result<DeltaPoly> {
    let p = e.prime();
    let g = DeltaPoly::generator(p, caps, i)?;
    if i == 0 {
        return Ok(g.sub(&g.scale(&e.derivative()).times_eps()));
    }
    let corr = product_term(p, caps, i)?.scale(&e.derivative().scale(&sign(i))).times_eps();
    Ok(g.add(&corr))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaLevel {
    pub i: usize,
    /// The recursive and closed forms agree.
    pub pass: bool,
    pub diff: Vec<String>,
    /// Every `eps`-coefficient of `eta(delta^i t) - delta^i t` is divisible by `t` and by `E'(u)`.
    pub divisible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaReport {
    pub levels: Vec<EtaLevel>,
}

impl EtaReport {
    pub fn pass(&self) -> bool {
        self.levels.iter().all(|l| l.pass && l.divisible)
    }
}

/// Compare `eta(delta^i t)`, obtained as `delta(eta(delta^{i-1} t))`, with the
/// closed form for `1 <= i <= i_max`.
pub fn verify_eta_on_delta_powers(e: &Eisenstein, i_max: usize, caps: DeltaCaps) -> Result<EtaReport> {
    let eta = EtaMap::new(e, caps);
    let p = e.prime();
    let ep = e.derivative();
    let mut levels = Vec::new();
    for i in 1..=i_max {
        let got = eta.image(i)?;
        let expected = closed_eta(e, i, caps)?;
        let diff = got.diff(&expected);
        let correction = got.sub(&DeltaPoly::generator(p, caps, i)?);
        let divisible = correction.real_part().is_zero()
            && correction.terms().all(|(m, c)| m[0] >= 1 && div_exact_poly(&c.eps, &ep).is_some());
        levels.push(EtaLevel { i, pass: diff.is_empty(), diff, divisible });
    }
    Ok(EtaReport { levels })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaCheck {
    pub label: String,
    pub pass: bool,
    pub diff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    pub generators: Vec<ThetaCheck>,
    pub lambda_powers: Vec<ThetaCheck>,
}

impl ThetaReport {
    pub fn pass(&self) -> bool {
        self.generators.iter().chain(&self.lambda_powers).all(|c| c.pass)
    }
}

/// For `E = u - p`: `Theta(t) = -t`, `Theta(delta^i t) = (-1)^{i-1} (prod_{j<i} delta^j t)^{p-1} t`
/// and `Theta(lambda^k) = k lambda^k`.
pub fn theta_on_envelope_generators(p: u64, i_max: usize, k_max: usize, caps: DeltaCaps) -> Result<ThetaReport> {
    let e = Eisenstein::unramified(p);
    let eta = EtaMap::new(&e, caps);
    let check = |label: String, got: DeltaPoly, expected: DeltaPoly| {
        let diff = got.diff(&expected);
        ThetaCheck { label, pass: diff.is_empty(), diff }
    };
    let mut generators = Vec::new();
    for i in 0..=i_max {
        let g = DeltaPoly::generator(p, caps, i)?;
        let expected = if i == 0 { g.neg() } else { product_term(p, caps, i)?.scale(&ZPoly::constant(sign(i))) };
        let label = if i == 0 { String::from("Theta(t)") } else { format!("Theta(d^{i}(t))") };
        generators.push(check(label, theta(&g, &eta)?, expected));
    }
    let mut lambda_powers = Vec::new();
    for k in 0..=k_max {
        let lk = e.poly().pow(k as u64);
        let x = DeltaPoly::constant(p, caps, lk.clone());
        let expected = DeltaPoly::constant(p, caps, lk.scale(&BigInt::from(k)));
        lambda_powers.push(check(format!("Theta(lambda^{k})"), theta(&x, &eta)?, expected));
    }
    Ok(ThetaReport { generators, lambda_powers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sen::SenRing;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn caps3() -> DeltaCaps {
        DeltaCaps::for_prime(3)
    }

    fn gen(p: u64, i: usize) -> DeltaPoly {
        DeltaPoly::generator(p, DeltaCaps::for_prime(p), i).unwrap()
    }

    fn upoly(p: u64, c: &[i64]) -> DeltaPoly {
        DeltaPoly::constant(p, DeltaCaps::for_prime(p), ZPoly::from_i64(c))
    }

    /// A random element of degree <= 1 in the generators `t, delta t`.
    fn random_linear(p: u64, rng: &mut ChaCha8Rng, with_eps: bool) -> DeltaPoly {
        let mut rp = || ZPoly::new((0..3).map(|_| BigInt::from(rng.gen_range(-5i64..6))).collect());
        let mut x = DeltaPoly::constant(p, DeltaCaps::for_prime(p), rp());
        for i in 0..2 {
            x = x.add(&gen(p, i).scale(&rp()));
        }
        if with_eps {
            x = x.add(&gen(p, 0).scale(&rp()).times_eps());
        }
        x
    }

    #[test]
    fn delta_examples() {
        let p = 3;
        assert_eq!(gen(p, 0).delta().unwrap(), gen(p, 1));
        assert!(upoly(p, &[0, 1]).delta().unwrap().is_zero());
        assert!(upoly(p, &[1, 2, 3]).times_eps().delta().unwrap().is_zero());
        // delta(2) = (2 - 8)/3 = -2.
        assert_eq!(upoly(p, &[2]).delta().unwrap(), upoly(p, &[-2]));
    }

    #[test]
    fn delta_depth_cap() {
        let err = gen(3, 4).delta().unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)), "{err:?}");
    }

    #[test]
    fn degree_cap() {
        let caps = DeltaCaps { depth: 4, degree: 5 };
        let t = DeltaPoly::generator(3, caps, 0).unwrap();
        assert!(t.pow(5).is_ok());
        assert!(matches!(t.pow(6), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn eta_examples() {
        let e = Eisenstein::from_i64(3, &[-3, 0, 1]).unwrap();
        let eta = EtaMap::new(&e, caps3());
        let u = upoly(3, &[0, 1]);
        assert_eq!(eta.apply(&u).unwrap(), u.add(&DeltaPoly::constant(3, caps3(), e.poly().clone()).times_eps()));
        let t = gen(3, 0);
        assert_eq!(eta.apply(&t).unwrap(), t.sub(&t.scale(&e.derivative()).times_eps()));
        let ee = DeltaPoly::constant(3, caps3(), e.poly().clone());
        let expected = ee.add(&ee.scale(&e.derivative()).times_eps());
        assert_eq!(eta.apply(&ee).unwrap(), expected);
    }

    #[test]
    fn eta_of_delta_t() {
        for e in [Eisenstein::unramified(3), Eisenstein::from_i64(3, &[-3, 0, 1]).unwrap()] {
            let eta = EtaMap::new(&e, caps3());
            let expected = gen(3, 1).add(&gen(3, 0).pow(3).unwrap().scale(&e.derivative()).times_eps());
            assert_eq!(eta.image(1).unwrap(), &expected);
        }
    }

    #[test]
    fn closed_form_agrees() {
        for e in [Eisenstein::unramified(3), Eisenstein::from_i64(3, &[-3, 0, 1]).unwrap(), Eisenstein::from_i64(3, &[6, 3, 1]).unwrap()] {
            let rep = verify_eta_on_delta_powers(&e, 3, caps3()).unwrap();
            assert!(rep.pass(), "{rep:?}");
        }
        let rep = verify_eta_on_delta_powers(&Eisenstein::from_i64(5, &[-5, 0, 1]).unwrap(), 2, DeltaCaps::for_prime(5)).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn flipped_sign_is_detected() {
        let e = Eisenstein::unramified(3);
        let eta = EtaMap::new(&e, caps3());
        let wrong = gen(3, 2).add(&product_term(3, caps3(), 2).unwrap().times_eps());
        assert!(!eta.image(2).unwrap().diff(&wrong).is_empty());
    }

    #[test]
    fn eta_commutes_with_delta_on_generators() {
        let e = Eisenstein::from_i64(3, &[3, -3, 1]).unwrap();
        let eta = EtaMap::new(&e, caps3());
        for i in 0..3 {
            let lhs = eta.apply(&gen(3, i).delta().unwrap()).unwrap();
            let rhs = eta.apply(&gen(3, i)).unwrap().delta().unwrap();
            assert_eq!(lhs, rhs, "i={i}");
        }
    }

    #[test]
    fn theta_report_for_p3() {
        let rep = theta_on_envelope_generators(3, 3, 5, caps3()).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.generators.len(), 4);
        assert_eq!(rep.lambda_powers.len(), 6);
        // Theta(delta t) = t^p.
        let eta = EtaMap::new(&Eisenstein::unramified(3), caps3());
        assert_eq!(theta(&gen(3, 1), &eta).unwrap(), gen(3, 0).pow(3).unwrap());
    }

    #[test]
    fn theta_on_u_matches_sen_ring() {
        let e = Eisenstein::from_i64(3, &[-3, 0, 1]).unwrap();
        let eta = EtaMap::new(&e, caps3());
        let base = SenRing::new(e.clone(), 3, 10);
        for f in [ZPoly::from_i64(&[1, 2, 3]), ZPoly::from_i64(&[0, 0, 0, 1]), e.poly().pow(2)] {
            let th = theta(&DeltaPoly::constant(3, caps3(), f.clone()), &eta).unwrap();
            let got = th.coeff(&vec![0; 5]).re;
            let via_sen = base.theta(&base.ring().from_poly(&f, 10));
            assert_eq!(base.ring().from_poly(&got, 10), via_sen);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn delta_leibniz(seed in any::<u64>()) {
            let p = 3;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y) = (random_linear(p, &mut rng, true), random_linear(p, &mut rng, true));
            let (dx, dy) = (x.delta().unwrap(), y.delta().unwrap());
            let lhs = x.mul(&y).unwrap().delta().unwrap();
            let rhs = x.pow(p).unwrap().mul(&dy).unwrap()
                .add(&y.pow(p).unwrap().mul(&dx).unwrap())
                .add(&dx.mul(&dy).unwrap().scale(&ZPoly::constant(BigInt::from(p))));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn delta_additivity(seed in any::<u64>()) {
            // delta(x + y) = delta x + delta y - sum_{0<i<p} C(p,i)/p x^i y^{p-i}, p = 3.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y) = (random_linear(3, &mut rng, false), random_linear(3, &mut rng, false));
            let cross = x.mul(&y).unwrap().mul(&x.add(&y)).unwrap();
            let rhs = x.delta().unwrap().add(&y.delta().unwrap()).sub(&cross);
            prop_assert_eq!(x.add(&y).delta().unwrap(), rhs);
        }

        #[test]
        fn eta_is_multiplicative_and_trivial_mod_eps(seed in any::<u64>()) {
            let e = Eisenstein::from_i64(3, &[-3, 0, 1]).unwrap();
            let eta = EtaMap::new(&e, caps3());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y) = (random_linear(3, &mut rng, true), random_linear(3, &mut rng, false));
            let lhs = eta.apply(&x.mul(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs, eta.apply(&x).unwrap().mul(&eta.apply(&y).unwrap()).unwrap());
            prop_assert_eq!(eta.apply(&x).unwrap().real_part(), x.real_part());
        }

        #[test]
        fn theta_is_a_derivation_over_the_ring(seed in any::<u64>()) {
            let e = Eisenstein::from_i64(3, &[3, -3, 1]).unwrap();
            let eta = EtaMap::new(&e, caps3());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_linear(3, &mut rng, false);
            let f = ZPoly::new((0..4).map(|_| BigInt::from(rng.gen_range(-5i64..6))).collect());
            let lhs = theta(&x.scale(&f), &eta).unwrap();
            let rhs = x.scale(&f.derivative().mul(e.poly())).add(&theta(&x, &eta).unwrap().scale(&f));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
