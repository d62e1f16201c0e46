use num_bigint::BigInt;
use rand::RngCore;

use crate::base::{BaseRing, PolyRing};
use crate::error::Result;
use crate::zpoly::ZPoly;

/// `R[eps]/(eps^2)`: the element `re + eps * eps_part`.
#[derive(Clone, PartialEq, Debug)]
pub struct Dual<R> {
    pub re: R,
    pub eps: R,
}

impl<R: BaseRing> Dual<R> {
    pub fn new(re: R, eps: R) -> Self {
        Dual { re, eps }
    }

    pub fn real(re: R) -> Self {
        let eps = re.zero_like();
        Dual { re, eps }
    }

    /// `eps * x`.
    pub fn pure_eps(x: R) -> Self {
        Dual { re: x.zero_like(), eps: x }
    }

    /// The Frobenius lift kills `eps`; `frob` is applied to the real part.
    pub fn frobenius_with(&self, frob: impl Fn(&R) -> R) -> Self {
        Dual::real(frob(&self.re))
    }

    pub fn inverse_with(&self, inv: impl Fn(&R) -> Result<R>) -> Result<Self> {
        let a = inv(&self.re)?;
        let b = a.mul(&a).mul(&self.eps).neg();
        Ok(Dual { re: a, eps: b })
    }
}

impl<R: BaseRing> BaseRing for Dual<R> {
    fn prime(&self) -> u64 {
        self.re.prime()
    }
    fn precision(&self) -> u32 {
        self.re.precision().min(self.eps.precision())
    }
    fn zero_like(&self) -> Self {
        Dual::real(self.re.zero_like())
    }
    fn one_like(&self) -> Self {
        Dual::real(self.re.one_like())
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Dual::real(self.re.from_int_like(n))
    }
    fn add(&self, o: &Self) -> Self {
        Dual { re: self.re.add(&o.re), eps: self.eps.add(&o.eps) }
    }
    fn sub(&self, o: &Self) -> Self {
        Dual { re: self.re.sub(&o.re), eps: self.eps.sub(&o.eps) }
    }
    fn neg(&self) -> Self {
        Dual { re: self.re.neg(), eps: self.eps.neg() }
    }
    fn mul(&self, o: &Self) -> Self {
        Dual { re: self.re.mul(&o.re), eps: self.re.mul(&o.eps).add(&self.eps.mul(&o.re)) }
    }
    fn valuation(&self) -> u32 {
        self.re.valuation().min(self.eps.valuation())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn div_p_power(&self, k: u32) -> Result<Self> {
        Ok(Dual { re: self.re.div_p_power(k)?, eps: self.eps.div_p_power(k)? })
    }
    fn mul_p_power(&self, k: u32) -> Self {
        Dual { re: self.re.mul_p_power(k), eps: self.eps.mul_p_power(k) }
    }
    fn with_precision(&self, prec: u32) -> Self {
        Dual { re: self.re.with_precision(prec), eps: self.eps.with_precision(prec) }
    }
    fn random_like(&self, rng: &mut dyn RngCore) -> Self {
        Dual { re: self.re.random_like(rng), eps: self.eps.random_like(rng) }
    }
    fn is_unit(&self) -> bool {
        self.re.is_unit()
    }
    fn inverse(&self) -> Result<Self> {
        self.inverse_with(|a| a.inverse())
    }
    fn mul_exact(&self, c: &BigInt) -> Self {
        Dual { re: self.re.mul_exact(c), eps: self.eps.mul_exact(c) }
    }
}

impl<R: PolyRing> PolyRing for Dual<R> {
    fn embed(&self, f: &ZPoly) -> Self {
        Dual::real(self.re.embed(f))
    }
    fn embed_over_p(&self, f: &ZPoly) -> Result<Self> {
        Ok(Dual::real(self.re.embed_over_p(f)?))
    }
}
