//! Ring interfaces shared by the Witt-vector kernel and the constructions.

use alloc::format;
use core::fmt::Debug;

use num_bigint::BigInt;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::padic::{int_valuation, pow_p, PAdic};
use crate::zpoly::ZPoly;

/// A p-torsion-free ring, free of finite rank over `Z_p`, with elements held at
/// capped precision. Elements carry their ring, so constructors take `&self`
/// as a template.
pub trait BaseRing: Clone + PartialEq + Debug {
    fn prime(&self) -> u64;
    fn precision(&self) -> u32;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: &BigInt) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Largest `k` with `x` in `p^k R`, capped by the precision.
    fn valuation(&self) -> u32;
    fn div_p_power(&self, k: u32) -> Result<Self>;
    fn mul_p_power(&self, k: u32) -> Self;
    fn with_precision(&self, prec: u32) -> Self;
    /// A uniformly random element of the same ring at the same precision.
    fn random_like(&self, rng: &mut dyn RngCore) -> Self;
    /// Reduction of the element modulo the maximal ideal is nonzero.
    fn is_unit(&self) -> bool;
    fn inverse(&self) -> Result<Self>;

    fn is_zero(&self) -> bool {
        self.valuation() >= self.precision()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by an exactly known integer; precision rises by its valuation.
    fn mul_exact(&self, c: &BigInt) -> Self {
        match int_valuation(self.prime(), c) {
            None => self.zero_like(),
            Some(v) => {
                let unit = c / BigInt::from(pow_p(self.prime(), v));
                self.mul(&self.from_int_like(&unit)).mul_p_power(v)
            }
        }
    }

    /// Agreement modulo the smaller of the two precisions.
    fn eq_mod(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

/// A ring receiving `Z[u]`, so that integer polynomials in `u` have images.
pub trait PolyRing: BaseRing {
    /// Image of `f(u)` at the precision of `self`.
    fn embed(&self, f: &ZPoly) -> Self;
    /// Image of `f(u)/p`, when that image exists in the ring.
    fn embed_over_p(&self, f: &ZPoly) -> Result<Self>;
}

/// Inverse of `a` given a constant approximation `b0` with `1 - a*b0` nilpotent:
/// `a^{-1} = b0 * prod_k (1 + x^{2^k})`, `x = 1 - a*b0`.
pub(crate) fn invert_by_series<R: BaseRing>(a: &R, b0: &R) -> Result<R> {
    let one = a.one_like();
    let mut x = one.sub(&a.mul(b0));
    let mut acc = b0.clone();
    for _ in 0..64 {
        if x.is_zero() {
            return Ok(acc);
        }
        acc = acc.mul(&one.add(&x));
        x = x.mul(&x);
    }
    Err(Error::NotAUnit(format!("geometric series did not terminate for {a:?}")))
}

impl BaseRing for PAdic {
    fn prime(&self) -> u64 {
        PAdic::prime(self)
    }
    fn precision(&self) -> u32 {
        PAdic::precision(self)
    }
    fn zero_like(&self) -> Self {
        PAdic::zero(self.prime(), self.precision())
    }
    fn one_like(&self) -> Self {
        PAdic::one(self.prime(), self.precision())
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        PAdic::from_int(self.prime(), self.precision(), n)
    }
    fn add(&self, o: &Self) -> Self {
        PAdic::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        PAdic::sub(self, o)
    }
    fn neg(&self) -> Self {
        PAdic::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        PAdic::mul(self, o)
    }
    fn valuation(&self) -> u32 {
        PAdic::valuation(self)
    }
    fn div_p_power(&self, k: u32) -> Result<Self> {
        PAdic::div_p_power(self, k)
    }
    fn mul_p_power(&self, k: u32) -> Self {
        PAdic::mul_p_power(self, k)
    }
    fn with_precision(&self, prec: u32) -> Self {
        PAdic::with_precision(self, prec)
    }
    fn random_like(&self, rng: &mut dyn RngCore) -> Self {
        PAdic::random(self.prime(), self.precision(), rng)
    }
    fn is_unit(&self) -> bool {
        PAdic::is_unit(self)
    }
    fn inverse(&self) -> Result<Self> {
        PAdic::inverse(self)
    }
    fn is_zero(&self) -> bool {
        PAdic::is_zero(self)
    }
    fn pow(&self, e: u64) -> Self {
        PAdic::pow(self, e)
    }
    fn mul_exact(&self, c: &BigInt) -> Self {
        PAdic::mul_exact(self, c)
    }
}
