//! Dense univariate polynomials over `Z`, used for exact symbolic work in `u`
//! before reduction into a capped ring.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::padic::int_valuation;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// `c * u^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn u() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u64) -> ZPoly {
        let mut base = self.clone();
        let mut acc = ZPoly::one();
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

    pub fn derivative(&self) -> ZPoly {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `f(u^k)`.
    pub fn substitute_power(&self, k: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Self::new(out)
    }

    /// `f(g)` by Horner's rule.
    pub fn compose(&self, g: &ZPoly) -> ZPoly {
        let mut acc = ZPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&ZPoly::constant(c.clone()));
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, d: &ZPoly) -> (ZPoly, ZPoly) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (ZPoly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = core::mem::take(&mut r[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs[..dd].iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem_monic(&self, d: &ZPoly) -> ZPoly {
        self.divrem_monic(d).1
    }

    /// Expansion `f = sum_k r_k d^k` with `deg r_k < deg d`.
    pub fn adic_expansion(&self, d: &ZPoly) -> Vec<ZPoly> {
        let mut out = Vec::new();
        let mut f = self.clone();
        while !f.is_zero() {
            let (q, r) = f.divrem_monic(d);
            out.push(r);
            f = q;
        }
        out
    }

    /// Exact division by an integer, if every coefficient is divisible.
    pub fn div_exact_int(&self, c: &BigInt) -> Option<ZPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// Minimum p-adic valuation of the coefficients; `None` for zero.
    pub fn content_valuation(&self, p: u64) -> Option<u32> {
        self.coeffs.iter().filter_map(|c| int_valuation(p, c)).min()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*u")?,
                _ => write!(f, "{c}*u^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = ZPoly> {
        prop::collection::vec(-50i64..50, 0..6).prop_map(|v| ZPoly::from_i64(&v))
    }

    #[test]
    fn derivative_and_substitution() {
        let e = ZPoly::from_i64(&[-3, 1]);
        assert_eq!(e.substitute_power(3), ZPoly::from_i64(&[-3, 0, 0, 1]));
        assert_eq!(ZPoly::from_i64(&[1, 2, 3]).derivative(), ZPoly::from_i64(&[2, 6]));
    }

    #[test]
    fn adic_expansion_in_u_minus_3() {
        // u^2 = 9 + 6(u-3) + (u-3)^2
        let parts = ZPoly::from_i64(&[0, 0, 1]).adic_expansion(&ZPoly::from_i64(&[-3, 1]));
        assert_eq!(parts, vec![ZPoly::from_i64(&[9]), ZPoly::from_i64(&[6]), ZPoly::from_i64(&[1])]);
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(f in arb_poly(), tail in prop::collection::vec(-9i64..9, 0..3)) {
            let mut d = tail.clone();
            d.push(1);
            let d = ZPoly::from_i64(&d);
            let (q, r) = f.divrem_monic(&d);
            prop_assert_eq!(q.mul(&d).add(&r), f);
            prop_assert!(r.degree().map_or(true, |k| k < d.degree().unwrap()) || d.degree() == Some(0));
        }

        #[test]
        fn compose_matches_eval(f in arb_poly(), g in arb_poly(), x in -20i64..20) {
            let x = BigInt::from(x);
            prop_assert_eq!(f.compose(&g).eval(&x), f.eval(&g.eval(&x)));
        }

        #[test]
        fn leibniz(f in arb_poly(), g in arb_poly()) {
            prop_assert_eq!(f.mul(&g).derivative(), f.derivative().mul(&g).add(&f.mul(&g.derivative())));
        }
    }
}
