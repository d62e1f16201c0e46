use alloc::format;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::padic::{int_valuation, pow_p};
use crate::zpoly::ZPoly;

/// A monic Eisenstein polynomial `E(u)` over `Z_p` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Eisenstein {
    p: u64,
    poly: ZPoly,
}

impl Eisenstein {
    pub fn new(p: u64, poly: ZPoly) -> Result<Self> {
        let Some(e) = poly.degree() else {
            return Err(Error::NotEisenstein("zero polynomial".into()));
        };
        if e == 0 || !poly.is_monic() {
            return Err(Error::NotEisenstein(format!("{poly:?} is not monic of positive degree")));
        }
        let pb = BigInt::from(p);
        for (i, c) in poly.coeffs()[..e].iter().enumerate() {
            if !(c % &pb).is_zero() {
                return Err(Error::NotEisenstein(format!("coefficient of u^{i} is not divisible by {p}")));
            }
        }
        if int_valuation(p, &poly.coeff(0)) != Some(1) {
            return Err(Error::NotEisenstein(format!("constant term of {poly:?} is not exactly divisible by {p}")));
        }
        Ok(Eisenstein { p, poly })
    }

    /// `E = u - p`, the unramified case.
    pub fn unramified(p: u64) -> Self {
        Eisenstein { p, poly: ZPoly::from_i64(&[-(p as i64), 1]) }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Result<Self> {
        Self::new(p, ZPoly::from_i64(coeffs))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("nonzero")
    }

    pub fn poly(&self) -> &ZPoly {
        &self.poly
    }

    pub fn derivative(&self) -> ZPoly {
        self.poly.derivative()
    }

    /// `phi^n(E) = E(u^{p^n})`.
    pub fn phi_n(&self, n: u32) -> ZPoly {
        self.poly.substitute_power(self.p.pow(n) as usize)
    }

    /// `h_n = (phi^n(E) - E^{p^n}) / p`, exactly over `Z`.
    pub fn h_n(&self, n: u32) -> Result<ZPoly> {
        let diff = self.phi_n(n).sub(&self.poly.pow(self.p.pow(n)));
        diff.div_exact_int(&BigInt::from(self.p))
            .ok_or(Error::InsufficientValuation { needed: 1, found: 0 })
    }

    /// `t_n = h_n' / p^n`, exactly over `Z`.
    pub fn t_n(&self, n: u32) -> Result<ZPoly> {
        let d = self.h_n(n)?.derivative();
        d.div_exact_int(&BigInt::from(pow_p(self.p, n))).ok_or_else(|| Error::InsufficientValuation {
            needed: n,
            found: d.content_valuation(self.p).unwrap_or(0),
        })
    }
}
