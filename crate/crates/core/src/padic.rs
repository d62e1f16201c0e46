//! Capped-absolute p-adic integers.
//!
//! An element of `Z_p` known modulo `p^N` is stored as its canonical residue in
//! `[0, p^N)`. Binary operations on operands of different precision truncate to
//! the smaller one. Division by `p^k` debits `k` digits of precision.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::RngCore;

use crate::error::{Error, Result};

/// `p^k` as a big unsigned integer.
pub fn pow_p(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn int_valuation(p: u64, x: &BigInt) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        y = q;
        v += 1;
    }
}

/// Reduce a signed integer into `[0, m)`.
pub fn reduce_signed(x: &BigInt, m: &BigUint) -> BigUint {
    let mi = BigInt::from(m.clone());
    let r = x.mod_floor(&mi);
    r.to_biguint().expect("mod_floor is nonnegative")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PAdic {
    p: u64,
    prec: u32,
    residue: BigUint,
}

impl PAdic {
    pub fn new(p: u64, prec: u32, residue: BigUint) -> Self {
        let residue = residue % pow_p(p, prec);
        PAdic { p, prec, residue }
    }

    pub fn from_int(p: u64, prec: u32, x: &BigInt) -> Self {
        PAdic { p, prec, residue: reduce_signed(x, &pow_p(p, prec)) }
    }

    pub fn from_i64(p: u64, prec: u32, x: i64) -> Self {
        Self::from_int(p, prec, &BigInt::from(x))
    }

    pub fn zero(p: u64, prec: u32) -> Self {
        PAdic { p, prec, residue: BigUint::zero() }
    }

    pub fn one(p: u64, prec: u32) -> Self {
        Self::new(p, prec, BigUint::one())
    }

    pub fn random<R: RngCore + ?Sized>(p: u64, prec: u32, rng: &mut R) -> Self {
        let m = pow_p(p, prec);
        let bytes = (m.bits() as usize).div_ceil(8) + 8;
        let mut buf = alloc::vec![0u8; bytes];
        rng.fill_bytes(&mut buf);
        PAdic { p, prec, residue: BigUint::from_bytes_le(&buf) % m }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        pow_p(self.p, self.prec)
    }

    /// The representative in `(-p^N/2, p^N/2]`.
    pub fn to_signed(&self) -> BigInt {
        let m = self.modulus();
        let r = BigInt::from(self.residue.clone());
        if &self.residue * 2u32 > m {
            r - BigInt::from(m)
        } else {
            r
        }
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// Valuation of the residue; equals the precision for zero.
    pub fn valuation(&self) -> u32 {
        if self.residue.is_zero() {
            return self.prec;
        }
        let pb = BigUint::from(self.p);
        let mut v = 0;
        let mut y = self.residue.clone();
        loop {
            let (q, r) = y.div_rem(&pb);
            if !r.is_zero() {
                return v;
            }
            y = q;
            v += 1;
        }
    }

    pub fn is_unit(&self) -> bool {
        self.prec > 0 && !(&self.residue % self.p).is_zero()
    }

    /// Truncate to a lower precision, or lift the canonical residue to a higher one.
    pub fn with_precision(&self, prec: u32) -> Self {
        if prec >= self.prec {
            PAdic { p: self.p, prec, residue: self.residue.clone() }
        } else {
            Self::new(self.p, prec, self.residue.clone())
        }
    }

    fn check_prime(&self, other: &PAdic) {
        assert_eq!(self.p, other.p, "mixing p-adic numbers for different primes");
    }

    pub fn add(&self, other: &PAdic) -> PAdic {
        self.check_prime(other);
        let prec = self.prec.min(other.prec);
        Self::new(self.p, prec, &self.residue + &other.residue)
    }

    pub fn sub(&self, other: &PAdic) -> PAdic {
        self.check_prime(other);
        let prec = self.prec.min(other.prec);
        let m = pow_p(self.p, prec);
        let a = &self.residue % &m;
        let b = &other.residue % &m;
        let r = if a >= b { a - b } else { a + &m - b };
        PAdic { p: self.p, prec, residue: r }
    }

    pub fn neg(&self) -> PAdic {
        if self.residue.is_zero() {
            return self.clone();
        }
        PAdic { p: self.p, prec: self.prec, residue: self.modulus() - &self.residue }
    }

    pub fn mul(&self, other: &PAdic) -> PAdic {
        self.check_prime(other);
        let prec = self.prec.min(other.prec);
        Self::new(self.p, prec, &self.residue * &other.residue)
    }

    /// Multiply by an exactly known integer. Precision rises by the valuation of `c`.
    pub fn mul_exact(&self, c: &BigInt) -> PAdic {
        match int_valuation(self.p, c) {
            None => PAdic::zero(self.p, self.prec),
            Some(v) => {
                let unit = c / BigInt::from(pow_p(self.p, v));
                let prec = self.prec + v;
                let m = pow_p(self.p, prec);
                let r = reduce_signed(&(BigInt::from(self.residue.clone()) * unit * BigInt::from(pow_p(self.p, v))), &m);
                PAdic { p: self.p, prec, residue: r }
            }
        }
    }

    pub fn pow(&self, e: u64) -> PAdic {
        PAdic { p: self.p, prec: self.prec, residue: self.residue.modpow(&BigUint::from(e), &self.modulus()) }
    }

    /// `x / p^k`. Fails when `v(x) < k` or when fewer than one digit would remain.
    pub fn div_p_power(&self, k: u32) -> Result<PAdic> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.prec <= k {
            return Err(Error::PrecisionExhausted(format!(
                "dividing by p^{k} at precision {}",
                self.prec
            )));
        }
        let v = self.valuation();
        if v < k {
            return Err(Error::InsufficientValuation { needed: k, found: v });
        }
        Ok(PAdic { p: self.p, prec: self.prec - k, residue: &self.residue / pow_p(self.p, k) })
    }

    /// `p^k * x`, with precision raised by `k`; exact.
    pub fn mul_p_power(&self, k: u32) -> PAdic {
        PAdic { p: self.p, prec: self.prec + k, residue: &self.residue * pow_p(self.p, k) }
    }

    /// Inverse by Newton lifting of the inverse modulo `p`.
    pub fn inverse(&self) -> Result<PAdic> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(format!("{self:?}")));
        }
        let p = BigUint::from(self.p);
        let a0 = &self.residue % &p;
        let mut x = a0.modpow(&(&p - 2u32), &p);
        let m = self.modulus();
        let two = BigUint::from(2u32);
        let mut known = 1u32;
        while known < self.prec {
            known = (known * 2).min(self.prec);
            let mk = pow_p(self.p, known);
            let ax = (&self.residue * &x) % &mk;
            let corr = (&two + &mk - ax) % &mk;
            x = (x * corr) % &mk;
        }
        Ok(PAdic { p: self.p, prec: self.prec, residue: x % m })
    }

    /// Agreement modulo the smaller of the two precisions.
    pub fn eq_mod(&self, other: &PAdic) -> bool {
        self.sub(other).is_zero()
    }

    /// Base-p digits, least significant first, `N` of them.
    pub fn digits(&self) -> Vec<u64> {
        let pb = BigUint::from(self.p);
        let mut y = self.residue.clone();
        let mut out = Vec::with_capacity(self.prec as usize);
        for _ in 0..self.prec {
            let (q, r) = y.div_rem(&pb);
            out.push(r.iter_u64_digits().next().unwrap_or(0));
            y = q;
        }
        out
    }
}

impl fmt::Debug for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.prec)
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
