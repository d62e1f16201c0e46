//! Coefficient rings: `Z_p[u]/(E^m)`, the `E/p`-adic digit ring, and dual numbers.

mod digit;
mod dual;
mod eisenstein;
mod sring;

pub use digit::{DigitElem, DigitRing};
pub use dual::Dual;
pub use eisenstein::Eisenstein;
pub use sring::{SRing, SRingElem};

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::padic::reduce_signed;
use crate::zpoly::ZPoly;

/// Divide `f` (coefficients mod `m`) by the monic `d`, returning `(q, r)` with
/// `deg r < deg d`, all coefficients reduced mod `m`.
pub(crate) fn divrem_monic_mod(f: &[BigUint], d: &ZPoly, m: &BigUint) -> (Vec<BigUint>, Vec<BigUint>) {
    let dd = d.degree().expect("nonzero divisor");
    let neg: Vec<BigUint> = d.coeffs()[..dd].iter().map(|c| reduce_signed(&-c, m)).collect();
    let mut r: Vec<BigUint> = f.iter().map(|c| c % m).collect();
    if r.len() < dd {
        r.resize(dd, BigUint::zero());
    }
    let qlen = r.len().saturating_sub(dd);
    let mut q = vec![BigUint::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = core::mem::take(&mut r[k + dd]) % m;
        if c.is_zero() {
            continue;
        }
        for (j, nj) in neg.iter().enumerate() {
            if !nj.is_zero() {
                r[k + j] = (&r[k + j] + &c * nj) % m;
            }
        }
        q[k] = c;
    }
    r.truncate(dd);
    (q, r)
}

pub(crate) fn zpoly_residues(f: &ZPoly, len: usize, m: &BigUint) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = f.coeffs().iter().map(|c| reduce_signed(c, m)).collect();
    assert!(out.len() <= len, "polynomial longer than the target basis");
    out.resize(len, BigUint::zero());
    out
}

pub(crate) fn residues_to_zpoly(c: &[BigUint]) -> ZPoly {
    ZPoly::new(c.iter().map(|x| BigInt::from(x.clone())).collect())
}

pub(crate) fn min_valuation(p: u64, prec: u32, coeffs: &[BigUint]) -> u32 {
    use num_integer::Integer;
    let pb = BigUint::from(p);
    let mut best = prec;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let mut v = 0;
        let mut y = c.clone();
        while v < best {
            let (q, r) = y.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            y = q;
            v += 1;
        }
        best = best.min(v);
        if best == 0 {
            break;
        }
    }
    best
}

pub(crate) fn random_residues(m: &BigUint, len: usize, rng: &mut dyn rand::RngCore) -> Vec<BigUint> {
    let bytes = (m.bits() as usize).div_ceil(8) + 8;
    let mut buf = vec![0u8; bytes];
    (0..len)
        .map(|_| {
            rng.fill_bytes(&mut buf);
            BigUint::from_bytes_le(&buf) % m
        })
        .collect()
}
