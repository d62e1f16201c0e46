//! p-typical Witt vectors of finite length over a p-torsion-free base.
//!
//! Arithmetic runs through the ghost map: `w_m(x) = sum_{i<=m} p^i x_i^{p^{m-i}}`.
//! Recovering component `m` from ghost coordinates divides by `p^m`, so a vector
//! unghosted from precision `P` holds component `m` at precision `P - m`.

mod universal;

pub use universal::{UniversalWitt, UNIVERSAL_LENGTH_CAP};

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::base::BaseRing;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct WittVec<R> {
    comps: Vec<R>,
}

/// Ghost coordinates `w_0, ..., w_{L-1}`.
pub fn ghost<R: BaseRing>(comps: &[R]) -> Vec<R> {
    let p = comps.first().map(|c| c.prime()).unwrap_or(2);
    (0..comps.len())
        .map(|m| {
            let mut acc = comps[0].pow(p.pow(m as u32));
            for (i, x) in comps.iter().enumerate().take(m + 1).skip(1) {
                acc = acc.add(&x.pow(p.pow((m - i) as u32)).mul_p_power(i as u32));
            }
            acc
        })
        .collect()
}

/// Inverse of the ghost map. Fails with `InsufficientValuation` when the input
/// is not a ghost vector to the available precision.
pub fn unghost<R: BaseRing>(w: &[R]) -> Result<WittVec<R>> {
    let Some(first) = w.first() else {
        return Ok(WittVec { comps: Vec::new() });
    };
    let p = first.prime();
    let mut comps: Vec<R> = Vec::with_capacity(w.len());
    for (m, wm) in w.iter().enumerate() {
        let mut acc = wm.clone();
        for (i, x) in comps.iter().enumerate() {
            acc = acc.sub(&x.pow(p.pow((m - i) as u32)).mul_p_power(i as u32));
        }
        comps.push(acc.div_p_power(m as u32)?);
    }
    Ok(WittVec { comps })
}

impl<R: BaseRing> WittVec<R> {
    pub fn new(comps: Vec<R>) -> Self {
        WittVec { comps }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comps(&self) -> &[R] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<R> {
        self.comps
    }

    pub fn comp(&self, i: usize) -> &R {
        &self.comps[i]
    }

    pub fn prime(&self) -> u64 {
        self.comps[0].prime()
    }

    /// Zero vector of length `len`, component `i` at precision `P - i`.
    pub fn zero(template: &R, len: usize) -> Self {
        let z = template.zero_like();
        let prec = template.precision();
        WittVec { comps: (0..len).map(|i| z.with_precision(prec.saturating_sub(i as u32))).collect() }
    }

    pub fn one(template: &R, len: usize) -> Self {
        let mut v = Self::zero(template, len);
        v.comps[0] = template.one_like();
        v
    }

    /// Teichmuller lift `[a] = (a, 0, 0, ...)`.
    pub fn teichmuller(a: &R, len: usize) -> Self {
        let mut v = Self::zero(a, len);
        v.comps[0] = a.clone();
        v
    }

    pub fn from_int(template: &R, len: usize, n: &BigInt) -> Result<Self> {
        let c = template.from_int_like(n);
        unghost(&alloc::vec![c; len])
    }

    pub fn ghost(&self) -> Vec<R> {
        ghost(&self.comps)
    }

    fn check_len(&self, o: &Self) -> Result<()> {
        if self.len() != o.len() {
            return Err(Error::Mismatch(alloc::format!("Witt lengths {} and {}", self.len(), o.len())));
        }
        Ok(())
    }

    fn ghostwise(&self, o: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        self.check_len(o)?;
        let w: Vec<R> = self.ghost().iter().zip(o.ghost().iter()).map(|(a, b)| f(a, b)).collect();
        unghost(&w)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.ghostwise(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.ghostwise(o, |a, b| a.sub(b))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.ghostwise(o, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> Result<Self> {
        unghost(&self.ghost().iter().map(|a| a.neg()).collect::<Vec<_>>())
    }

    /// Truncation to the first `len` components.
    pub fn truncate(&self, len: usize) -> Self {
        WittVec { comps: self.comps[..len.min(self.len())].to_vec() }
    }

    /// Frobenius `F: W_{L+1} -> W_L`, `w_m(Fx) = w_{m+1}(x)`.
    pub fn frobenius(&self) -> Result<Self> {
        let w = self.ghost();
        unghost(&w[1..])
    }

    /// The Frobenius lift of a Witt vector ring; equal to `F`.
    pub fn phi(&self) -> Result<Self> {
        self.frobenius()
    }

    /// Verschiebung `V: W_L -> W_{L+1}`, `(x_0, x_1, ...) -> (0, x_0, x_1, ...)`.
    pub fn verschiebung(&self) -> Self {
        let mut comps = Vec::with_capacity(self.len() + 1);
        let x0 = &self.comps[0];
        comps.push(x0.zero_like().with_precision(x0.precision() + 1));
        comps.extend(self.comps.iter().cloned());
        WittVec { comps }
    }

    /// `delta: W_{L+1} -> W_L`, `w_m(delta x) = (w_{m+1}(x) - w_m(x)^p) / p`.
    pub fn delta(&self) -> Result<Self> {
        let p = self.prime();
        let w = self.ghost();
        let d: Result<Vec<R>> = (0..w.len() - 1).map(|m| w[m + 1].sub(&w[m].pow(p)).div_p_power(1)).collect();
        unghost(&d?)
    }

    /// Componentwise agreement modulo the smaller precision of each pair.
    pub fn eq_mod(&self, o: &Self) -> bool {
        self.len() == o.len() && self.comps.iter().zip(&o.comps).all(|(a, b)| a.eq_mod(b))
    }

    /// Precision of each component.
    pub fn precisions(&self) -> Vec<u32> {
        self.comps.iter().map(|c| c.precision()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.comps[0].is_unit()
    }
}
