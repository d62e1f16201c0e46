//! Witt-vector solutions of the prismatic delta-identities, with certificates.
//!
//! Each construction returns its Witt components together with the ghost-level
//! checks that justify them and the valuations it claims.

mod general;
mod unramified;
mod vf;

pub use general::{
    construct_b_general, construct_b_over, construct_c, construct_c_over, digit_count, general_precision_budget,
    general_targets, GeneralTargets,
};
pub use unramified::{construct_b_unramified, unramified_coefficients, unramified_precision_budget, unramified_targets, UnramifiedTargets};
pub use vf::{iota_lambda, solve_v_f, vf_precision_budget};

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::base::BaseRing;
use crate::error::{Error, Result};
use crate::padic::pow_p;
use crate::witt::WittVec;

/// One ghost level of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostCheck {
    pub level: usize,
    pub pass: bool,
    /// Valuation of `lhs - rhs`; equals the precision when they agree.
    pub residual_valuation: u32,
    pub precision: u32,
}

/// The shape of a ghost-level identity between Witt vectors.
pub enum Identity<'a, R> {
    /// `w(x) = w(y) * w(z)`.
    Product { x: &'a WittVec<R>, y: &'a WittVec<R>, z: &'a WittVec<R> },
    /// `w(x) - w(y) = w(z) * w(t)`.
    DifferenceProduct { x: &'a WittVec<R>, y: &'a WittVec<R>, z: &'a WittVec<R>, t: &'a WittVec<R> },
}

/// Check an identity at every ghost level, to the available precision.
pub fn verify_ghost_identity<R: BaseRing>(id: Identity<'_, R>) -> Result<Vec<GhostCheck>> {
    let (lhs, rhs) = match id {
        Identity::Product { x, y, z } => {
            check_lengths(&[x, y, z])?;
            let (wy, wz) = (y.ghost(), z.ghost());
            (x.ghost(), wy.iter().zip(&wz).map(|(a, b)| a.mul(b)).collect::<Vec<_>>())
        }
        Identity::DifferenceProduct { x, y, z, t } => {
            check_lengths(&[x, y, z, t])?;
            let (wx, wy, wz, wt) = (x.ghost(), y.ghost(), z.ghost(), t.ghost());
            let lhs = wx.iter().zip(&wy).map(|(a, b)| a.sub(b)).collect();
            (lhs, wz.iter().zip(&wt).map(|(a, b)| a.mul(b)).collect())
        }
    };
    Ok(lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .map(|(level, (a, b))| {
            let d = a.sub(b);
            let residual_valuation = d.valuation();
            let precision = d.precision();
            GhostCheck { level, pass: residual_valuation >= precision, residual_valuation, precision }
        })
        .collect())
}

fn check_lengths<R: BaseRing>(vs: &[&WittVec<R>]) -> Result<()> {
    let l = vs[0].len();
    if vs.iter().any(|v| v.len() != l) {
        return Err(Error::Mismatch("Witt vectors of unequal length in an identity".into()));
    }
    Ok(())
}

/// First failing ghost level, if any.
pub fn first_failure(checks: &[GhostCheck]) -> Option<usize> {
    checks.iter().find(|c| !c.pass).map(|c| c.level)
}

/// Add `p^{target - 1}` to component `m`: a change invisible at precision
/// `target - 1` digits and visible at ghost level `m` whenever the working
/// precision exceeds `target + m + v`, `v` the valuation of the cofactor.
pub fn inject_fault<R: BaseRing>(x: &WittVec<R>, m: usize, target: u32) -> WittVec<R> {
    let mut comps = x.comps().to_vec();
    let c = &comps[m];
    let bump = c.from_int_like(&BigInt::from(pow_p(c.prime(), target.saturating_sub(1))));
    comps[m] = c.add(&bump);
    WittVec::new(comps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationClaim {
    pub symbol: String,
    pub claimed: u32,
    pub computed: u32,
}

impl ValuationClaim {
    pub fn pass(&self) -> bool {
        self.claimed == self.computed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl NamedCheck {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        NamedCheck { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub levels: Vec<GhostCheck>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.levels.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub p: u64,
    /// Coefficients of `E`, constant term first.
    pub e: Vec<BigInt>,
    /// Truncation order (`lambda^n` or `E^n`), when the construction has one.
    pub n: Option<usize>,
    pub length: usize,
    pub target_precision: u32,
    pub working_precision: u32,
    /// Number of `E/p` digits, for constructions over the digit ring.
    pub digits: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionReport<R> {
    pub construction: String,
    pub params: Params,
    pub components: Vec<(String, WittVec<R>)>,
    pub identities: Vec<IdentityReport>,
    pub valuations: Vec<ValuationClaim>,
    pub checks: Vec<NamedCheck>,
}

impl<R> ConstructionReport<R> {
    pub fn pass(&self) -> bool {
        self.identities.iter().all(|r| r.pass())
            && self.valuations.iter().all(|v| v.pass())
            && self.checks.iter().all(|c| c.pass)
    }

    pub fn component(&self, name: &str) -> Option<&WittVec<R>> {
        self.components.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}
