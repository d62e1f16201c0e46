//! `x` in `W(Z_p)` with `iota(lambda) = V F (x)`, where `iota(u) = [p]`.
//!
//! Ghost components: `w_0(iota(lambda)) = 0` and `w_n(iota(lambda)) = p^{p^n} - p`;
//! since `w_n(V F x) = p w_n(x)`, level 0 is automatic and level `n >= 1` reads
//! `sum_{i<=n} p^i x_i^{p^{n-i}} = p^{p^n - 1} - 1`. The free choice `x_0 = -1`
//! makes the solution a unit.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{verify_ghost_identity, ConstructionReport, Identity, IdentityReport, NamedCheck, Params, ValuationClaim};
use crate::error::{Error, Result};
use crate::padic::{pow_p, PAdic};
use crate::witt::{unghost, WittVec};

/// Working precision `N + L + p^{L-1}`: `v(x_n)` grows like `p^{n-1}(p-2)`, and
/// `x_n` is known to `W - n` digits.
pub fn vf_precision_budget(p: u64, length: usize, target: u32) -> u32 {
    target + length as u32 + p.pow(length as u32 - 1) as u32
}

/// `v(x_n) = p^{n-1}(p-2) - (p^{n-1} - 1)/(p-1)` for `n >= 1`, `0` for `n = 0`.
pub fn claimed_valuation(p: u64, n: u32) -> u32 {
    if n == 0 {
        return 0;
    }
    let q = p.pow(n - 1);
    (q * (p - 2) - (q - 1) / (p - 1)) as u32
}

/// `iota(lambda) = [p] - p` in `W_L(Z_p)`, from its ghost components.
pub fn iota_lambda(p: u64, length: usize, w: u32) -> Result<WittVec<PAdic>> {
    let ghosts: Vec<PAdic> = (0..length)
        .map(|n| {
            let v = if n == 0 { BigInt::from(0) } else { BigInt::from(pow_p(p, p.pow(n as u32) as u32)) - p };
            PAdic::from_int(p, w, &v)
        })
        .collect();
    unghost(&ghosts)
}

/// Solve level by level for `x_1, ..., x_{L-1}` with `x_0 = -1`.
pub fn solve_v_f(p: u64, length: usize, target: u32) -> Result<ConstructionReport<PAdic>> {
    if p < 3 {
        return Err(Error::Invalid("x_lambda is only claimed for odd p".into()));
    }
    if length < 2 {
        return Err(Error::Invalid("need L >= 2".into()));
    }
    let w = vf_precision_budget(p, length, target);
    let mut x: Vec<PAdic> = vec![PAdic::from_i64(p, w, -1)];
    for n in 1..length {
        let mut acc = PAdic::from_int(p, w, &(BigInt::from(pow_p(p, p.pow(n as u32) as u32 - 1)) - 1));
        for (i, xi) in x.iter().enumerate() {
            acc = acc.sub(&xi.pow(p.pow((n - i) as u32)).mul_p_power(i as u32));
        }
        x.push(acc.div_p_power(n as u32).map_err(|e| match e {
            Error::InsufficientValuation { needed, found } => Error::InsufficientValuationAt { m: n, i: 0, needed, found },
            other => other,
        })?);
    }
    // VF needs one more component than x_lambda: F drops a level, V restores it.
    let xv = WittVec::new(x.clone());
    let iota = iota_lambda(p, length, w)?;
    let vf = xv.frobenius()?.verschiebung();
    let one = WittVec::one(&PAdic::one(p, w), length);
    let levels = verify_ghost_identity(Identity::Product { x: &iota, y: &one, z: &vf })?;

    let valuations = x
        .iter()
        .enumerate()
        .map(|(n, xn)| ValuationClaim { symbol: format!("x_{n}"), claimed: claimed_valuation(p, n as u32), computed: xn.valuation() })
        .collect();
    let x1 = PAdic::from_int(p, w, &BigInt::from(pow_p(p, p as u32 - 2)));
    let checks = vec![
        NamedCheck::new("x_0 = -1", x[0] == PAdic::from_i64(p, w, -1), ""),
        NamedCheck::new(format!("x_1 = {p}^{}", p - 2), x[1].eq_mod(&x1), format!("{:?}", x[1])),
        NamedCheck::new("x_lambda is a unit", xv.is_unit(), ""),
    ];

    Ok(ConstructionReport {
        construction: "solve-vf".to_string(),
        params: Params {
            p,
            e: vec![BigInt::from(-(p as i64)), BigInt::from(1)],
            n: None,
            length,
            target_precision: target,
            working_precision: w,
            digits: None,
        },
        components: vec![("x_lambda".to_string(), xv), ("iota_lambda".to_string(), iota), ("VF(x_lambda)".to_string(), vf)],
        identities: vec![IdentityReport { name: "iota(lambda) = 1 * V F(x_lambda)".to_string(), levels }],
        valuations,
        checks,
    })
}
