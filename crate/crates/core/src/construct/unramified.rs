//! The unramified case `E = u - p = lambda` over `R = Z_p[lambda]/(lambda^n)`.
//!
//! Writing `b_m = eps * sum_i d_{m,i} lambda^i` for `m >= 1` and
//! `A_j = C(p^m, j) p^{p^m - j}`, the ghost identity at level `m` is equivalent to
//! `d_{m,0} = -1` and
//!
//! ```text
//! p^m (p^{p^m} - p) d_{m,i} = i A_i - p^m sum_{j=1}^{i-1} A_j d_{m,i-j}.
//! ```

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::{verify_ghost_identity, ConstructionReport, Identity, IdentityReport, NamedCheck, Params, ValuationClaim};
use crate::base::BaseRing;
use crate::error::{Error, Result};
use crate::padic::{pow_p, PAdic};
use crate::series::{Dual, Eisenstein, SRing, SRingElem};
use crate::witt::{unghost, WittVec};
use crate::zpoly::ZPoly;

/// Working precision `N + L + 1 + p^{L-1}`: enough to certify every claimed
/// valuation (`< p^{L-1}`) after the `p^{m+1}` divisions, and to keep a
/// `p^{N-1}` perturbation visible at every ghost level.
pub fn unramified_precision_budget(p: u64, length: usize, target: u32) -> u32 {
    target + length as u32 + 1 + p.pow(length as u32 - 1) as u32
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// The coefficients `d_{m,i}` for `1 <= m < L`, `0 <= i < n`, at working precision `w`.
pub fn unramified_coefficients(p: u64, n: usize, length: usize, w: u32) -> Result<Vec<Vec<PAdic>>> {
    let mut table = vec![Vec::new()];
    for m in 1..length {
        let pm = p.pow(m as u32);
        let a: Vec<BigInt> = (0..n as u64)
            .map(|j| if j <= pm { binomial(pm, j) * BigInt::from(pow_p(p, (pm - j) as u32)) } else { BigInt::from(0) })
            .collect();
        // p^{p^m} - p = p * unit
        let unit = BigInt::from(pow_p(p, pm as u32 - 1)) - 1;
        let unit_inv = PAdic::from_int(p, w, &unit).inverse()?;
        let pm_big = BigInt::from(pow_p(p, m as u32));
        let mut d: Vec<PAdic> = vec![PAdic::from_i64(p, w, -1)];
        for i in 1..n {
            let mut rhs = PAdic::from_int(p, w, &(BigInt::from(i) * &a[i]));
            for j in 1..i {
                rhs = rhs.sub(&d[i - j].mul_exact(&(&pm_big * &a[j])));
            }
            let q = rhs.div_p_power(m as u32 + 1).map_err(|e| match e {
                Error::InsufficientValuation { needed, found } => Error::InsufficientValuationAt { m, i, needed, found },
                other => other,
            })?;
            d.push(q.mul(&unit_inv));
        }
        table.push(d);
    }
    Ok(table)
}

/// Witt vectors `f(lambda)` and `g(lambda)` with `g: lambda -> (1 + eps) lambda`, from
/// their ghost components `(lambda + p)^{p^m} - p` and its image under `g`.
pub struct UnramifiedTargets {
    pub lambda: WittVec<Dual<SRingElem>>,
    pub lambda_tilde: WittVec<Dual<SRingElem>>,
}

pub fn unramified_targets(ring: &SRing, length: usize, w: u32) -> Result<UnramifiedTargets> {
    let p = ring.prime();
    let lam = ZPoly::from_i64(&[-(p as i64), 1]);
    let mut wl = Vec::with_capacity(length);
    let mut wt = Vec::with_capacity(length);
    for m in 0..length {
        let pm = p.pow(m as u32) as usize;
        let a = ZPoly::monomial(BigInt::one(), pm).sub(&ZPoly::constant(BigInt::from(p)));
        let re = ring.from_poly(&a, w);
        // lambda * a'(lambda), written in u.
        let eps = ring.from_poly(&lam.mul(&a.derivative()), w);
        wl.push(Dual::real(re.clone()));
        wt.push(Dual::new(re, eps));
    }
    Ok(UnramifiedTargets { lambda: unghost(&wl)?, lambda_tilde: unghost(&wt)? })
}

/// Solve `g(lambda) = b * f(lambda)` in `W_L(R[eps])`, `R = Z_p[lambda]/(lambda^n)`.
pub fn construct_b_unramified(p: u64, n: usize, length: usize, target: u32) -> Result<ConstructionReport<Dual<SRingElem>>> {
    if n == 0 || length == 0 {
        return Err(Error::Invalid("n and L must be positive".into()));
    }
    let w = unramified_precision_budget(p, length, target);
    let e = Eisenstein::unramified(p);
    let ring = SRing::new(e.clone(), n);
    let d = unramified_coefficients(p, n, length, w)?;

    let lam = e.poly().clone();
    let mut comps = vec![Dual::new(ring.one(w), ring.one(w))];
    for row in d.iter().skip(1) {
        let prec = row.iter().map(|c| c.precision()).min().unwrap_or(w);
        let mut acc = ring.zero(prec);
        for (i, c) in row.iter().enumerate() {
            let coeff = BigInt::from(c.residue().clone());
            acc = acc.add(&ring.from_poly(&lam.pow(i as u64).scale(&coeff), prec));
        }
        comps.push(Dual::pure_eps(acc));
    }
    let b = WittVec::new(comps);

    let targets = unramified_targets(&ring, length, w)?;
    let levels = verify_ghost_identity(Identity::Product { x: &targets.lambda_tilde, y: &b, z: &targets.lambda })?;

    let mut valuations = Vec::new();
    if n <= p as usize {
        for (m, row) in d.iter().enumerate().skip(1) {
            for (i, c) in row.iter().enumerate().skip(1) {
                valuations.push(ValuationClaim {
                    symbol: format!("d_{{{m},{i}}}"),
                    claimed: (p.pow(m as u32) as u32) - i as u32 - 1,
                    computed: c.valuation(),
                });
            }
        }
    }
    let b0_ok = b.comp(0) == &Dual::new(ring.one(w), ring.one(w));
    let c0_ok = d.iter().skip(1).all(|row| row[0] == PAdic::from_i64(p, w, -1));
    let checks = vec![
        NamedCheck::new("b_0 = 1 + eps", b0_ok, ""),
        NamedCheck::new("c_{m,0} = -eps", c0_ok, ""),
    ];

    Ok(ConstructionReport {
        construction: "construct-b".to_string(),
        params: Params {
            p,
            e: e.poly().coeffs().to_vec(),
            n: Some(n),
            length,
            target_precision: target,
            working_precision: w,
            digits: None,
        },
        components: vec![
            ("b".to_string(), b),
            ("lambda".to_string(), targets.lambda),
            ("lambda_tilde".to_string(), targets.lambda_tilde),
        ],
        identities: vec![IdentityReport { name: "g(lambda) = b * f(lambda)".to_string(), levels }],
        valuations,
        checks,
    })
}
