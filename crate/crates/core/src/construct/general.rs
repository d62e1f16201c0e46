//! General Eisenstein `E`: closed forms for `b` and `c` over any ring receiving
//! `Z[u]` in which `s_n = h_n + E^{p^n}/p` makes sense.
//!
//! ```text
//! b_0 = 1 + eps E',  b_n = eps s_n^{-1} (t_n E - h_n E'),
//! c_0 = eps,         c_n = eps s_n^{-1} u^{p^n - 1} (E/p),
//! ```
//!
//! checked against `w_n(g(lambda)) = w_n(b) w_n(f(lambda))` and
//! `w_n(g(u)) - w_n(f(u)) = w_n(c) w_n(f(lambda))`, where `f` is the Frobenius-compatible
//! lift of the inclusion and `g` lifts `u -> u + eps E`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::{verify_ghost_identity, ConstructionReport, Identity, IdentityReport, NamedCheck, Params};
use crate::base::{BaseRing, PolyRing};
use crate::error::Result;
use crate::series::{DigitElem, DigitRing, Dual, Eisenstein};
use crate::witt::{unghost, WittVec};
use crate::zpoly::ZPoly;

/// Working precision `N + L`. The closed forms divide by nothing, so the only
/// demand is that a `p^{N-1}` perturbation at level `m < L` stays visible.
pub fn general_precision_budget(length: usize, target: u32) -> u32 {
    target + length as u32
}

/// Witt vectors `f(lambda)`, `g(lambda)`, `f(u)`, `g(u)` over `R[eps]`.
pub struct GeneralTargets<R> {
    pub f_lambda: WittVec<Dual<R>>,
    pub g_lambda: WittVec<Dual<R>>,
    pub f_u: WittVec<Dual<R>>,
    pub g_u: WittVec<Dual<R>>,
}

pub fn general_targets<R: PolyRing>(one: &R, e: &Eisenstein, length: usize) -> Result<GeneralTargets<R>> {
    let p = e.prime();
    let (mut fl, mut gl, mut fu, mut gu) = (vec![], vec![], vec![], vec![]);
    for n in 0..length {
        let pn = p.pow(n as u32);
        let phi_e = e.phi_n(n as u32);
        let re = one.embed(&phi_e);
        fl.push(Dual::real(re.clone()));
        // phi^n(E)(u + eps E) = phi^n(E) + eps (phi^n E)' E
        gl.push(Dual::new(re, one.embed(&phi_e.derivative().mul(e.poly()))));
        let upn = one.embed(&ZPoly::monomial(BigInt::one(), pn as usize));
        fu.push(Dual::real(upn.clone()));
        // (u + eps E)^{p^n} = u^{p^n} + eps p^n u^{p^n - 1} E
        let d = ZPoly::monomial(BigInt::from(pn), pn as usize - 1).mul(e.poly());
        gu.push(Dual::new(upn, one.embed(&d)));
    }
    Ok(GeneralTargets { f_lambda: unghost(&fl)?, g_lambda: unghost(&gl)?, f_u: unghost(&fu)?, g_u: unghost(&gu)? })
}

/// `s_n = h_n + E^{p^n}/p`.
fn s_n<R: PolyRing>(one: &R, e: &Eisenstein, n: u32) -> Result<R> {
    let h = one.embed(&e.h_n(n)?);
    let tail = one.embed_over_p(&e.poly().pow(e.prime().pow(n)))?;
    Ok(h.add(&tail))
}

fn params<R: BaseRing>(one: &R, e: &Eisenstein, length: usize, target: u32) -> Params {
    Params {
        p: e.prime(),
        e: e.poly().coeffs().to_vec(),
        n: None,
        length,
        target_precision: target,
        working_precision: one.precision(),
        digits: None,
    }
}

/// Digits needed so that `E^{p^{L-1}}/p` is not truncated away.
pub fn digit_count(p: u64, length: usize) -> usize {
    p.pow(length.saturating_sub(1) as u32) as usize + 1
}

fn digit_one(e: &Eisenstein, length: usize, target: u32) -> DigitElem {
    let ring = DigitRing::new(e.clone(), digit_count(e.prime(), length));
    ring.one(general_precision_budget(length, target))
}

/// `b` over `S[[E/p]]/(E/p)^{p^{L-1}+1}` at working precision `N + L`.
pub fn construct_b_general(e: &Eisenstein, length: usize, target: u32) -> Result<ConstructionReport<Dual<DigitElem>>> {
    let one = digit_one(e, length, target);
    let mut rep = construct_b_over(&one, e, length, target)?;
    rep.params.digits = Some(one.ring().digits());
    Ok(rep)
}

/// `c` over `S[[E/p]]/(E/p)^{p^{L-1}+1}` at working precision `N + L`.
pub fn construct_c(e: &Eisenstein, length: usize, target: u32) -> Result<ConstructionReport<Dual<DigitElem>>> {
    let one = digit_one(e, length, target);
    let mut rep = construct_c_over(&one, e, length, target)?;
    rep.params.digits = Some(one.ring().digits());
    Ok(rep)
}

/// Unit and divisibility checks on `h_n` for `1 <= n < L`.
fn h_checks(e: &Eisenstein, length: usize) -> Vec<NamedCheck> {
    let p = e.prime();
    let mut out = Vec::new();
    for n in 1..length as u32 {
        match e.h_n(n) {
            Ok(h) => {
                let unit = !(h.coeff(0) % BigInt::from(p) == BigInt::from(0));
                out.push(NamedCheck::new(format!("h_{n} is a unit"), unit, format!("h_{n}(0) = {}", h.coeff(0))));
                let dv = h.derivative().content_valuation(p).unwrap_or(u32::MAX);
                out.push(NamedCheck::new(
                    format!("p^{n} divides h_{n}'"),
                    dv >= n,
                    format!("v(h_{n}') = {}", if dv == u32::MAX { "inf".to_string() } else { dv.to_string() }),
                ));
            }
            Err(err) => out.push(NamedCheck::new(format!("h_{n} is integral"), false, format!("{err}"))),
        }
    }
    out
}

/// `b` with `g(lambda) = b f(lambda)` in `W_L(R[eps])`; `one` fixes the ring and
/// the working precision.
pub fn construct_b_over<R: PolyRing>(
    one: &R,
    e: &Eisenstein,
    length: usize,
    target: u32,
) -> Result<ConstructionReport<Dual<R>>> {
    let ep = e.derivative();
    let mut comps = vec![Dual::new(one.clone(), one.embed(&ep))];
    for n in 1..length as u32 {
        let s_inv = s_n(one, e, n)?.inverse()?;
        let inner = e.t_n(n)?.mul(e.poly()).sub(&e.h_n(n)?.mul(&ep));
        comps.push(Dual::pure_eps(s_inv.mul(&one.embed(&inner))));
    }
    let b = WittVec::new(comps);
    let t = general_targets(one, e, length)?;
    let levels = verify_ghost_identity(Identity::Product { x: &t.g_lambda, y: &b, z: &t.f_lambda })?;

    let mut checks = vec![NamedCheck::new(
        "b_0 = 1 + eps E'",
        b.comp(0) == &Dual::new(one.one_like(), one.embed(&ep)),
        format!("E' = {ep:?}"),
    )];
    checks.extend(h_checks(e, length));

    Ok(ConstructionReport {
        construction: "construct-b-general".to_string(),
        params: params(one, e, length, target),
        components: vec![
            ("b".to_string(), b),
            ("f_lambda".to_string(), t.f_lambda),
            ("g_lambda".to_string(), t.g_lambda),
        ],
        identities: vec![IdentityReport { name: "g(lambda) = b * f(lambda)".to_string(), levels }],
        valuations: vec![],
        checks,
    })
}

/// `c` with `g(u) - f(u) = c f(lambda)` in `W_L(R[eps])`.
pub fn construct_c_over<R: PolyRing>(one: &R, e: &Eisenstein, length: usize, target: u32) -> Result<ConstructionReport<Dual<R>>> {
    let p = e.prime();
    let mut comps = vec![Dual::pure_eps(one.clone())];
    for n in 1..length as u32 {
        let s_inv = s_n(one, e, n)?.inverse()?;
        let pn = p.pow(n) as usize;
        let num = one.embed_over_p(&ZPoly::monomial(BigInt::one(), pn - 1).mul(e.poly()))?;
        comps.push(Dual::pure_eps(s_inv.mul(&num)));
    }
    let c = WittVec::new(comps);
    let t = general_targets(one, e, length)?;
    let levels = verify_ghost_identity(Identity::DifferenceProduct { x: &t.g_u, y: &t.f_u, z: &c, t: &t.f_lambda })?;

    let mut checks = vec![NamedCheck::new("c_0 = eps", c.comp(0) == &Dual::pure_eps(one.one_like()), "")];
    checks.extend(h_checks(e, length));

    Ok(ConstructionReport {
        construction: "construct-c".to_string(),
        params: params(one, e, length, target),
        components: vec![
            ("c".to_string(), c),
            ("f_u".to_string(), t.f_u),
            ("g_u".to_string(), t.g_u),
            ("f_lambda".to_string(), t.f_lambda),
        ],
        identities: vec![IdentityReport { name: "g(u) - f(u) = c * f(lambda)".to_string(), levels }],
        valuations: vec![],
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_b_unramified, first_failure, inject_fault, verify_ghost_identity};
    use crate::series::SRing;

    fn eis(p: u64, c: &[i64]) -> Eisenstein {
        Eisenstein::from_i64(p, c).unwrap()
    }

    #[test]
    fn b1_for_u_minus_3() {
        // b_1 = eps (h_1 + E^3/3)^{-1} (t_1 E - h_1), h_1 = 3u^2 - 9u + 8, t_1 = 2u - 3.
        let e = eis(3, &[-3, 1]);
        let rep = construct_b_general(&e, 2, 10).unwrap();
        assert!(rep.pass());
        let b1 = rep.component("b").unwrap().comp(1).clone();
        let one = b1.re.one_like();
        let h1 = ZPoly::from_i64(&[8, -9, 3]);
        let t1 = ZPoly::from_i64(&[-3, 2]);
        let s1 = one.embed(&h1).add(&one.embed_over_p(&e.poly().pow(3)).unwrap());
        let rhs = one.embed(&t1.mul(e.poly()).sub(&h1));
        assert!(b1.re.is_zero());
        assert_eq!(b1.eps.mul(&s1), rhs);
    }

    #[test]
    fn ramified_constructions_pass() {
        for c in [&[-3i64, 0, 1][..], &[-3, 3, 1], &[6, 0, 3, 1]] {
            let e = eis(3, c);
            assert!(construct_b_general(&e, 3, 8).unwrap().pass(), "b for {c:?}");
            assert!(construct_c(&e, 3, 8).unwrap().pass(), "c for {c:?}");
        }
        let e = eis(5, &[10, -5, 0, 1]);
        assert!(construct_b_general(&e, 2, 8).unwrap().pass());
        assert!(construct_c(&e, 2, 8).unwrap().pass());
    }

    #[test]
    fn unramified_cross_check() {
        // Over the digit ring, digit i of b_m equals p^i d_{m,i}.
        for p in [3u64, 5] {
            let n = p as usize;
            let general = construct_b_general(&Eisenstein::unramified(p), 3, 12).unwrap();
            let unram = construct_b_unramified(p, n, 3, 12).unwrap();
            let d = crate::construct::unramified_coefficients(p, n, 3, unram.params.working_precision).unwrap();
            let b = general.component("b").unwrap();
            for m in 1..3 {
                for i in 0..n {
                    let digit = b.comp(m).eps.coeff(i, 0);
                    let expected = d[m][i].mul_p_power(i as u32);
                    assert!(digit.eq_mod(&expected), "p={p} m={m} i={i}");
                }
            }
        }
    }

    #[test]
    fn truncated_rings_admit_the_same_forms() {
        // b over S/E^k for k <= p; c over S/E^k for e k <= p - 1 + e.
        for (p, c, k) in [(3u64, &[-3i64, 1][..], 3usize), (3, &[-3, 0, 1], 2), (5, &[-5, 1], 5), (5, &[10, -5, 0, 1], 2)] {
            let e = eis(p, c);
            let one = SRing::new(e.clone(), k).one(14);
            assert!(construct_b_over(&one, &e, 3, 10).unwrap().pass(), "b over S/E^{k}, E = {c:?}");
            if e.degree() * k <= p as usize - 1 + e.degree() {
                assert!(construct_c_over(&one, &e, 3, 10).unwrap().pass(), "c over S/E^{k}, E = {c:?}");
            }
        }
        // Outside the bound u^{p^n-1} E is not divisible by p.
        let e = eis(3, &[-3, 0, 1]);
        let one = SRing::new(e.clone(), 3).one(14);
        assert!(construct_c_over(&one, &e, 2, 10).is_err());
    }

    #[test]
    fn fault_is_seen_at_its_level() {
        let e = eis(3, &[-3, 0, 1]);
        let rep = construct_b_general(&e, 3, 10).unwrap();
        let t = general_targets(&rep.component("b").unwrap().comp(0).re, &e, 3).unwrap();
        for m in 0..3 {
            let bad = inject_fault(rep.component("b").unwrap(), m, 10);
            let levels = verify_ghost_identity(Identity::Product { x: &t.g_lambda, y: &bad, z: &t.f_lambda }).unwrap();
            assert_eq!(first_failure(&levels), Some(m));
        }
    }
}
