//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittsen_core::construct::{
    construct_b_general, construct_b_unramified, construct_c, first_failure, general_targets, inject_fault, iota_lambda,
    solve_v_f, unramified_targets, verify_ghost_identity, vf_precision_budget, ConstructionReport, Identity,
};
use wittsen_core::delta::{theta_on_envelope_generators, verify_eta_on_delta_powers, DeltaCaps};
use wittsen_core::sen::{
    check_leibniz, check_nilpotence, construct_stable_lattice, make_twist, sen_cohomology, Nilpotence, RationalSenModule,
    SenModule, SenRing, TwistVariant,
};
use wittsen_core::series::{Eisenstein, SRing};
use wittsen_core::witt::{UniversalWitt, WittVec};
use wittsen_core::{Error, PAdic};

/// Target precision for the Witt constructions.
const N_TARGET: u32 = 12;
/// Target precision for the `x_lambda` solve.
const N_VF: u32 = 30;
/// Working precision of random Witt vectors in the kernel oracle.
const WITT_PREC: u32 = 20;
/// Minimum precision at which ghost and universal results must agree.
const WITT_AGREE_MIN: u32 = WITT_PREC - 4;
/// Precision of Sen modules.
const SEN_PREC: u32 = 12;
const SEED: u64 = 20_241_016;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn failed_items<R>(rep: &ConstructionReport<R>) -> String {
    let mut out = Vec::new();
    for id in &rep.identities {
        for c in id.levels.iter().filter(|c| !c.pass) {
            out.push(format!("{} level {}", id.name, c.level));
        }
    }
    for v in rep.valuations.iter().filter(|v| !v.pass()) {
        out.push(format!("v({}) = {} != {}", v.symbol, v.computed, v.claimed));
    }
    for c in rep.checks.iter().filter(|c| !c.pass) {
        out.push(format!("{} ({})", c.name, c.detail));
    }
    out.join("; ")
}

fn c1() -> Outcome {
    let mut counts = Vec::new();
    for p in [3u64, 5] {
        let rep = construct_b_unramified(p, p as usize, 3, N_TARGET).map_err(|e| format!("p={p}: {e}"))?;
        ensure(rep.pass(), || format!("p={p}: {}", failed_items(&rep)))?;
        ensure(rep.identities[0].levels.len() == 3, || "expected 3 ghost levels".into())?;
        counts.push(format!("p={p}: 3 levels, {} valuations", rep.valuations.len()));
    }
    Ok(counts.join(", "))
}

fn c2() -> Outcome {
    let mut seen = Vec::new();
    for p in [3u64, 5] {
        match construct_b_unramified(p, p as usize + 1, 3, N_TARGET) {
            Err(Error::InsufficientValuationAt { m: 1, i, needed, found }) if i == p as usize => {
                seen.push(format!("p={p}: (m=1, i={i}) needed {needed} found {found}"));
            }
            other => return Err(format!("p={p}: expected failure at (1, {p}), got {other:?}")),
        }
        ensure(construct_b_unramified(p, p as usize, 3, N_TARGET).is_ok(), || format!("p={p}: n = p must succeed"))?;
    }
    Ok(seen.join(", "))
}

fn c3() -> Outcome {
    let mut out = Vec::new();
    for coeffs in [&[-3i64, 1][..], &[-3, 0, 1]] {
        let e = Eisenstein::from_i64(3, coeffs).map_err(|e| e.to_string())?;
        let b = construct_b_general(&e, 3, N_TARGET).map_err(|err| format!("b for {coeffs:?}: {err}"))?;
        ensure(b.pass(), || format!("b for {coeffs:?}: {}", failed_items(&b)))?;
        let c = construct_c(&e, 3, N_TARGET).map_err(|err| format!("c for {coeffs:?}: {err}"))?;
        ensure(c.pass(), || format!("c for {coeffs:?}: {}", failed_items(&c)))?;
        let names: Vec<&str> = b.checks.iter().chain(&c.checks).map(|c| c.name.as_str()).collect();
        for needed in ["b_0 = 1 + eps E'", "c_0 = eps", "h_1 is a unit", "h_2 is a unit"] {
            ensure(names.contains(&needed), || format!("{coeffs:?}: check {needed:?} missing from {names:?}"))?;
        }
        out.push(format!("E={coeffs:?}: {} checks", b.checks.len() + c.checks.len()));
    }
    Ok(out.join(", "))
}

fn c4() -> Outcome {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        let rep = solve_v_f(p, 4, N_VF).map_err(|e| format!("p={p}: {e}"))?;
        ensure(rep.pass(), || format!("p={p}: {}", failed_items(&rep)))?;
        let vals: Vec<u32> = rep.valuations.iter().map(|v| v.computed).collect();
        ensure(vals.len() == 4, || format!("p={p}: {vals:?}"))?;
        out.push(format!("p={p}: v(x_n) = {vals:?}"));
    }
    Ok(out.join(", "))
}

fn random_lattice_input(rng: &mut ChaCha8Rng) -> (u64, RationalSenModule) {
    let e = if rng.gen_bool(0.5) { Eisenstein::unramified(3) } else { Eisenstein::from_i64(3, &[-3, 0, 1]).unwrap() };
    let rank = rng.gen_range(1..=3usize);
    let n = if e.degree() == 1 { rng.gen_range(1..=3usize) } else { rng.gen_range(1..=2usize) };
    (3, RationalSenModule::random(SRing::new(e, n), rank, 2, rng))
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut twists = 0;
    let mut rings: Vec<(SenRing, TwistVariant)> = Vec::new();
    for p in [3u64, 5] {
        for n in 1..=p as usize {
            rings.push((SenRing::unramified(p, n, SEN_PREC), TwistVariant::IdealPower));
            rings.push((SenRing::unramified(p, n, SEN_PREC), TwistVariant::IdealOverPPower));
        }
        for coeffs in [vec![-(p as i64), 0, 1], vec![p as i64, p as i64, 0, 1]] {
            for n in 1..=2 {
                let e = Eisenstein::from_i64(p, &coeffs).unwrap();
                rings.push((SenRing::new(e, n, SEN_PREC), TwistVariant::IdealOverPPower));
            }
        }
    }
    for (base, variant) in &rings {
        let p = base.prime() as i64;
        for k in -p..=2 * p {
            let m = make_twist(base, k, *variant);
            let lb = check_leibniz(&m, 2, &mut rng);
            ensure(lb.pass, || format!("Leibniz fails for twist {k} over {:?}: {:?}", base.ring(), lb.witness))?;
            ensure(check_nilpotence(&m).is_nilpotent(), || format!("twist {k} over {:?} not nilpotent", base.ring()))?;
            twists += 1;
        }
    }

    let bad_ring = SenRing::new(Eisenstein::from_i64(3, &[-3, 0, 1]).unwrap(), 1, SEN_PREC);
    let bad = SenModule::new(bad_ring.clone(), vec![vec![bad_ring.constant(1)]]).map_err(|e| e.to_string())?;
    let cert = match check_nilpotence(&bad) {
        Nilpotence::NotNilpotent { certificate } if certificate.iter().any(|&x| x != 0) => certificate,
        other => return Err(format!("E = u^2 - 3, Theta = 1: expected a certificate, got {other:?}")),
    };

    for p in [3u64, 5] {
        for n in 1..=p as usize {
            let o = make_twist(&SenRing::unramified(p, n, SEN_PREC), 0, TwistVariant::IdealPower);
            let c = sen_cohomology(&o);
            ensure(c.h0 == vec![SEN_PREC] && c.h1 == vec![SEN_PREC], || format!("p={p} n={n}: {c:?}"))?;
        }
    }

    let mut pivots = Vec::new();
    for _ in 0..10 {
        let (p, m) = random_lattice_input(&mut rng);
        let out = construct_stable_lattice(&m, 64).map_err(|e| format!("lattice: {e}"))?;
        let v = out.theta_matrix.min_valuation(p).unwrap_or(0);
        ensure(out.is_stable(p) && v >= 0, || format!("lattice not stable: theta valuation {v}"))?;
        ensure(out.lattice.dim() == m.dim(), || "lattice does not span".into())?;
        for b in out.lattice.basis() {
            ensure(out.lattice.contains(&m.operator().apply(b)), || "Theta leaves the lattice".into())?;
        }
        pivots.push(out.lattice.pivots().iter().sum::<i64>());
    }
    Ok(format!("{twists} twists; certificate {cert:?}; lattice index exponents {pivots:?}"))
}

fn c6() -> Outcome {
    let caps = DeltaCaps::for_prime(3);
    let mut out = Vec::new();
    for coeffs in [&[-3i64, 1][..], &[-3, 0, 1]] {
        let e = Eisenstein::from_i64(3, coeffs).unwrap();
        let rep = verify_eta_on_delta_powers(&e, 3, caps).map_err(|e| e.to_string())?;
        ensure(rep.pass(), || format!("E={coeffs:?}: {rep:?}"))?;
        out.push(format!("E={coeffs:?}: i=1..3 agree"));
    }
    let th = theta_on_envelope_generators(3, 3, 5, caps).map_err(|e| e.to_string())?;
    ensure(th.pass(), || format!("{th:?}"))?;
    out.push(format!("{} generator and {} lambda^k checks", th.generators.len(), th.lambda_powers.len()));
    Ok(out.join(", "))
}

fn random_witt(p: u64, len: usize, rng: &mut ChaCha8Rng) -> WittVec<PAdic> {
    WittVec::new((0..len).map(|_| PAdic::random(p, WITT_PREC, rng)).collect())
}

fn agree_at(a: &WittVec<PAdic>, b: &WittVec<PAdic>) -> Result<u32, String> {
    ensure(a.eq_mod(b), || format!("{a:?} != {b:?}"))?;
    Ok(a.precisions().iter().zip(b.precisions()).map(|(x, y)| (*x).min(y)).min().unwrap_or(WITT_PREC))
}

fn c7() -> Outcome {
    let p = 3u64;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let universal: Vec<UniversalWitt> = (1..=4).map(|l| UniversalWitt::new(p, l).unwrap()).collect();
    let mut min_prec = WITT_PREC;
    for trial in 0..200 {
        let len = 1 + trial % 4;
        let (x, y) = (random_witt(p, len, &mut rng), random_witt(p, len, &mut rng));
        let u = &universal[len - 1];
        let e = |err: Error| err.to_string();
        min_prec = min_prec.min(agree_at(&u.add(&x, &y).map_err(e)?, &x.add(&y).map_err(e)?)?);
        min_prec = min_prec.min(agree_at(&u.mul(&x, &y).map_err(e)?, &x.mul(&y).map_err(e)?)?);
    }
    ensure(min_prec >= WITT_AGREE_MIN, || format!("agreement only to p^{min_prec}"))?;

    let one = PAdic::one(p, WITT_PREC);
    for trial in 0..200 {
        let len = 1 + trial % 3;
        let e = |err: Error| err.to_string();
        let x = random_witt(p, len, &mut rng);
        let y = random_witt(p, len + 1, &mut rng);
        let pw = WittVec::from_int(&one, len, &BigInt::from(p)).map_err(e)?;
        agree_at(&x.verschiebung().frobenius().map_err(e)?, &x.mul(&pw).map_err(e)?)?;
        let lhs = x.verschiebung().mul(&y).map_err(e)?;
        let rhs = x.mul(&y.frobenius().map_err(e)?).map_err(e)?.verschiebung();
        agree_at(&lhs, &rhs)?;

        let x1 = random_witt(p, len + 1, &mut rng);
        let (dx, dy) = (x1.delta().map_err(e)?, y.delta().map_err(e)?);
        let pow_p = |v: &WittVec<PAdic>| -> Result<WittVec<PAdic>, String> {
            let t = v.truncate(len);
            let mut acc = WittVec::one(&one, len);
            for _ in 0..p {
                acc = acc.mul(&t).map_err(e)?;
            }
            Ok(acc)
        };
        let lhs = x1.mul(&y).map_err(e)?.delta().map_err(e)?;
        let rhs = pow_p(&x1)?
            .mul(&dy)
            .map_err(e)?
            .add(&pow_p(&y)?.mul(&dx).map_err(e)?)
            .map_err(e)?
            .add(&pw.mul(&dx).map_err(e)?.mul(&dy).map_err(e)?)
            .map_err(e)?;
        agree_at(&lhs, &rhs)?;
    }
    Ok(format!("200 add/mul pairs agree to p^{min_prec} (pinned >= p^{WITT_AGREE_MIN}); 200 FV, V-projection, delta-Leibniz inputs"))
}

fn c8() -> Outcome {
    let mut out = Vec::new();
    let n = N_TARGET;

    let rep = construct_b_unramified(3, 3, 3, n).map_err(|e| e.to_string())?;
    let b = rep.component("b").unwrap();
    let ring = b.comp(0).re.ring().clone();
    let t = unramified_targets(&ring, 3, rep.params.working_precision).map_err(|e| e.to_string())?;
    for m in 0..3 {
        let bad = inject_fault(b, m, n);
        let lv = verify_ghost_identity(Identity::Product { x: &t.lambda_tilde, y: &bad, z: &t.lambda }).map_err(|e| e.to_string())?;
        ensure(first_failure(&lv) == Some(m), || format!("unramified b_{m}: first failure {:?}", first_failure(&lv)))?;
    }
    out.push("unramified b: 3/3");

    let e = Eisenstein::from_i64(3, &[-3, 0, 1]).unwrap();
    let rep_b = construct_b_general(&e, 3, n).map_err(|e| e.to_string())?;
    let rep_c = construct_c(&e, 3, n).map_err(|e| e.to_string())?;
    let b = rep_b.component("b").unwrap();
    let c = rep_c.component("c").unwrap();
    let tg = general_targets(&b.comp(0).re, &e, 3).map_err(|e| e.to_string())?;
    for m in 0..3 {
        let bad = inject_fault(b, m, n);
        let lv = verify_ghost_identity(Identity::Product { x: &tg.g_lambda, y: &bad, z: &tg.f_lambda }).map_err(|e| e.to_string())?;
        ensure(first_failure(&lv) == Some(m), || format!("general b_{m}: first failure {:?}", first_failure(&lv)))?;
        let bad = inject_fault(c, m, n);
        let lv = verify_ghost_identity(Identity::DifferenceProduct { x: &tg.g_u, y: &tg.f_u, z: &bad, t: &tg.f_lambda })
            .map_err(|e| e.to_string())?;
        ensure(first_failure(&lv) == Some(m), || format!("c_{m}: first failure {:?}", first_failure(&lv)))?;
    }
    out.push("general b: 3/3, c: 3/3");

    // Level 0 of iota(lambda) = V F(x) reads 0 = 0, so x_0 is first seen at level 1.
    for p in [3u64, 5] {
        let rep = solve_v_f(p, 4, N_VF).map_err(|e| e.to_string())?;
        let x = rep.component("x_lambda").unwrap();
        let iota = iota_lambda(p, 4, vf_precision_budget(p, 4, N_VF)).map_err(|e| e.to_string())?;
        let one = WittVec::one(&PAdic::one(p, vf_precision_budget(p, 4, N_VF)), 4);
        for m in 0..4 {
            let bad = inject_fault(x, m, N_VF);
            let vf = bad.frobenius().map_err(|e| e.to_string())?.verschiebung();
            let lv = verify_ghost_identity(Identity::Product { x: &iota, y: &one, z: &vf }).map_err(|e| e.to_string())?;
            ensure(first_failure(&lv) == Some(m.max(1)), || format!("p={p} x_{m}: first failure {:?}", first_failure(&lv)))?;
        }
    }
    out.push("x_lambda (p=3,5): 4/4 each");
    Ok(out.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("C1 unramified b, n = p, L = 3, N = 12", c1),
        ("C2 n = p + 1 stops at (m = 1, i = p)", c2),
        ("C3 general b and c, E = u - 3, u^2 - 3, L = 3", c3),
        ("C4 x_lambda, p = 3, 5, L = 4, N = 30", c4),
        ("C5 Sen twists, nilpotence, cohomology, stable lattices", c5),
        ("C6 eta on delta powers and Theta on generators", c6),
        ("C7 Witt kernel: ghost vs universal, FV, V-projection, delta-Leibniz", c7),
        ("C8 fault injection at p^(N-1)", c8),
    ];
    let mut all = true;
    for (name, f) in criteria {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("[PASS] {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                all = false;
                println!("[FAIL] {name} ({secs:.2}s): {detail}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
