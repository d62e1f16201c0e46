//! End-to-end use of the public API, with integer-arithmetic oracles where they exist.

use num_bigint::BigInt;
use num_traits::Pow;

use wittsen_core::construct::{construct_b_unramified, first_failure, inject_fault, solve_v_f, verify_ghost_identity, Identity};
use wittsen_core::sen::{
    check_nilpotence, construct_stable_lattice, make_twist, sen_cohomology, Lattice, RationalSenModule, SenRing, TwistVariant,
};
use wittsen_core::witt::WittVec;
use wittsen_core::PAdic;

#[test]
fn integers_embed_with_the_classical_second_component() {
    for p in [3u64, 5, 7] {
        let one = PAdic::one(p, 30);
        for n in [-11i64, -1, 0, 2, 13, 100] {
            let w = WittVec::from_int(&one, 2, &BigInt::from(n)).unwrap();
            let nb = BigInt::from(n);
            let second = (&nb - Pow::pow(&nb, p as u32)) / BigInt::from(p);
            assert_eq!(w.comp(0), &PAdic::from_int(p, 30, &nb));
            assert!(w.comp(1).eq_mod(&PAdic::from_int(p, 30, &second)), "p={p} n={n}");
        }
    }
}

#[test]
fn integer_embedding_is_a_ring_map() {
    let one = PAdic::one(5, 25);
    let emb = |n: i64| WittVec::from_int(&one, 4, &BigInt::from(n)).unwrap();
    for (a, b) in [(3i64, 7i64), (-4, 9), (25, -6)] {
        assert!(emb(a).add(&emb(b)).unwrap().eq_mod(&emb(a + b)));
        assert!(emb(a).mul(&emb(b)).unwrap().eq_mod(&emb(a * b)));
    }
}

#[test]
fn faults_in_x_lambda_are_seen_from_level_one() {
    let rep = solve_v_f(7, 3, 12).unwrap();
    assert!(rep.pass());
    let x = rep.component("x_lambda").unwrap();
    let iota = rep.component("iota_lambda").unwrap();
    let one = WittVec::one(iota.comp(0), 3);
    for m in 0..3 {
        let vf = inject_fault(x, m, 12).frobenius().unwrap().verschiebung();
        let lv = verify_ghost_identity(Identity::Product { x: iota, y: &one, z: &vf }).unwrap();
        assert_eq!(first_failure(&lv), Some(m.max(1)));
    }
}

#[test]
fn unramified_b_for_smaller_n() {
    for n in 1..=3 {
        let rep = construct_b_unramified(3, n, 3, 10).unwrap();
        assert!(rep.pass(), "n={n}");
    }
}

#[test]
fn twists_add_up_in_cohomology() {
    let base = SenRing::unramified(3, 2, 8);
    let a = make_twist(&base, 1, TwistVariant::IdealPower);
    let b = make_twist(&base, 3, TwistVariant::IdealPower);
    let sum = a.direct_sum(&b).unwrap();
    assert!(check_nilpotence(&sum).is_nilpotent());
    let mut expected = [sen_cohomology(&a).h0, sen_cohomology(&b).h0].concat();
    expected.sort();
    assert_eq!(sen_cohomology(&sum).h0, expected);
}

#[test]
fn integral_modules_keep_the_standard_lattice() {
    let base = SenRing::unramified(5, 3, 8);
    let m = make_twist(&base, -2, TwistVariant::IdealPower);
    let out = construct_stable_lattice(&RationalSenModule::from_integral(&m), 16).unwrap();
    assert_eq!(out.lattice, Lattice::standard(5, m.dim()));
}
