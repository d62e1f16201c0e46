//! Sen modules `(M, Theta)` over `Z_p[u]/(E^n)`: a free module with an operator
//! satisfying `Theta(a x) = a Theta(x) + Theta(a) x`, where `Theta(f) = f'(u) E(u)`
//! on scalars. For `E = u - p` this is `lambda^i -> i lambda^i`.
//!
//! Everything is flattened to `Z/p^N` through the basis `u^a E^k e_j`
//! (`a < e`, `k < n`, `j < r`), ordered with `k` major so that `E^k M` is a
//! tail block.

mod lattice;

pub use lattice::{construct_stable_lattice, is_integral, Lattice, QMatrix, RationalSenModule, StableLattice};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::RngCore;

use crate::base::BaseRing;
use crate::error::{Error, Result};
use crate::linalg::{fp_roots, FpMatrix, ZpnMatrix};
use crate::series::{Eisenstein, SRing, SRingElem};
use crate::zpoly::ZPoly;

/// `Z_p[u]/(E^n)` at precision `N`, with its derivation `f -> f' E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SenRing {
    ring: SRing,
    prec: u32,
}

impl SenRing {
    pub fn new(e: Eisenstein, n: usize, prec: u32) -> Self {
        SenRing { ring: SRing::new(e, n), prec }
    }

    /// `Z_p[lambda]/(lambda^n)`, `lambda = u - p`.
    pub fn unramified(p: u64, n: usize, prec: u32) -> Self {
        Self::new(Eisenstein::unramified(p), n, prec)
    }

    pub fn ring(&self) -> &SRing {
        &self.ring
    }

    pub fn eisenstein(&self) -> &Eisenstein {
        self.ring.eisenstein()
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// The scalar derivation `f -> f'(u) E(u)`.
    pub fn theta(&self, f: &SRingElem) -> SRingElem {
        f.derivative().mul(&self.ring.e_elem(f.precision()))
    }

    /// `u^a E^k`.
    pub fn basis_element(&self, k: usize, a: usize) -> SRingElem {
        let f = ZPoly::monomial(BigInt::from(1), a).mul(&self.eisenstein().poly().pow(k as u64));
        self.ring.from_poly(&f, self.prec)
    }

    pub fn constant(&self, c: i64) -> SRingElem {
        self.ring.from_poly(&ZPoly::from_i64(&[c]), self.prec)
    }

    pub fn e_prime(&self) -> SRingElem {
        self.ring.from_poly(&self.eisenstein().derivative(), self.prec)
    }
}

/// A free Sen module of rank `r`. `theta[i][j]` is the coefficient of `e_i` in
/// `Theta(e_j)`; the operator on the `Z_p`-basis is its Leibniz extension.
#[derive(Clone, Debug, PartialEq)]
pub struct SenModule {
    base: SenRing,
    rank: usize,
    theta: Vec<Vec<SRingElem>>,
    op: ZpnMatrix,
}

impl SenModule {
    pub fn new(base: SenRing, theta: Vec<Vec<SRingElem>>) -> Result<Self> {
        let rank = theta.len();
        if theta.iter().any(|row| row.len() != rank) {
            return Err(Error::Invalid("theta must be a square matrix".into()));
        }
        let mut fixed = Vec::with_capacity(rank);
        for row in theta {
            let mut out = Vec::with_capacity(rank);
            for x in row {
                if x.ring() != base.ring() {
                    return Err(Error::Mismatch(format!("theta entry over {:?}, module over {:?}", x.ring(), base.ring())));
                }
                if x.precision() < base.prec {
                    return Err(Error::PrecisionExhausted(format!(
                        "theta entry known to p^{}, module needs p^{}",
                        x.precision(),
                        base.prec
                    )));
                }
                out.push(x.with_precision(base.prec));
            }
            fixed.push(out);
        }
        let dim = rank * base.ring.dim();
        let mut m = SenModule { op: ZpnMatrix::zeros(base.prime(), base.prec, dim, dim), base, rank, theta: fixed };
        for idx in 0..dim {
            let col = m.flatten(&m.leibniz_image(idx));
            m.op.set_column(idx, &col);
        }
        Ok(m)
    }

    /// The zero module.
    pub fn zero(base: SenRing) -> Self {
        SenModule::new(base, Vec::new()).expect("empty theta is square")
    }

    pub fn base(&self) -> &SenRing {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn theta(&self) -> &[Vec<SRingElem>] {
        &self.theta
    }

    /// The flattened operator on `(Z/p^N)^{r e n}`.
    pub fn operator(&self) -> &ZpnMatrix {
        &self.op
    }

    /// Rank over `Z_p`.
    pub fn dim(&self) -> usize {
        self.rank * self.base.ring.dim()
    }

    /// Flat index of `u^a E^k e_j`.
    pub fn index(&self, k: usize, j: usize, a: usize) -> usize {
        let e = self.base.ring.e_degree();
        k * e * self.rank + j * e + a
    }

    fn unindex(&self, idx: usize) -> (usize, usize, usize) {
        let e = self.base.ring.e_degree();
        let block = e * self.rank;
        (idx / block, (idx % block) / e, idx % e)
    }

    /// The module element `u^a E^k e_j` for flat index `idx`.
    pub fn basis_vector(&self, idx: usize) -> Vec<SRingElem> {
        let (k, j, a) = self.unindex(idx);
        let zero = self.base.ring.zero(self.base.prec);
        (0..self.rank).map(|i| if i == j { self.base.basis_element(k, a) } else { zero.clone() }).collect()
    }

    fn leibniz_image(&self, idx: usize) -> Vec<SRingElem> {
        let (k, j, a) = self.unindex(idx);
        let f = self.base.basis_element(k, a);
        (0..self.rank)
            .map(|i| {
                let t = f.mul(&self.theta[i][j]);
                if i == j {
                    t.add(&self.base.theta(&f))
                } else {
                    t
                }
            })
            .collect()
    }

    pub fn flatten(&self, x: &[SRingElem]) -> Vec<BigUint> {
        assert_eq!(x.len(), self.rank);
        let e = self.base.ring.e_degree();
        let mut out = vec![BigUint::zero(); self.dim()];
        for (j, xj) in x.iter().enumerate() {
            for (t, c) in xj.with_precision(self.base.prec).to_e_adic().into_iter().enumerate() {
                out[self.index(t / e, j, t % e)] = c;
            }
        }
        out
    }

    pub fn unflatten(&self, v: &[BigUint]) -> Vec<SRingElem> {
        let (e, n) = (self.base.ring.e_degree(), self.base.order());
        (0..self.rank)
            .map(|j| {
                let coords: Vec<BigUint> = (0..e * n).map(|t| v[self.index(t / e, j, t % e)].clone()).collect();
                self.base.ring.from_e_adic(&coords, self.base.prec)
            })
            .collect()
    }

    /// `Theta(x)` through the flattened operator.
    pub fn apply(&self, x: &[SRingElem]) -> Vec<SRingElem> {
        self.unflatten(&self.op.apply(&self.flatten(x)))
    }

    /// Replace the operator on one `Z_p`-basis vector. The result need not be a
    /// Sen module; this exists to exercise [`check_leibniz`].
    pub fn set_operator_column(&mut self, idx: usize, image: &[SRingElem]) {
        let col = self.flatten(image);
        self.op.set_column(idx, &col);
    }

    /// `M + M'`, rebuilt from the two `theta` matrices.
    pub fn direct_sum(&self, o: &SenModule) -> Result<SenModule> {
        if self.base != o.base {
            return Err(Error::Mismatch("direct sum over different rings".into()));
        }
        let r = self.rank + o.rank;
        let zero = self.base.ring.zero(self.base.prec);
        let mut theta = vec![vec![zero; r]; r];
        for i in 0..self.rank {
            for j in 0..self.rank {
                theta[i][j] = self.theta[i][j].clone();
            }
        }
        for i in 0..o.rank {
            for j in 0..o.rank {
                theta[self.rank + i][self.rank + j] = o.theta[i][j].clone();
            }
        }
        SenModule::new(self.base.clone(), theta)
    }
}

/// Which invertible sheaf a twist pulls back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistVariant {
    /// `Theta(e) = k e`: the normalization of `E = u - p`.
    IdealPower,
    /// `Theta(e) = k E'(u) e`.
    IdealOverPPower,
}

/// The rank-one twist by `k`.
pub fn make_twist(base: &SenRing, k: i64, variant: TwistVariant) -> SenModule {
    let kk = base.constant(k);
    let t = match variant {
        TwistVariant::IdealPower => kk,
        TwistVariant::IdealOverPPower => kk.mul(&base.e_prime()),
    };
    SenModule::new(base.clone(), vec![vec![t]]).expect("rank one")
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeibnizWitness {
    pub scalar: SRingElem,
    pub element: Vec<SRingElem>,
    /// `Theta(a x) - a Theta(x) - Theta(a) x`.
    pub defect: Vec<SRingElem>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeibnizReport {
    pub pass: bool,
    pub checked: usize,
    pub witness: Option<LeibnizWitness>,
}

fn leibniz_defect(m: &SenModule, a: &SRingElem, x: &[SRingElem]) -> Vec<SRingElem> {
    let ax: Vec<SRingElem> = x.iter().map(|xi| a.mul(xi)).collect();
    let lhs = m.apply(&ax);
    let tx = m.apply(x);
    let ta = m.base.theta(a);
    lhs.iter().zip(tx.iter().zip(x)).map(|(l, (t, xi))| l.sub(&a.mul(t)).sub(&ta.mul(xi))).collect()
}

/// Check the Leibniz rule with `a = u` on every basis vector (which decides it,
/// the operator being `Z_p`-linear), then on `trials` random pairs.
pub fn check_leibniz(m: &SenModule, trials: usize, rng: &mut dyn RngCore) -> LeibnizReport {
    let prec = m.base.prec;
    let u = m.base.ring.u(prec);
    let mut checked = 0;
    let mut cases: Vec<(SRingElem, Vec<SRingElem>)> = (0..m.dim()).map(|idx| (u.clone(), m.basis_vector(idx))).collect();
    if m.rank > 0 {
        for _ in 0..trials {
            let a = m.base.ring.random(prec, rng);
            let x = (0..m.rank).map(|_| m.base.ring.random(prec, rng)).collect();
            cases.push((a, x));
        }
    }
    for (a, x) in cases {
        checked += 1;
        let defect = leibniz_defect(m, &a, &x);
        if defect.iter().any(|d| !d.is_zero()) {
            return LeibnizReport { pass: false, checked, witness: Some(LeibnizWitness { scalar: a, element: x, defect }) };
        }
    }
    LeibnizReport { pass: true, checked, witness: None }
}

/// Nilpotence of `Phi = Theta^p - E'(u)^{p-1} Theta` on `M/p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotence {
    /// `Phi^index = 0` and `index` is minimal.
    Nilpotent { index: usize },
    /// A nonzero vector of `Phi^D(M/p)`, `D = dim M/p`, so fixed by no power.
    NotNilpotent { certificate: Vec<u64> },
}

impl Nilpotence {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, Nilpotence::Nilpotent { .. })
    }
}

/// The matrix of `Phi` on `M/p` in the flattened basis.
pub fn nilpotence_operator(m: &SenModule) -> FpMatrix {
    let p = m.base.prime();
    let t = m.op.mod_p();
    let ep = m.base.e_prime().pow(p - 1);
    let cols: Vec<Vec<BigUint>> = (0..m.dim())
        .map(|idx| {
            let v: Vec<SRingElem> = m.basis_vector(idx).iter().map(|x| x.mul(&ep)).collect();
            m.flatten(&v)
        })
        .collect();
    let mult = ZpnMatrix::from_columns(p, m.base.prec, m.dim(), &cols).mod_p();
    t.pow(p).sub(&mult.mul(&t))
}

pub fn check_nilpotence(m: &SenModule) -> Nilpotence {
    let phi = nilpotence_operator(m);
    let d = m.dim();
    let mut power = FpMatrix::identity(phi.prime(), d);
    for k in 0..=d {
        if power.is_zero() {
            return Nilpotence::Nilpotent { index: k };
        }
        if k < d {
            power = power.mul(&phi);
        }
    }
    let j = (0..d).find(|&j| power.column(j).iter().any(|&x| x != 0)).expect("nonzero matrix");
    Nilpotence::NotNilpotent { certificate: power.column(j) }
}

/// Elementary divisors of the kernel and cokernel of `Theta` on `M` at
/// precision `N`, each as exponents `a > 0` of `Z/p^a`; `a = N` means free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub precision: u32,
    pub h0: Vec<u32>,
    pub h1: Vec<u32>,
}

impl Cohomology {
    pub fn labels(v: &[u32]) -> Vec<String> {
        v.iter().map(|a| format!("p^{a}")).collect()
    }
}

pub fn sen_cohomology(m: &SenModule) -> Cohomology {
    // For a square matrix with Smith form diag(p^{a_i}), both the kernel and
    // the cokernel are sum Z/p^{a_i}.
    let nontrivial: Vec<u32> = m.op.smith_valuations().into_iter().filter(|&a| a > 0).collect();
    Cohomology { precision: m.base.prec, h0: nontrivial.clone(), h1: nontrivial }
}

/// Eigenvalues of `Theta` on `M/(p, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weights {
    /// Sorted, with multiplicity.
    Split(Vec<u64>),
    /// The characteristic polynomial has an irreducible factor of degree > 1.
    NonSplit { charpoly: Vec<u64>, roots: Vec<u64> },
}

/// `Theta` on `M/(p, u) = F_p^r`.
pub fn theta_mod_p_u(m: &SenModule) -> FpMatrix {
    let p = m.base.prime();
    let mut out = FpMatrix::zeros(p, m.rank, m.rank);
    for i in 0..m.rank {
        for j in 0..m.rank {
            let c = m.theta[i][j].coeffs()[0].clone() % BigUint::from(p);
            out.set(i, j, c.to_u64().expect("reduced mod p"));
        }
    }
    out
}

pub fn sen_weights(m: &SenModule) -> Weights {
    let t = theta_mod_p_u(m);
    let f = t.charpoly();
    let (roots, rest) = fp_roots(&f, t.prime());
    if rest == 0 {
        Weights::Split(roots)
    } else {
        Weights::NonSplit { charpoly: f, roots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ramified(p: u64, e: &[i64], n: usize, prec: u32) -> SenRing {
        SenRing::new(Eisenstein::from_i64(p, e).unwrap(), n, prec)
    }

    #[test]
    fn ring_derivation_on_lambda_powers() {
        let r = SenRing::unramified(5, 4, 10);
        for i in 0..4 {
            let li = r.basis_element(i, 0);
            assert_eq!(r.theta(&li), li.mul(&r.constant(i as i64)));
        }
    }

    #[test]
    fn ring_derivation_is_a_derivation_on_basis_products() {
        let r = ramified(3, &[-3, 0, 1], 3, 8);
        for (k1, a1, k2, a2) in [(0, 1, 0, 1), (1, 0, 0, 1), (1, 1, 1, 1), (0, 0, 2, 1)] {
            let (x, y) = (r.basis_element(k1, a1), r.basis_element(k2, a2));
            assert_eq!(r.theta(&x.mul(&y)), x.mul(&r.theta(&y)).add(&r.theta(&x).mul(&y)));
        }
    }

    #[test]
    fn twist_operator_on_lambda_powers() {
        // Theta(lambda^i e) = (i + 2) lambda^i e.
        let r = SenRing::unramified(5, 3, 10);
        let m = make_twist(&r, 2, TwistVariant::IdealPower);
        for i in 0..3 {
            let x = m.basis_vector(m.index(i, 0, 0));
            let expected: Vec<_> = x.iter().map(|c| c.mul(&r.constant(i as i64 + 2))).collect();
            assert_eq!(m.apply(&x), expected);
        }
    }

    #[test]
    fn general_twist_generator() {
        let r = ramified(3, &[-3, 0, 1], 2, 10);
        let m = make_twist(&r, 1, TwistVariant::IdealOverPPower);
        let e = m.basis_vector(0);
        assert_eq!(m.apply(&e), vec![r.e_prime()]);
        let m0 = make_twist(&r, 0, TwistVariant::IdealOverPPower);
        assert!(m0.apply(&e)[0].is_zero());
    }

    #[test]
    fn leibniz_detects_dropped_ring_term() {
        let r = SenRing::unramified(3, 3, 8);
        let mut m = make_twist(&r, 1, TwistVariant::IdealPower);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(check_leibniz(&m, 10, &mut rng).pass);
        // Theta(lambda e) := lambda Theta(e).
        let idx = m.index(1, 0, 0);
        let lam = r.basis_element(1, 0);
        let image: Vec<_> = m.apply(&m.basis_vector(0)).iter().map(|x| x.mul(&lam)).collect();
        m.set_operator_column(idx, &image);
        let rep = check_leibniz(&m, 10, &mut rng);
        assert!(!rep.pass);
        let w = rep.witness.unwrap();
        assert!(w.defect.iter().any(|d| !d.is_zero()));
    }

    #[test]
    fn zero_module_is_vacuous() {
        let m = SenModule::zero(SenRing::unramified(3, 2, 5));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let rep = check_leibniz(&m, 5, &mut rng);
        assert!(rep.pass && rep.checked == 0);
        assert_eq!(check_nilpotence(&m), Nilpotence::Nilpotent { index: 0 });
        assert_eq!(sen_cohomology(&m).h0, Vec::<u32>::new());
        assert_eq!(sen_weights(&m), Weights::Split(vec![]));
    }

    #[test]
    fn twists_are_nilpotent() {
        for p in [3u64, 5] {
            for k in -2..(p as i64 + 2) {
                let r = SenRing::unramified(p, 3, 6);
                assert!(check_nilpotence(&make_twist(&r, k, TwistVariant::IdealPower)).is_nilpotent());
                for e in [vec![-(p as i64), 0, 1], vec![p as i64, p as i64, 0, 1]] {
                    let r = ramified(p, &e, 2, 6);
                    assert!(check_nilpotence(&make_twist(&r, k, TwistVariant::IdealOverPPower)).is_nilpotent());
                }
            }
        }
    }

    #[test]
    fn theta_one_over_ramified_ring_is_not_nilpotent() {
        let r = ramified(3, &[-3, 0, 1], 1, 6);
        let m = SenModule::new(r.clone(), vec![vec![r.constant(1)]]).unwrap();
        match check_nilpotence(&m) {
            Nilpotence::NotNilpotent { certificate } => {
                assert!(certificate.iter().any(|&x| x != 0));
                // The certificate lies in the stable image: Phi does not kill it.
                let phi = nilpotence_operator(&m);
                let col: Vec<u64> = (0..phi.rows())
                    .map(|i| (0..phi.cols()).map(|j| phi.get(i, j) * certificate[j]).sum::<u64>() % 3)
                    .collect();
                assert!(col.iter().any(|&x| x != 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nilpotence_index_is_minimal_and_matches_charpoly() {
        let r = SenRing::unramified(3, 3, 6);
        let m = make_twist(&r, 1, TwistVariant::IdealPower);
        let phi = nilpotence_operator(&m);
        let Nilpotence::Nilpotent { index } = check_nilpotence(&m) else { panic!() };
        assert!(phi.pow(index as u64).is_zero());
        assert!(index == 0 || !phi.pow(index as u64 - 1).is_zero());
        // Independent: a nilpotent matrix has characteristic polynomial x^D.
        let mut xd = vec![0u64; m.dim() + 1];
        xd[m.dim()] = 1;
        assert_eq!(phi.charpoly(), xd);
    }

    #[test]
    fn cohomology_examples() {
        let n = 12;
        let r = SenRing::unramified(3, 1, n);
        let o = make_twist(&r, 0, TwistVariant::IdealPower);
        assert_eq!(sen_cohomology(&o), Cohomology { precision: n, h0: vec![n], h1: vec![n] });
        for k in 1..3 {
            let c = sen_cohomology(&make_twist(&r, k, TwistVariant::IdealPower));
            assert!(c.h0.is_empty() && c.h1.is_empty());
        }
        for len in 1..=3 {
            let r = SenRing::unramified(3, len, n);
            let c = sen_cohomology(&make_twist(&r, 0, TwistVariant::IdealPower));
            assert_eq!(c.h0, vec![n]);
            assert_eq!(c.h1, vec![n]);
        }
        assert_eq!(Cohomology::labels(&[2, 12]), vec!["p^2", "p^12"]);
    }

    #[test]
    fn cohomology_sees_torsion() {
        // Theta = 3 on the structure sheaf at n = 1 leaves Z/3 in both degrees.
        let r = SenRing::unramified(3, 1, 10);
        let m = SenModule::new(r.clone(), vec![vec![r.constant(3)]]).unwrap();
        assert_eq!(sen_cohomology(&m).h0, vec![1]);
        // lambda^3 e is killed by Theta = i at i = 3, of valuation 1.
        let r = SenRing::unramified(3, 4, 10);
        assert_eq!(sen_cohomology(&make_twist(&r, 0, TwistVariant::IdealPower)).h0, vec![1, 10]);
    }

    #[test]
    fn weights() {
        let r = SenRing::unramified(5, 2, 6);
        assert_eq!(sen_weights(&make_twist(&r, 7, TwistVariant::IdealPower)), Weights::Split(vec![2]));
        let m = make_twist(&r, 1, TwistVariant::IdealPower).direct_sum(&make_twist(&r, 3, TwistVariant::IdealPower)).unwrap();
        assert_eq!(sen_weights(&m), Weights::Split(vec![1, 3]));
        // x^2 + 1 is irreducible over F_3.
        let r = SenRing::unramified(3, 1, 6);
        let m = SenModule::new(r.clone(), vec![vec![r.constant(0), r.constant(-1)], vec![r.constant(1), r.constant(0)]]).unwrap();
        assert!(matches!(sen_weights(&m), Weights::NonSplit { .. }));
    }

    fn random_module(base: &SenRing, rank: usize, rng: &mut ChaCha8Rng) -> SenModule {
        let theta = (0..rank).map(|_| (0..rank).map(|_| base.ring().random(base.precision(), rng)).collect()).collect();
        SenModule::new(base.clone(), theta).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn built_modules_satisfy_leibniz(seed in any::<u64>(), rank in 1usize..3, n in 1usize..3) {
            let base = ramified(3, &[3, -3, 1], n, 6);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_module(&base, rank, &mut rng);
            prop_assert!(check_leibniz(&m, 4, &mut rng).pass);
        }

        #[test]
        fn cohomology_is_additive(seed in any::<u64>(), n in 1usize..3) {
            let base = SenRing::unramified(3, n, 5);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b) = (random_module(&base, 1, &mut rng), random_module(&base, 2, &mut rng));
            let sum = sen_cohomology(&a.direct_sum(&b).unwrap());
            let mut joined = sen_cohomology(&a).h0;
            joined.extend(sen_cohomology(&b).h0);
            joined.sort_unstable();
            let mut got = sum.h0.clone();
            got.sort_unstable();
            prop_assert_eq!(got, joined);
            prop_assert_eq!(sum.h0, sum.h1);
        }

        #[test]
        fn twist_shifts_weights(k in -20i64..20, n in 1usize..3) {
            for (p, e) in [(3u64, vec![-3i64, 1]), (5, vec![5, 0, 1])] {
                let base = ramified(p, &e, n, 4);
                let w0 = sen_weights(&make_twist(&base, 0, TwistVariant::IdealPower));
                let wk = sen_weights(&make_twist(&base, k, TwistVariant::IdealPower));
                let Weights::Split(w0) = w0 else { panic!() };
                prop_assert_eq!(wk, Weights::Split(w0.iter().map(|w| (*w as i64 + k).rem_euclid(p as i64) as u64).collect()));
            }
        }
    }
}
