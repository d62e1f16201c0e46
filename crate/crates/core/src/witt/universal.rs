//! Universal Witt addition and multiplication polynomials over `Z`, evaluated
//! directly on components. Independent of the ghost-map backend.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::WittVec;
use crate::base::BaseRing;
use crate::error::{Error, Result};
use crate::padic::pow_p;

/// Longest vectors supported; the polynomials grow doubly exponentially.
pub const UNIVERSAL_LENGTH_CAP: usize = 4;

type Mono = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
struct MPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl MPoly {
    fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut m = vec![0; nvars];
        m[i] = exp;
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        MPoly { terms }
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn scale(&self, c: &BigInt) -> MPoly {
        let mut out = MPoly::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    fn pow(&self, e: u64) -> MPoly {
        let mut acc: Option<MPoly> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.expect("exponent is positive")
    }

    fn div_exact(&self, d: &BigInt) -> Option<MPoly> {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.add_term(m.clone(), q);
        }
        Some(out)
    }
}

/// Universal Witt polynomials `S_m(X, Y)` and `P_m(X, Y)` for `m < L`.
#[derive(Clone, Debug)]
pub struct UniversalWitt {
    p: u64,
    len: usize,
    sum: Vec<MPoly>,
    prod: Vec<MPoly>,
}

impl UniversalWitt {
    pub fn new(p: u64, len: usize) -> Result<Self> {
        if len > UNIVERSAL_LENGTH_CAP {
            return Err(Error::LengthCap { length: len, cap: UNIVERSAL_LENGTH_CAP });
        }
        let nv = 2 * len;
        let ghost = |offset: usize, m: usize| -> MPoly {
            let mut acc = MPoly::zero();
            for i in 0..=m {
                let term = MPoly::var(nv, offset + i, p.pow((m - i) as u32) as u32);
                acc = acc.add(&term.scale(&BigInt::from(pow_p(p, i as u32))));
            }
            acc
        };
        let solve = |target: &dyn Fn(usize) -> MPoly| -> Vec<MPoly> {
            let mut out: Vec<MPoly> = Vec::with_capacity(len);
            for m in 0..len {
                let mut acc = target(m);
                for (i, s) in out.iter().enumerate() {
                    let t = s.pow(p.pow((m - i) as u32)).scale(&BigInt::from(pow_p(p, i as u32)));
                    acc = acc.add(&t.scale(&BigInt::from(-1)));
                }
                let q = acc
                    .div_exact(&BigInt::from(pow_p(p, m as u32)))
                    .expect("universal Witt polynomials have integer coefficients");
                out.push(q);
            }
            out
        };
        let sum = solve(&|m| ghost(0, m).add(&ghost(len, m)));
        let prod = solve(&|m| ghost(0, m).mul(&ghost(len, m)));
        Ok(UniversalWitt { p, len, sum, prod })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of monomials in `S_m` and `P_m`.
    pub fn term_counts(&self) -> Vec<(usize, usize)> {
        self.sum.iter().zip(&self.prod).map(|(s, p)| (s.terms.len(), p.terms.len())).collect()
    }

    fn eval<R: BaseRing>(&self, polys: &[MPoly], x: &WittVec<R>, y: &WittVec<R>) -> Result<WittVec<R>> {
        if x.len() != self.len || y.len() != self.len {
            return Err(Error::Mismatch(alloc::format!(
                "universal polynomials built for length {}, got {} and {}",
                self.len,
                x.len(),
                y.len()
            )));
        }
        let vars: Vec<&R> = x.comps().iter().chain(y.comps().iter()).collect();
        let mut powers: BTreeMap<(usize, u32), R> = BTreeMap::new();
        let prec = vars.iter().map(|v| v.precision()).min().unwrap_or(0);
        let zero = vars[0].zero_like().with_precision(prec);
        let mut comps = Vec::with_capacity(self.len);
        for poly in polys {
            let mut acc = zero.clone();
            for (mono, c) in &poly.terms {
                let mut term: Option<R> = None;
                for (i, &e) in mono.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let pw = powers.entry((i, e)).or_insert_with(|| vars[i].pow(e as u64)).clone();
                    term = Some(match term {
                        None => pw,
                        Some(t) => t.mul(&pw),
                    });
                }
                let term = term.unwrap_or_else(|| zero.one_like());
                acc = acc.add(&term.mul_exact(c));
            }
            comps.push(acc);
        }
        Ok(WittVec::new(comps))
    }

    pub fn add<R: BaseRing>(&self, x: &WittVec<R>, y: &WittVec<R>) -> Result<WittVec<R>> {
        self.eval(&self.sum, x, y)
    }

    pub fn mul<R: BaseRing>(&self, x: &WittVec<R>, y: &WittVec<R>) -> Result<WittVec<R>> {
        self.eval(&self.prod, x, y)
    }
}
