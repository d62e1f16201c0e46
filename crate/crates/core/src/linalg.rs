//! Dense matrices over `Z/p^N` and over `F_p`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::padic::{pow_p, PAdic};

/// A matrix over `Z/p^N`, row-major, entries reduced to `[0, p^N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpnMatrix {
    p: u64,
    prec: u32,
    rows: usize,
    cols: usize,
    data: Vec<BigUint>,
}

impl ZpnMatrix {
    pub fn zeros(p: u64, prec: u32, rows: usize, cols: usize) -> Self {
        ZpnMatrix { p, prec, rows, cols, data: vec![BigUint::zero(); rows * cols] }
    }

    pub fn identity(p: u64, prec: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, prec, n, n);
        for i in 0..n {
            m.set(i, i, BigUint::from(1u32));
        }
        m
    }

    /// Build from columns; each column has `rows` entries.
    pub fn from_columns(p: u64, prec: u32, rows: usize, columns: &[Vec<BigUint>]) -> Self {
        let mut m = Self::zeros(p, prec, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn modulus(&self) -> BigUint {
        pow_p(self.p, self.prec)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigUint) {
        let m = self.modulus();
        self.data[i * self.cols + j] = x % m;
    }

    pub fn column(&self, j: usize) -> Vec<BigUint> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[BigUint]) {
        assert_eq!(col.len(), self.rows);
        for (i, x) in col.iter().enumerate() {
            self.set(i, j, x.clone());
        }
    }

    pub fn apply(&self, v: &[BigUint]) -> Vec<BigUint> {
        assert_eq!(v.len(), self.cols);
        let m = self.modulus();
        (0..self.rows)
            .map(|i| {
                let mut acc = BigUint::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc % &m
            })
            .collect()
    }

    pub fn mul(&self, o: &ZpnMatrix) -> ZpnMatrix {
        assert_eq!(self.cols, o.rows);
        let cols: Vec<Vec<BigUint>> = (0..o.cols).map(|j| self.apply(&o.column(j))).collect();
        ZpnMatrix::from_columns(self.p, self.prec, self.rows, &cols)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, o: &ZpnMatrix) -> ZpnMatrix {
        let mut m = Self::zeros(self.p, self.prec.min(o.prec), self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    pub fn mod_p(&self) -> FpMatrix {
        let p = BigUint::from(self.p);
        let data = self.data.iter().map(|x| (x % &p).to_u64().expect("reduced mod p")).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    fn valuation(&self, x: &BigUint) -> u32 {
        PAdic::new(self.p, self.prec, x.clone()).valuation()
    }

    /// Exponents `a_i` of the Smith form `diag(p^{a_1}, ..., p^{a_k})`,
    /// `k = min(rows, cols)`, nondecreasing; `a_i = N` for a zero diagonal entry.
    pub fn smith_valuations(&self) -> Vec<u32> {
        let mut a = self.clone();
        let m = self.modulus();
        let k = self.rows.min(self.cols);
        let mut out = Vec::with_capacity(k);
        for t in 0..k {
            let mut best: Option<(u32, usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    let x = a.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    let v = a.valuation(x);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((v, pi, pj)) = best else {
                out.extend(core::iter::repeat(self.prec).take(k - t));
                break;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let pv = pow_p(self.p, v);
            let unit = PAdic::new(self.p, self.prec, a.get(t, t) / &pv);
            let uinv = unit.inverse().expect("pivot cofactor is a unit");
            for j in t..a.cols {
                let x = a.get(t, j) * uinv.residue();
                a.set(t, j, x);
            }
            for i in t + 1..a.rows {
                let q = a.get(i, t) / &pv;
                if q.is_zero() {
                    continue;
                }
                for j in t..a.cols {
                    let x = (a.get(i, j) + &m - (&q * a.get(t, j)) % &m) % &m;
                    a.set(i, j, x);
                }
            }
            for j in t + 1..a.cols {
                a.set(t, j, BigUint::zero());
            }
            out.push(v);
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

/// A matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x.rem_euclid(p as i64) as u64);
            }
        }
        m
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let x = (out.get(i, j) + a * o.get(k, j)) % self.p;
                    out.set(i, j, x);
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| (a + self.p - b) % self.p).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Characteristic polynomial `det(x - A)`, constant term first, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<u64> {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let (n, p) = (self.rows, self.p);
        let mut h = self.clone();
        for m in 0..n.saturating_sub(2) {
            let Some(piv) = (m + 1..n).find(|&i| h.get(i, m) != 0) else { continue };
            if piv != m + 1 {
                for j in 0..n {
                    h.data.swap(piv * n + j, (m + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + piv, i * n + m + 1);
                }
            }
            let inv = inv_mod(h.get(m + 1, m), p);
            for i in m + 2..n {
                let t = h.get(i, m) * inv % p;
                if t == 0 {
                    continue;
                }
                for j in 0..n {
                    let x = (h.get(i, j) + p - t * h.get(m + 1, j) % p) % p;
                    h.set(i, j, x);
                }
                for r in 0..n {
                    let x = (h.get(r, m + 1) + t * h.get(r, i)) % p;
                    h.set(r, m + 1, x);
                }
            }
        }
        // p_k = (x - h_kk) p_{k-1} - sum_{i=1}^{k-1} h_{k-i,k} (prod_{j=k-i+1}^{k} h_{j,j-1}) p_{k-i-1}
        let hh = |i: usize, j: usize| h.get(i - 1, j - 1);
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            let prev = &polys[k - 1];
            let mut next = vec![0u64; k + 1];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = (next[d + 1] + c) % p;
                next[d] = (next[d] + p - c * hh(k, k) % p) % p;
            }
            let mut prod = 1u64;
            for i in 1..k {
                prod = prod * hh(k - i + 1, k - i) % p;
                let coef = hh(k - i, k) * prod % p;
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[k - i - 1].iter().enumerate() {
                    next[d] = (next[d] + p - coef * c % p) % p;
                }
            }
            polys.push(next);
        }
        polys.pop().expect("at least the constant polynomial")
    }
}

/// Roots of `f` in `F_p` with multiplicity, found by trial, and the degree of
/// the cofactor left without roots.
pub fn fp_roots(f: &[u64], p: u64) -> (Vec<u64>, usize) {
    let mut f: Vec<u64> = f.iter().map(|c| c % p).collect();
    while f.len() > 1 && *f.last().expect("nonempty") == 0 {
        f.pop();
    }
    let mut roots = Vec::new();
    for a in 0..p {
        while f.len() > 1 {
            // Synthetic division by (x - a).
            let mut q = vec![0u64; f.len() - 1];
            let mut carry = 0u64;
            for d in (0..f.len()).rev() {
                let c = (f[d] + carry) % p;
                if d == 0 {
                    carry = c;
                } else {
                    q[d - 1] = c;
                    carry = c * a % p;
                }
            }
            if carry != 0 {
                break;
            }
            roots.push(a);
            f = q;
        }
    }
    (roots, f.len() - 1)
}
