//! Dense linear algebra over prime fields.
//!
//! Entries are stored reduced in `0..p` as `u32`; products are formed in
//! `u64`, so any prime below 2^31 is supported.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    /// Panics if `p` is not a prime below 2^31. Callers validate user input
    /// with [`is_prime`] first.
    pub fn new(p: u32) -> Self {
        assert!(is_prime(p as u64) && p < (1 << 31), "{p} is not a supported prime");
        Fp { p }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduce a signed integer into `0..p`.
    #[inline]
    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn from_i128(self, a: i128) -> u32 {
        a.rem_euclid(self.p as i128) as u32
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn lift(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major dense matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: FpMat,
    pub pivots: Vec<usize>,
}

impl FpMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(n: usize, c: u32) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FpMat { rows, cols, data }
    }

    /// Build from a list of column vectors of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMat {
        let mut t = FpMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMat, f: Fp) -> FpMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = FpMat::zeros(self.rows, other.cols);
        let p = f.p() as u64;
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &a) in acc.iter().enumerate() {
                out.set(r, c, a as u32);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], f: Fp) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (a, b) in self.row(r).iter().zip(v) {
                    acc = (acc + *a as u64 * *b as u64) % f.p() as u64;
                }
                acc as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMat, f: Fp) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FpMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FpMat, f: Fp) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FpMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32, f: Fp) -> FpMat {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FpMat { rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &FpMat, c: u32, f: Fp) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    pub fn pow(&self, mut e: u64, f: Fp) -> FpMat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = FpMat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.rows, other.rows);
        let mut out = FpMat::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Copy `block` into `self` with top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &FpMat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    /// Reduced row echelon form.
    pub fn echelon(&self, f: Fp) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(sel, prow);
            let inv = f.inv(m.get(prow, col));
            m.scale_row(prow, inv, f);
            for r in 0..m.rows {
                if r != prow {
                    let c = m.get(r, col);
                    if c != 0 {
                        m.row_axpy(r, prow, f.neg(c), f);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        m.rows_truncate(prow);
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self, f: Fp) -> usize {
        self.echelon(f).pivots.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn kernel(&self, f: Fp) -> Vec<Vec<u32>> {
        let ech = self.echelon(f);
        kernel_from_echelon(&ech, self.cols, f)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self, f: Fp) -> Option<FpMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&FpMat::identity(n));
        let ech = aug.echelon(f);
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FpMat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, ech.matrix.get(r, n + c));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self, f: Fp) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn is_nilpotent(&self, f: Fp) -> bool {
        assert_eq!(self.rows, self.cols);
        self.rows == 0 || self.pow(self.rows as u64, f).is_zero()
    }

    /// Solve `self * Y = rhs` for `Y`, given that `self` has full column rank
    /// and every column of `rhs` lies in its column space.
    pub fn solve(&self, rhs: &FpMat, f: Fp) -> Option<FpMat> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let aug = self.hstack(rhs);
        let ech = aug.echelon(f);
        // The system is consistent iff no pivot lands in the rhs block.
        if ech.pivots.iter().any(|&c| c >= n) {
            return None;
        }
        if ech.pivots.len() < n {
            return None;
        }
        let mut y = FpMat::zeros(n, rhs.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                y.set(pc, c, ech.matrix.get(r, n + c));
            }
        }
        Some(y)
    }

    /// Columns spanning the column space, chosen from the pivot columns.
    pub fn column_space(&self, f: Fp) -> FpMat {
        let ech = self.echelon(f);
        let cols: Vec<Vec<u32>> = ech.pivots.iter().map(|&c| self.column(c)).collect();
        FpMat::from_columns(self.rows, &cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, c: u32, f: Fp) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = f.mul(*x, c);
        }
    }

    /// row[dst] += c * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, c: u32, f: Fp) {
        let cols = self.cols;
        let p = f.p() as u64;
        for k in 0..cols {
            let s = self.data[src * cols + k];
            if s != 0 {
                let d = &mut self.data[dst * cols + k];
                *d = ((*d as u64 + c as u64 * s as u64) % p) as u32;
            }
        }
    }

    fn rows_truncate(&mut self, rows: usize) {
        self.rows = rows;
        self.data.truncate(rows * self.cols);
    }
}

/// Kernel basis read off an echelon form of a matrix with `ncols` columns.
pub fn kernel_from_echelon(ech: &Echelon, ncols: usize, f: Fp) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![false; ncols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (r, &pc) in ech.pivots.iter().enumerate() {
            v[pc] = f.neg(ech.matrix.get(r, free));
        }
        out.push(v);
    }
    out
}

/// Incrementally maintained reduced echelon basis of a subspace of `F_p^n`.
#[derive(Clone, Debug)]
pub struct RowSpace {
    n: usize,
    // (pivot column, row vector with 1 at pivot and zeros at other pivots)
    rows: Vec<(usize, Vec<u32>)>,
}

impl RowSpace {
    pub fn new(n: usize) -> Self {
        RowSpace { n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Reduce `v` modulo the space in place.
    pub fn reduce(&self, v: &mut [u32], f: Fp) {
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(nc, y));
                    }
                }
            }
        }
    }

    /// Insert `v`; returns true if it enlarged the space.
    pub fn insert(&mut self, mut v: Vec<u32>, f: Fp) -> bool {
        debug_assert_eq!(v.len(), self.n);
        self.reduce(&mut v, f);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in &mut v {
            *x = f.mul(*x, inv);
        }
        // keep the basis fully reduced
        for (_, row) in &mut self.rows {
            let c = row[pc];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &y) in row.iter_mut().zip(&v) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(nc, y));
                    }
                }
            }
        }
        self.rows.push((pc, v));
        true
    }

    pub fn contains(&self, v: &[u32], f: Fp) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w, f);
        w.iter().all(|&x| x == 0)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        p.sort_unstable();
        p
    }

    pub fn basis(&self) -> impl Iterator<Item = &[u32]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(p: u32, rows: usize, cols: usize, v: &[i64]) -> FpMat {
        let f = Fp::new(p);
        FpMat::from_rows(rows, cols, v.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn field_ops() {
        let f = Fp::new(7);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.lift(6), -1);
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let f = Fp::new(5);
        // second row is twice the first mod 5
        let a = mat(5, 2, 3, &[1, 2, 3, 2, 4, 1]);
        let ker = a.kernel(f);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.mul_vec(v, f).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = Fp::new(3);
        let a = mat(3, 2, 2, &[1, 1, 0, 1]);
        let inv = a.inverse(f).unwrap();
        assert_eq!(a.mul(&inv, f), FpMat::identity(2));
        let sing = mat(3, 2, 2, &[1, 2, 2, 1]);
        assert!(sing.inverse(f).is_none());
    }

    #[test]
    fn nilpotent_detection() {
        let f = Fp::new(2);
        assert!(mat(2, 2, 2, &[0, 1, 0, 0]).is_nilpotent(f));
        assert!(!mat(2, 2, 2, &[1, 1, 0, 0]).is_nilpotent(f));
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(0u32..7, 12)) {
            let f = Fp::new(7);
            let a = FpMat::from_rows(3, 4, entries);
            let ker = a.kernel(f);
            prop_assert_eq!(a.rank(f) + ker.len(), 4);
            for v in &ker {
                prop_assert!(a.mul_vec(v, f).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn solve_recovers_product(entries in proptest::collection::vec(0u32..5, 9),
                                  y in proptest::collection::vec(0u32..5, 3)) {
            let f = Fp::new(5);
            let a = FpMat::from_rows(3, 3, entries);
            let basis = a.column_space(f);
            let rhs = FpMat::from_columns(3, &[a.mul_vec(&y, f)]);
            let sol = basis.solve(&rhs, f).expect("rhs in column space");
            prop_assert_eq!(basis.mul(&sol, f), rhs);
        }
    }
}
