//! Dense integer matrices with exact Hermite and Smith normal forms.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Rectangular matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        IntMat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        assert_eq!(self.cols, o.rows);
        let mut out = IntMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * &o[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMat {
        let mut out = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = k * &self[(b, j)];
            self[(a, j)] += t;
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = k * &self[(i, b)];
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self[(i, a)].clone();
            self[(i, a)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; square only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = t / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Row-style Hermite normal form: returns (H, U) with U unimodular,
/// U*A = H, pivots positive, entries above each pivot reduced to
/// 0 <= e < pivot, zero rows at the bottom.
pub fn hnf(a: &IntMat) -> (IntMat, IntMat) {
    let mut h = a.clone();
    let mut u = IntMat::identity(a.nrows());
    let (m, n) = (h.nrows(), h.ncols());
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        // gcd out the column below pivot_row
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..m {
                if !h[(i, col)].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(bi) => {
                            if h[(i, col)].abs() < h[(bi, col)].abs() {
                                Some(i)
                            } else {
                                Some(bi)
                            }
                        }
                    };
                }
            }
            let Some(bi) = best else { break };
            h.swap_rows(pivot_row, bi);
            u.swap_rows(pivot_row, bi);
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            let p = h[(pivot_row, col)].clone();
            let mut reduced_any = false;
            for i in pivot_row + 1..m {
                if !h[(i, col)].is_zero() {
                    let q = -(&h[(i, col)]).div_floor(&p);
                    h.add_row(i, pivot_row, &q);
                    u.add_row(i, pivot_row, &q);
                    reduced_any = true;
                }
            }
            if !reduced_any {
                break;
            }
            if (pivot_row + 1..m).all(|i| h[(i, col)].is_zero()) {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        // reduce entries above the pivot into [0, pivot)
        let p = h[(pivot_row, col)].clone();
        for i in 0..pivot_row {
            let q = -(&h[(i, col)]).div_floor(&p);
            h.add_row(i, pivot_row, &q);
            u.add_row(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form data: U*A*V = S with U, V unimodular, S diagonal with
/// positive divisors d_1 | d_2 | ... Also carries V^{-1} since the lattice
/// code needs the dual basis.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMat,
    pub s: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
    pub divisors: Vec<BigInt>,
}

pub fn snf(a: &IntMat) -> SnfResult {
    let mut s = a.clone();
    let (m, n) = (s.nrows(), s.ncols());
    let mut u = IntMat::identity(m);
    let mut v = IntMat::identity(n);
    let mut v_inv = IntMat::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // find a nonzero pivot in the remaining block, smallest |.|
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !s[(i, j)].is_zero() {
                    best = match best {
                        None => Some((i, j)),
                        Some((bi, bj)) => {
                            if s[(i, j)].abs() < s[(bi, bj)].abs() {
                                Some((i, j))
                            } else {
                                Some((bi, bj))
                            }
                        }
                    };
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);
        if s[(t, t)].is_negative() {
            s.negate_col(t);
            v.negate_col(t);
            v_inv.negate_row(t);
        }
        // clear row and column t
        let mut dirty = false;
        for i in t + 1..m {
            if !s[(i, t)].is_zero() {
                let q = -(&s[(i, t)]).div_floor(&s[(t, t)]);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in t + 1..n {
            if !s[(t, j)].is_zero() {
                let q = -(&s[(t, j)]).div_floor(&s[(t, t)]);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                // inverse of col_j += q*col_t is row_t -= q*row_j
                let nq = -q;
                v_inv.add_row(t, j, &nq);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // remainders became new smaller pivots
        }
        // divisibility: pivot must divide the rest of the block
        let p = s[(t, t)].clone();
        let mut fixed = true;
        'scan: for i in t + 1..m {
            for j in t + 1..n {
                if !(&s[(i, j)] % &p).is_zero() {
                    // fold row i into row t to expose a remainder
                    s.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }
    let mut divisors = Vec::new();
    for i in 0..m.min(n) {
        if !s[(i, i)].is_zero() {
            divisors.push(s[(i, i)].clone());
        }
    }
    SnfResult { u, s, v, v_inv, divisors }
}
