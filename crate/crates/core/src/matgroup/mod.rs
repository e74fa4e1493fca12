//! Exact dense linear algebra over the coefficient fields: minimal
//! polynomials, Jordan-Chevalley decomposition, unipotent log/exp, and the
//! simultaneous-diagonalization normalization used by the orbit procedures.

mod eigen;
mod unipoly;

pub use eigen::{eigenvalues, field_roots, normalize_semisimple, simultaneous_eigenbasis, EigenBlock, Normalized};
pub use unipoly::UniPoly;

use crate::arith::{Coeff, Rat};
use crate::poly::{Poly, RingRef};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrices are not simultaneously diagonalizable")]
    NotSimultaneouslyDiagonalizable,
    #[error("eigenvalues do not lie in Q or the configured cyclotomic field")]
    EigenvalueFieldTooLarge,
    #[error("dimension mismatch")]
    DimMismatch,
}

/// Dense matrix over an exact field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F: Coeff> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Coeff> std::fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<F: Coeff> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: Vec<F>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<F> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a.mul(&o[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self[(i, j)].mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(col * n + j, pivot * n + j);
                    inv.entries.swap(col * n + j, pivot * n + j);
                }
            }
            let p = a[(col, col)].clone();
            let pinv = p.inv()?;
            for j in 0..n {
                a[(col, j)] = a[(col, j)].mul(&pinv);
                inv[(col, j)] = inv[(col, j)].mul(&pinv);
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let ta = a[(col, j)].mul(&f);
                    a[(i, j)] = a[(i, j)].sub(&ta);
                    let ti = inv[(col, j)].mul(&f);
                    inv[(i, j)] = inv[(i, j)].sub(&ti);
                }
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&i| !a[(i, col)].is_zero()) else {
                return F::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(col * n + j, pivot * n + j);
                }
                det = det.neg();
            }
            let p = a[(col, col)].clone();
            det = det.mul(&p);
            let pinv = p.inv().expect("nonzero pivot");
            for i in col + 1..n {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].mul(&pinv);
                for j in col..n {
                    let t = a[(col, j)].mul(&f);
                    a[(i, j)] = a[(i, j)].sub(&t);
                }
            }
        }
        det
    }

    pub fn pow_i(&self, e: i64) -> Result<Self, MatError> {
        assert!(self.is_square());
        let base = if e < 0 {
            self.inverse().ok_or(MatError::Singular)?
        } else {
            self.clone()
        };
        let mut acc = Self::identity(self.rows);
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        let mut t = F::zero();
        for i in 0..self.rows {
            t = t.add(&self[(i, i)]);
        }
        t
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.mul(o) == o.mul(self)
    }

    pub fn map<G: Coeff>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Kernel basis as column vectors (each normalized with leading one).
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut pivots: Vec<(usize, usize)> = vec![];
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    a.entries.swap(rank * cols + j, p * cols + j);
                }
            }
            let inv = a[(rank, col)].inv().expect("pivot");
            for j in 0..cols {
                a[(rank, j)] = a[(rank, j)].mul(&inv);
            }
            for i in 0..rows {
                if i != rank && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    for j in 0..cols {
                        let t = a[(rank, j)].mul(&f);
                        a[(i, j)] = a[(i, j)].sub(&t);
                    }
                }
            }
            pivots.push((rank, col));
            rank += 1;
            if rank == rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = vec![];
        for free in 0..cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for &(r, c) in &pivots {
                v[c] = a[(r, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves self * x = b exactly; `None` when inconsistent (matrix need
    /// not be square; returns one solution).
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(self.rows, b.len());
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        let mut pivots: Vec<(usize, usize)> = vec![];
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    a.entries.swap(rank * cols + j, p * cols + j);
                }
                rhs.swap(rank, p);
            }
            let inv = a[(rank, col)].inv()?;
            for j in 0..cols {
                a[(rank, j)] = a[(rank, j)].mul(&inv);
            }
            rhs[rank] = rhs[rank].mul(&inv);
            for i in 0..rows {
                if i != rank && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    for j in 0..cols {
                        let t = a[(rank, j)].mul(&f);
                        a[(i, j)] = a[(i, j)].sub(&t);
                    }
                    let t = rhs[rank].mul(&f);
                    rhs[i] = rhs[i].sub(&t);
                }
            }
            pivots.push((rank, col));
            rank += 1;
            if rank == rows {
                break;
            }
        }
        // consistency
        for i in rank..rows {
            if !rhs[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![F::zero(); cols];
        for &(r, c) in &pivots {
            x[c] = rhs[r].clone();
        }
        Some(x)
    }
}

impl<F: Coeff> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.entries[i * self.cols + j]
    }
}

impl<F: Coeff> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.entries[i * self.cols + j]
    }
}

/// Characteristic polynomial by the Faddeev-LeVerrier recurrence (exact in
/// characteristic zero), monic, constant term first.
pub fn charpoly<F: Coeff>(m: &Mat<F>) -> UniPoly<F> {
    assert!(m.is_square());
    let n = m.nrows();
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut acc = Mat::identity(n);
    for k in 1..=n {
        acc = m.mul(&acc);
        let c = acc
            .trace()
            .mul(&F::from_rat(&Rat::new(num::bigint::BigInt::from(-1), num::bigint::BigInt::from(k as i64))));
        coeffs[n - k] = c.clone();
        for i in 0..n {
            acc[(i, i)] = acc[(i, i)].add(&c);
        }
    }
    UniPoly::new(coeffs)
}

/// Monic minimal polynomial, found as the first linear dependency among the
/// flattened powers Id, M, M^2, ...
pub fn minpoly<F: Coeff>(m: &Mat<F>) -> UniPoly<F> {
    assert!(m.is_square());
    let n = m.nrows();
    let mut powers: Vec<Mat<F>> = vec![Mat::identity(n)];
    for k in 1..=n {
        let next = powers.last().unwrap().mul(m);
        powers.push(next);
        // solve sum_{i<k+1} c_i P_i = 0 with c_k = 1
        let cols = k;
        let mut a = Mat::<F>::zeros(n * n, cols);
        let mut b = vec![F::zero(); n * n];
        for (idx, p) in powers.iter().take(k).enumerate() {
            for i in 0..n {
                for j in 0..n {
                    a[(i * n + j, idx)] = p[(i, j)].clone();
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                b[i * n + j] = powers[k][(i, j)].neg();
            }
        }
        if let Some(x) = a.solve(&b) {
            let mut coeffs = x;
            coeffs.push(F::one());
            return UniPoly::new(coeffs);
        }
    }
    unreachable!("Cayley-Hamilton guarantees a dependency at degree n")
}

/// Semisimple iff the minimal polynomial is squarefree.
pub fn is_semisimple<F: Coeff>(m: &Mat<F>) -> bool {
    let p = minpoly(m);
    p.gcd(&p.derivative()).degree() == 0
}

/// Unipotent iff (M - Id)^d vanishes.
pub fn is_unipotent<F: Coeff>(m: &Mat<F>) -> bool {
    let n = m.nrows();
    let nilp = m.sub(&Mat::identity(n));
    nilp.pow_i(n as i64).map(|p| p.is_zero()).unwrap_or(false)
}

pub fn is_nilpotent<F: Coeff>(m: &Mat<F>) -> bool {
    m.pow_i(m.nrows() as i64).map(|p| p.is_zero()).unwrap_or(false)
}

/// log of a unipotent matrix: the finite sum
/// sum_{k=1}^{d-1} (-1)^{k+1} (U - Id)^k / k. Exact; inverse of `nil_exp`.
pub fn nil_log<F: Coeff>(u: &Mat<F>) -> Result<Mat<F>, MatError> {
    if !is_unipotent(u) {
        return Err(MatError::NotUnipotent);
    }
    let n = u.nrows();
    let a = u.sub(&Mat::identity(n));
    let mut acc = Mat::zeros(n, n);
    let mut pow = Mat::identity(n);
    for k in 1..n as i64 {
        pow = pow.mul(&a);
        if pow.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = F::from_rat(&Rat::new(num::bigint::BigInt::from(sign), num::bigint::BigInt::from(k)));
        acc = acc.add(&pow.scale(&c));
    }
    Ok(acc)
}

/// exp of a nilpotent matrix: sum_{k=0}^{d-1} N^k / k!. Exact.
pub fn nil_exp<F: Coeff>(m: &Mat<F>) -> Result<Mat<F>, MatError> {
    if !is_nilpotent(m) {
        return Err(MatError::NotNilpotent);
    }
    let n = m.nrows();
    let mut acc = Mat::identity(n);
    let mut pow = Mat::identity(n);
    let mut fact = num::bigint::BigInt::from(1);
    for k in 1..n as i64 {
        pow = pow.mul(m);
        if pow.is_zero() {
            break;
        }
        fact *= k;
        let c = F::from_rat(&Rat::new(num::bigint::BigInt::from(1), fact.clone()));
        acc = acc.add(&pow.scale(&c));
    }
    Ok(acc)
}

/// The one-parameter subgroup through a unipotent matrix: exp(t log U) as a
/// matrix of polynomials in the single variable of `t_ring`. Specializing
/// t = 0 gives Id and t = 1 gives U.
pub fn unipotent_one_param<F: Coeff>(
    u: &Mat<F>,
    t_ring: &RingRef,
    t_index: usize,
) -> Result<Vec<Vec<Poly<F>>>, MatError> {
    let n = u.nrows();
    let log = nil_log(u)?;
    // powers of log with rational factors t^k/k!
    let mut out: Vec<Vec<Poly<F>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Poly::one(t_ring)
                    } else {
                        Poly::zero(t_ring)
                    }
                })
                .collect()
        })
        .collect();
    let t = Poly::<F>::var(t_ring, t_index);
    let mut pow = Mat::identity(n);
    let mut fact = num::bigint::BigInt::from(1);
    let mut tk = Poly::one(t_ring);
    for k in 1..n as i64 {
        pow = pow.mul(&log);
        if pow.is_zero() {
            break;
        }
        fact *= k;
        tk = tk.mul(&t);
        let c = F::from_rat(&Rat::new(num::bigint::BigInt::from(1), fact.clone()));
        for i in 0..n {
            for j in 0..n {
                let e = pow[(i, j)].mul(&c);
                if !e.is_zero() {
                    let term = tk.scale(&e);
                    out[i][j] = out[i][j].add(&term);
                }
            }
        }
    }
    Ok(out)
}

/// Jordan-Chevalley decomposition M = M_s * M_u by Newton iteration on the
/// squarefree part of the characteristic polynomial; exact over the base
/// field, no eigenvalues needed.
pub fn jordan_chevalley<F: Coeff>(m: &Mat<F>) -> Result<(Mat<F>, Mat<F>), MatError> {
    assert!(m.is_square());
    let n = m.nrows();
    if m.det().is_zero() {
        return Err(MatError::Singular);
    }
    let p = charpoly(m);
    let q = p.squarefree_part();
    let qd = q.derivative();
    let mut x = m.clone();
    // quadratic convergence: nilpotency order <= n
    let mut steps = 0usize;
    loop {
        let qx = q.eval_mat(&x);
        if qx.is_zero() {
            break;
        }
        let qdx = qd.eval_mat(&x);
        let inv = qdx.inverse().ok_or(MatError::EigenvalueFieldTooLarge)?;
        x = x.sub(&inv.mul(&qx));
        steps += 1;
        if steps > n + 2 {
            return Err(MatError::EigenvalueFieldTooLarge);
        }
    }
    let m_s = x;
    let m_u = m_s.inverse().ok_or(MatError::Singular)?.mul(m);
    debug_assert!(m_s.mul(&m_u) == *m);
    Ok((m_s, m_u))
}

/// The 0/1 column-selector of Lemma-style normal forms: columns are
/// distinct standard unit vectors, so T^T T = Id_k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SelectorMatrix {
    dim: usize,
    cols: Vec<usize>,
}

impl SelectorMatrix {
    pub fn new(dim: usize, cols: Vec<usize>) -> Self {
        let mut sorted = cols.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), cols.len(), "selector columns must be distinct");
        assert!(cols.iter().all(|&c| c < dim));
        SelectorMatrix { dim, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.cols.len()
    }

    pub fn selected(&self) -> &[usize] {
        &self.cols
    }

    pub fn to_mat<F: Coeff>(&self) -> Mat<F> {
        let mut m = Mat::zeros(self.dim, self.cols.len());
        for (j, &i) in self.cols.iter().enumerate() {
            m[(i, j)] = F::one();
        }
        m
    }

    /// T * 1: the 0/1 vector with ones at the selected coordinates.
    pub fn times_ones<F: Coeff>(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        for &i in &self.cols {
            v[i] = F::one();
        }
        v
    }
}

#[cfg(test)]
mod tests;
