//! Dense univariate polynomials over a coefficient field: just enough for
//! minimal polynomials, squarefree parts, and matrix evaluation.

use super::Mat;
use crate::arith::Coeff;

/// Coefficients stored constant-first; no trailing zeros; zero is `[]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<F: Coeff> {
    coeffs: Vec<F>,
}

impl<F: Coeff> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map(F::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("field");
        UniPoly::new(self.coeffs.iter().map(|c| c.mul(&inv)).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&F::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(out)
    }

    /// Quotient and remainder; divisor must be nonzero.
    pub fn div_rem(&self, den: &Self) -> (Self, Self) {
        assert!(!den.is_zero());
        let mut rem = self.coeffs.clone();
        if rem.len() < den.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![F::zero(); rem.len() - den.coeffs.len() + 1];
        let lead_inv = den.leading().inv().expect("field");
        for k in (0..quo.len()).rev() {
            let c = rem[k + den.coeffs.len() - 1].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quo[k] = c.clone();
            for (i, d) in den.coeffs.iter().enumerate() {
                let t = c.mul(d);
                rem[k + i] = rem[k + i].sub(&t);
            }
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// p / gcd(p, p'): the radical of the polynomial, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &Mat<F>) -> Mat<F> {
        let n = m.nrows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                acc[(i, i)] = acc[(i, i)].add(c);
            }
        }
        acc
    }

    /// Divides out a root: self / (x - r); remainder must vanish.
    pub fn deflate(&self, r: &F) -> Option<Self> {
        let den = UniPoly::new(vec![r.neg(), F::one()]);
        let (q, rem) = self.div_rem(&den);
        rem.is_zero().then_some(q)
    }
}
