//! Eigenvalue extraction over Q and Q(zeta_q), and the simultaneous
//! diagonalization that normalizes a commuting semisimple family together
//! with a base point.
//!
//! Eigenvalues are found by factoring the characteristic polynomial with a
//! rational-root search extended by cyclotomic candidates c * zeta_q^e;
//! anything outside that class is reported as EigenvalueFieldTooLarge
//! rather than approximated.

use super::{charpoly, Mat, MatError, SelectorMatrix, UniPoly};
use crate::arith::{Coeff, Rat};
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Divisors of |n| in ascending order; `None` when n is too large to factor
/// by trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![]);
    }
    let mut rest = n.clone();
    let mut factors: Vec<(BigInt, u32)> = vec![];
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= rest {
        if p > limit {
            return None;
        }
        if (&rest % &p).is_zero() {
            let mut k = 0;
            while (&rest % &p).is_zero() {
                rest /= &p;
                k += 1;
            }
            factors.push((p.clone(), k));
        }
        p += 1;
    }
    if rest > BigInt::one() {
        if rest > limit {
            return None;
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, k) in factors {
        let mut next = vec![];
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=k {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Some(divs)
}

/// Candidate roots of a polynomial over F in the field Q(zeta_q):
/// +-(p/q0) * zeta_q^e with p, q0 ranging over divisors of the integerized
/// constant and leading coefficients.
fn candidate_roots<F: Coeff>(p: &UniPoly<F>, conductor: u32) -> Result<Vec<F>, MatError> {
    // integerize rational data of the lowest nonzero and leading coefficients
    let coeffs = p.coeffs();
    let lead = coeffs.last().expect("nonzero");
    let low = coeffs.iter().find(|c| !c.is_zero()).expect("nonzero");
    let rat_parts = |c: &F| -> Option<Rat> { c.to_rat() };
    let (Some(lead_r), Some(low_r)) = (rat_parts(lead), rat_parts(low)) else {
        // cyclotomic coefficients: fall back to a small fixed candidate grid
        let mut out = vec![];
        for num in [1i64, 2, 3, 4, 5, 8, 16, 25] {
            for den in [1i64, 2, 4, 5] {
                let c = F::from_rat(&Rat::new(BigInt::from(num), BigInt::from(den)));
                for e in 0..conductor.max(1) {
                    if let Some(z) = F::root_of_unity(conductor.max(1), e as i64) {
                        out.push(c.mul(&z));
                        out.push(c.neg().mul(&z));
                    }
                }
            }
        }
        return Ok(out);
    };
    // candidates num/den with num | numer(low)*denom-scale, den | numer(lead)
    let p_divs = divisors(&(low_r.numer() * lead_r.denom()))
        .ok_or(MatError::EigenvalueFieldTooLarge)?;
    let q_divs = divisors(&(lead_r.numer() * low_r.denom()))
        .ok_or(MatError::EigenvalueFieldTooLarge)?;
    let mut out = vec![];
    for pn in &p_divs {
        for qd in &q_divs {
            if qd.is_zero() {
                continue;
            }
            let base = Rat::new(pn.clone(), qd.clone());
            for sign in [1i64, -1] {
                let c = F::from_rat(&(Rat::from_integer(BigInt::from(sign)) * &base));
                for e in 0..conductor.max(1) {
                    if e == 0 {
                        out.push(c.clone());
                    } else if let Some(z) = F::root_of_unity(conductor, e as i64) {
                        out.push(c.mul(&z));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All roots of a univariate polynomial that lie in Q(zeta_conductor),
/// deduplicated and sorted deterministically. (Roots outside the candidate
/// class are simply not found; use `eigenvalues` when completeness matters.)
pub fn field_roots<F: Coeff>(p: &UniPoly<F>, conductor: u32) -> Vec<F> {
    let mut out: Vec<F> = vec![];
    if p.is_zero() || p.degree() == 0 {
        return out;
    }
    if p.degree() == 1 {
        // a1 x + a0 = 0
        let a0 = p.coeffs()[0].clone();
        let a1 = p.coeffs()[1].clone();
        if let Some(r) = a0.neg().div(&a1) {
            out.push(r);
        }
        return out;
    }
    if p.coeffs().first().map(F::is_zero).unwrap_or(false) {
        out.push(F::zero());
    }
    if let Ok(cands) = candidate_roots(p, conductor) {
        for c in cands {
            if p.eval(&c).is_zero() && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// All eigenvalues (with multiplicity) of a square matrix, sorted by the
/// field's deterministic key. Errors when some eigenvalue lies outside
/// Q(zeta_conductor).
pub fn eigenvalues<F: Coeff>(m: &Mat<F>, conductor: u32) -> Result<Vec<F>, MatError> {
    let mut p = charpoly(m).monic();
    let mut roots: Vec<F> = vec![];
    // strip zero roots first
    while !p.is_zero() && p.coeffs().first().map(F::is_zero).unwrap_or(false) {
        roots.push(F::zero());
        let coeffs = p.coeffs()[1..].to_vec();
        p = UniPoly::new(coeffs);
    }
    while p.degree() > 0 {
        let cands = candidate_roots(&p, conductor)?;
        let mut found = None;
        for c in cands {
            if p.eval(&c).is_zero() {
                found = Some(c);
                break;
            }
        }
        let Some(r) = found else {
            return Err(MatError::EigenvalueFieldTooLarge);
        };
        p = p.deflate(&r).expect("verified root");
        roots.push(r);
    }
    roots.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(roots)
}

/// A common eigenspace block: one eigenvalue per input matrix plus a basis
/// of the joint eigenspace (column vectors, leading entry one).
pub struct EigenBlock<F: Coeff> {
    pub eigen_tuple: Vec<F>,
    pub basis: Vec<Vec<F>>,
}

/// Splits the ambient space into common eigenspaces of a commuting
/// semisimple family by refining along one matrix at a time.
pub fn simultaneous_eigenbasis<F: Coeff>(
    mats: &[Mat<F>],
    conductor: u32,
) -> Result<Vec<EigenBlock<F>>, MatError> {
    let d = mats.first().map(|m| m.nrows()).unwrap_or(0);
    for m in mats {
        if !m.is_square() || m.nrows() != d {
            return Err(MatError::DimMismatch);
        }
    }
    let identity_basis: Vec<Vec<F>> = (0..d)
        .map(|i| {
            let mut v = vec![F::zero(); d];
            v[i] = F::one();
            v
        })
        .collect();
    let mut blocks = vec![EigenBlock { eigen_tuple: vec![], basis: identity_basis }];
    for m in mats {
        let mut next: Vec<EigenBlock<F>> = vec![];
        for block in &blocks {
            let k = block.basis.len();
            // columns of B as a d x k matrix
            let mut bmat = Mat::zeros(d, k);
            for (j, col) in block.basis.iter().enumerate() {
                for i in 0..d {
                    bmat[(i, j)] = col[i].clone();
                }
            }
            // restriction R with M B = B R, solved column by column
            let mut r = Mat::zeros(k, k);
            for j in 0..k {
                let rhs = m.mul_vec(&block.basis[j]);
                let x = bmat
                    .solve(&rhs)
                    .ok_or(MatError::NotSimultaneouslyDiagonalizable)?;
                for i in 0..k {
                    r[(i, j)] = x[i].clone();
                }
            }
            let mut eigs = eigenvalues(&r, conductor)?;
            eigs.dedup();
            let mut covered = 0usize;
            for lam in eigs {
                let mut shifted = r.clone();
                for i in 0..k {
                    shifted[(i, i)] = shifted[(i, i)].sub(&lam);
                }
                let kernel = shifted.kernel();
                if kernel.is_empty() {
                    continue;
                }
                covered += kernel.len();
                let lifted: Vec<Vec<F>> = kernel
                    .iter()
                    .map(|w| {
                        let mut col = vec![F::zero(); d];
                        for (j, c) in w.iter().enumerate() {
                            if !c.is_zero() {
                                for i in 0..d {
                                    col[i] = col[i].add(&block.basis[j][i].mul(c));
                                }
                            }
                        }
                        normalize_col(col)
                    })
                    .collect();
                let mut tuple = block.eigen_tuple.clone();
                tuple.push(lam);
                next.push(EigenBlock { eigen_tuple: tuple, basis: lifted });
            }
            if covered != k {
                return Err(MatError::NotSimultaneouslyDiagonalizable);
            }
        }
        next.sort_by(|a, b| {
            let ka: Vec<Vec<Rat>> = a.eigen_tuple.iter().map(|e| e.sort_key()).collect();
            let kb: Vec<Vec<Rat>> = b.eigen_tuple.iter().map(|e| e.sort_key()).collect();
            ka.cmp(&kb)
        });
        blocks = next;
    }
    Ok(blocks)
}

fn normalize_col<F: Coeff>(mut col: Vec<F>) -> Vec<F> {
    if let Some(first) = col.iter().find(|c| !c.is_zero()) {
        let inv = first.inv().expect("field");
        if !inv.is_one() {
            for c in &mut col {
                *c = c.mul(&inv);
            }
        }
    }
    col
}

/// Data of the normalization P M_i P^{-1} = D_i with P v = T 1.
pub struct Normalized<F: Coeff> {
    pub p: Mat<F>,
    pub p_inv: Mat<F>,
    pub d_list: Vec<Mat<F>>,
    pub selector: SelectorMatrix,
}

/// Simultaneously diagonalizes a commuting semisimple family and rescales
/// so the image of `v` is a 0/1 vector: M_i = P^{-1} D_i P, T^T T = Id,
/// P v = T 1. All identities are exact and re-checked before returning.
pub fn normalize_semisimple<F: Coeff>(
    mats: &[Mat<F>],
    v: &[F],
    conductor: u32,
) -> Result<Normalized<F>, MatError> {
    let d = v.len();
    let blocks = simultaneous_eigenbasis(mats, conductor)?;
    let total: usize = blocks.iter().map(|b| b.basis.len()).sum();
    if total != d {
        return Err(MatError::NotSimultaneouslyDiagonalizable);
    }
    let mut c = Mat::zeros(d, d);
    let mut d_list: Vec<Mat<F>> = (0..mats.len()).map(|_| Mat::zeros(d, d)).collect();
    let mut col = 0usize;
    for block in &blocks {
        for basis_col in &block.basis {
            for i in 0..d {
                c[(i, col)] = basis_col[i].clone();
            }
            for (mi, lam) in block.eigen_tuple.iter().enumerate() {
                d_list[mi][(col, col)] = lam.clone();
            }
            col += 1;
        }
    }
    let p0 = c.inverse().ok_or(MatError::NotSimultaneouslyDiagonalizable)?;
    let w = p0.mul_vec(v);
    let mut scale = Mat::identity(d);
    let mut selected = vec![];
    for (i, wi) in w.iter().enumerate() {
        if !wi.is_zero() {
            scale[(i, i)] = wi.inv().expect("nonzero");
            selected.push(i);
        }
    }
    let p = scale.mul(&p0);
    let p_inv = p.inverse().ok_or(MatError::NotSimultaneouslyDiagonalizable)?;
    let selector = SelectorMatrix::new(d, selected);
    // exact re-checks of the defining identities
    for (m, dm) in mats.iter().zip(&d_list) {
        if p_inv.mul(dm).mul(&p) != *m {
            return Err(MatError::NotSimultaneouslyDiagonalizable);
        }
    }
    let pv = p.mul_vec(v);
    let t1: Vec<F> = selector.times_ones();
    if pv != t1 {
        return Err(MatError::NotSimultaneouslyDiagonalizable);
    }
    Ok(Normalized { p, p_inv, d_list, selector })
}
