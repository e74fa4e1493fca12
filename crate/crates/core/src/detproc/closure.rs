//! Reconstruction of closure ideals from certificate data by elimination:
//! the orbit closure {exp(sum t_i log U_i) P^{-1} T g : g in H_Lambda} and
//! the group closure {P^{-1} Diag(g) exp(sum t_i log U_i) P}. These are the
//! independent objects a YES answer is compared against.

use super::DetError;
use crate::arith::Coeff;
use crate::lattice::{binomial_ideal_of, Lattice};
use crate::matgroup::{nil_log, Mat, SelectorMatrix};
use crate::poly::{Budget, Ideal, Poly, Ring, RingRef};

/// The full (saturated) lattice ideal: all binomials x^{v+} - x^{v-} for v
/// in the lattice, obtained by saturating the basis binomials by the
/// product of the variables.
pub fn lattice_ideal<F: Coeff>(
    lat: &Lattice,
    ring: &RingRef,
    budget: &Budget,
) -> Result<Ideal<F>, DetError> {
    let base = binomial_ideal_of::<F>(lat, ring);
    if base.is_zero_ideal() {
        return Ok(base);
    }
    let mut prod = Poly::<F>::one(ring);
    for i in 0..ring.arity() {
        prod = prod.mul(&Poly::var(ring, i));
    }
    Ok(base.saturate(&prod, budget)?)
}

pub(crate) type PolyMat<F> = Vec<Vec<Poly<F>>>;

pub(crate) fn polymat_from_mat<F: Coeff>(m: &Mat<F>, ring: &RingRef) -> PolyMat<F> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| Poly::constant(ring, m[(i, j)].clone()))
                .collect()
        })
        .collect()
}

pub(crate) fn polymat_mul<F: Coeff>(a: &PolyMat<F>, b: &PolyMat<F>) -> PolyMat<F> {
    let n = a.len();
    let inner = b.len();
    let m = b[0].len();
    let ring = a[0][0].ring().clone();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Poly::zero(&ring);
                    for (k, bk) in b.iter().enumerate().take(inner) {
                        if !a[i][k].is_zero() && !bk[j].is_zero() {
                            acc = acc.add(&a[i][k].mul(&bk[j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// exp(t * N) as a polynomial matrix, N nilpotent, t the ring variable at
/// `t_index`.
pub(crate) fn exp_scaled_nilpotent<F: Coeff>(
    n: &Mat<F>,
    ring: &RingRef,
    t_index: usize,
) -> PolyMat<F> {
    let d = n.nrows();
    let mut out: PolyMat<F> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        Poly::one(ring)
                    } else {
                        Poly::zero(ring)
                    }
                })
                .collect()
        })
        .collect();
    let t = Poly::<F>::var(ring, t_index);
    let mut pow = Mat::identity(d);
    let mut fact = num::bigint::BigInt::from(1);
    let mut tk = Poly::one(ring);
    for k in 1..d as i64 {
        pow = pow.mul(n);
        if pow.is_zero() {
            break;
        }
        fact *= k;
        tk = tk.mul(&t);
        let c = F::from_rat(&crate::arith::Rat::new(
            num::bigint::BigInt::from(1),
            fact.clone(),
        ));
        for i in 0..d {
            for j in 0..d {
                let e = pow[(i, j)].mul(&c);
                if !e.is_zero() {
                    out[i][j] = out[i][j].add(&tk.scale(&e));
                }
            }
        }
    }
    out
}

/// The product exp(t_1 N_1) ... exp(t_s N_s) over the given ring.
pub(crate) fn exp_t_logs<F: Coeff>(
    unipotents: &[Mat<F>],
    ring: &RingRef,
    t_indices: &[usize],
) -> Result<PolyMat<F>, DetError> {
    assert_eq!(unipotents.len(), t_indices.len());
    let d = unipotents
        .first()
        .map(|m| m.nrows())
        .unwrap_or(0);
    let mut acc: Option<PolyMat<F>> = None;
    for (u, &ti) in unipotents.iter().zip(t_indices) {
        let n = nil_log(u)?;
        let e = exp_scaled_nilpotent(&n, ring, ti);
        acc = Some(match acc {
            None => e,
            Some(prev) => polymat_mul(&prev, &e),
        });
    }
    Ok(acc.unwrap_or_else(|| polymat_from_mat(&Mat::identity(d), ring)))
}

/// Ideal of the closure of
/// {exp(sum t_i log U_i) * A * T * g : g in H_Lambda, t in Q^s}
/// inside the point ring; A is typically P^{-1}.
pub fn orbit_closure_ideal<F: Coeff>(
    point_ring: &RingRef,
    unipotents: &[Mat<F>],
    a: &Mat<F>,
    selector: &SelectorMatrix,
    lat: &Lattice,
    budget: &Budget,
) -> Result<Ideal<F>, DetError> {
    let d = point_ring.arity();
    let s = unipotents.len();
    let k = selector.k();
    assert_eq!(lat.ambient(), k, "lattice lives on the selected coordinates");
    let mut vars: Vec<String> = (0..s).map(|i| format!("t__{i}")).collect();
    vars.extend((0..k).map(|j| format!("g__{j}")));
    vars.extend(point_ring.vars().iter().cloned());
    let ring = Ring::new(vars);
    let t_idx: Vec<usize> = (0..s).collect();
    let e = exp_t_logs(unipotents, &ring, &t_idx)?;
    let at = a.mul(&selector.to_mat());
    let ec = polymat_mul(&e, &polymat_from_mat(&at, &ring));
    let mut gens: Vec<Poly<F>> = vec![];
    for i in 0..d {
        let x = Poly::var_named(&ring, &point_ring.vars()[i]);
        let mut w = Poly::zero(&ring);
        for (jj, entry) in ec[i].iter().enumerate() {
            let g = Poly::var(&ring, s + jj);
            w = w.add(&entry.mul(&g));
        }
        gens.push(x.sub(&w));
    }
    // relations of g: the saturated lattice ideal on the g block
    let g_ring = Ring::new((0..k).map(|j| format!("g__{j}")).collect::<Vec<_>>());
    let rel = lattice_ideal::<F>(lat, &g_ring, budget)?;
    for r in rel.gens() {
        gens.push(r.transfer(&ring)?);
    }
    let big = Ideal::new(ring, gens);
    let drop: Vec<usize> = (0..s + k).collect();
    Ok(big.eliminate_into(&drop, point_ring, budget)?)
}

/// Ideal of the closure of
/// {A * Diag(g) * exp(sum t_i log U_i) * B : g in H_Lambda, t in Q^s}
/// inside the matrix ring (d^2 variables, row-major); A, B are typically
/// P^{-1} and P.
pub fn group_closure_ideal<F: Coeff>(
    matrix_ring: &RingRef,
    unipotents: &[Mat<F>],
    a: &Mat<F>,
    b: &Mat<F>,
    lat: &Lattice,
    budget: &Budget,
) -> Result<Ideal<F>, DetError> {
    let d = a.nrows();
    assert_eq!(matrix_ring.arity(), d * d);
    assert_eq!(lat.ambient(), d);
    let s = unipotents.len();
    let mut vars: Vec<String> = (0..s).map(|i| format!("t__{i}")).collect();
    vars.extend((0..d).map(|j| format!("g__{j}")));
    vars.extend(matrix_ring.vars().iter().cloned());
    let ring = Ring::new(vars);
    let t_idx: Vec<usize> = (0..s).collect();
    let e = exp_t_logs(unipotents, &ring, &t_idx)?;
    // Diag(g) as a polynomial matrix
    let diag: PolyMat<F> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        Poly::var(&ring, s + i)
                    } else {
                        Poly::zero(&ring)
                    }
                })
                .collect()
        })
        .collect();
    let w = polymat_mul(
        &polymat_from_mat(a, &ring),
        &polymat_mul(&diag, &polymat_mul(&e, &polymat_from_mat(b, &ring))),
    );
    let mut gens: Vec<Poly<F>> = vec![];
    for i in 0..d {
        for j in 0..d {
            let x = Poly::var_named(&ring, &matrix_ring.vars()[i * d + j]);
            gens.push(x.sub(&w[i][j]));
        }
    }
    let g_ring = Ring::new((0..d).map(|j| format!("g__{j}")).collect::<Vec<_>>());
    let rel = lattice_ideal::<F>(lat, &g_ring, budget)?;
    for r in rel.gens() {
        gens.push(r.transfer(&ring)?);
    }
    let big = Ideal::new(ring, gens);
    let drop: Vec<usize> = (0..s + d).collect();
    Ok(big.eliminate_into(&drop, matrix_ring, budget)?)
}
