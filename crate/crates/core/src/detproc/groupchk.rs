//! Necessary group checks in the doubled ring: closure of the variety under
//! matrix multiplication (which entails inverses for Zariski-closed sets of
//! invertible matrices) and commutativity, both via radical membership
//! modulo the invertibility relation det * y = 1.

use super::instance::Shape;
use super::DetError;
use crate::arith::Coeff;
use crate::poly::{Budget, Ideal, Poly, Ring, RingRef};

/// Symbolic determinant of a d x d matrix of ring variables addressed by
/// `idx(i, j)`, by Leibniz expansion (d stays small here).
pub(crate) fn det_poly<F: Coeff>(
    ring: &RingRef,
    d: usize,
    idx: &dyn Fn(usize, usize) -> usize,
) -> Poly<F> {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, bool)>) {
            if rest.is_empty() {
                let inv = cur
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| cur[i + 1..].iter().filter(|&&b| b < a).count())
                    .sum::<usize>();
                out.push((cur.clone(), inv % 2 == 1));
                return;
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                cur.push(v);
                rec(rest, cur, out);
                cur.pop();
                rest.insert(i, v);
            }
        }
        let mut out = vec![];
        rec(&mut (0..n).collect(), &mut vec![], &mut out);
        out
    }
    let mut det = Poly::zero(ring);
    for (perm, odd) in perms(d) {
        let mut term = Poly::constant(ring, if odd { F::one().neg() } else { F::one() });
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&Poly::var(ring, idx(i, j)));
        }
        det = det.add(&term);
    }
    det
}

/// The doubled-ring setup shared by both checks: variables X, Y, and two
/// invertibility witnesses; the base ideal I(X) + I(Y) + det relations.
struct Doubled<F: Coeff> {
    ring: RingRef,
    base: Ideal<F>,
    /// product entries (XY)_{ij} or the pointwise product for diagonals
    product: Vec<Poly<F>>,
    /// commutator entries XY - YX (empty for diagonal shape)
    commutator: Vec<Poly<F>>,
    n: usize,
}

fn doubled<F: Coeff>(gens: &[Poly<F>], shape: Shape) -> Result<Doubled<F>, DetError> {
    let src_ring = gens
        .first()
        .ok_or_else(|| DetError::Input("empty ideal".into()))?
        .ring()
        .clone();
    let n = src_ring.arity();
    let mut vars: Vec<String> = src_ring.vars().to_vec();
    vars.extend(src_ring.vars().iter().map(|v| format!("{v}__y")));
    vars.push("inv__x".to_string());
    vars.push("inv__y".to_string());
    let ring = Ring::new(vars);
    let mut base_gens: Vec<Poly<F>> = vec![];
    for g in gens {
        base_gens.push(g.transfer(&ring)?);
    }
    for g in gens {
        // I(Y): same polynomials in the y copies
        let images: Vec<Poly<F>> = (0..n).map(|i| Poly::var(&ring, n + i)).collect();
        base_gens.push(g.substitute(&images));
    }
    let (product, commutator, det_x, det_y) = match shape {
        Shape::Matrix { d } => {
            let x = |i: usize, j: usize| i * d + j;
            let y = |i: usize, j: usize| n + i * d + j;
            let mut product = vec![];
            let mut commutator = vec![];
            for i in 0..d {
                for j in 0..d {
                    let mut xy = Poly::zero(&ring);
                    let mut yx = Poly::zero(&ring);
                    for k in 0..d {
                        xy = xy.add(&Poly::var(&ring, x(i, k)).mul(&Poly::var(&ring, y(k, j))));
                        yx = yx.add(&Poly::var(&ring, y(i, k)).mul(&Poly::var(&ring, x(k, j))));
                    }
                    commutator.push(xy.sub(&yx));
                    product.push(xy);
                }
            }
            let dx = det_poly::<F>(&ring, d, &|i, j| x(i, j));
            let dy = det_poly::<F>(&ring, d, &|i, j| y(i, j));
            (product, commutator, dx, dy)
        }
        Shape::Diagonal { d } => {
            let mut product = vec![];
            for i in 0..d {
                product.push(Poly::var(&ring, i).mul(&Poly::var(&ring, n + i)));
            }
            let mut dx = Poly::one(&ring);
            let mut dy = Poly::one(&ring);
            for i in 0..d {
                dx = dx.mul(&Poly::var(&ring, i));
                dy = dy.mul(&Poly::var(&ring, n + i));
            }
            (product, vec![], dx, dy)
        }
        Shape::Point { .. } => {
            return Err(DetError::Input("group checks need a matrix or diagonal shape".into()))
        }
    };
    let ix = Poly::var_named(&ring, "inv__x");
    let iy = Poly::var_named(&ring, "inv__y");
    base_gens.push(det_x.mul(&ix).sub(&Poly::one(&ring)));
    base_gens.push(det_y.mul(&iy).sub(&Poly::one(&ring)));
    let base = Ideal::new(ring.clone(), base_gens);
    Ok(Doubled { ring, base, product, commutator, n })
}

/// True iff the (invertible locus of the) variety is closed under matrix
/// multiplication: F(XY) lies in the radical of I(X) + I(Y) for every
/// generator F.
pub fn is_alg_group<F: Coeff>(
    gens: &[Poly<F>],
    shape: Shape,
    budget: &Budget,
) -> Result<bool, DetError> {
    let dd = doubled(gens, shape)?;
    // one image per source variable: x_i -> (XY)_i over the doubled ring
    let images: Vec<Poly<F>> = dd.product.clone();
    debug_assert_eq!(images.len(), dd.n);
    for g in gens {
        let fxy = g.substitute(&images);
        if !dd.base.radical_member(&fxy, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every entry of XY - YX lies in the radical of I(X) + I(Y).
/// Diagonal-shape groups are commutative by construction.
pub fn is_commutative_group<F: Coeff>(
    gens: &[Poly<F>],
    shape: Shape,
    budget: &Budget,
) -> Result<bool, DetError> {
    let dd = doubled(gens, shape)?;
    for c in &dd.commutator {
        if !dd.base.radical_member(c, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}
