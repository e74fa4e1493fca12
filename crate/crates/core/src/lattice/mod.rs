//! Integer-lattice toolkit: the lattice <-> diagonal-group correspondence,
//! elementary-divisor tests, torsion-coset characters, and construction of
//! explicit diagonal topological generators.

mod intmat;
mod relations;

pub use intmat::{hnf, snf, IntMat, SnfResult};
pub use relations::{integer_kernel, relation_lattice_of_tuples};

use crate::arith::{Coeff, CycloNum};
use crate::poly::{Ideal, Monomial, Poly, RingRef};
use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice torsion needs more than {0} generators")]
    NotSGenerated(usize),
    #[error("torsion quotient too large to enumerate")]
    TorsionTooLarge,
}

/// A sublattice of Z^d, stored as its canonical row-style Hermite normal
/// form with zero rows dropped; equality of lattices is data equality.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn from_rows(ambient: usize, rows: Vec<Vec<BigInt>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ambient));
        let nonzero: Vec<Vec<BigInt>> = rows
            .into_iter()
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .collect();
        if nonzero.is_empty() {
            return Lattice { ambient, basis: vec![] };
        }
        let (h, _) = hnf(&IntMat::from_rows(nonzero));
        let basis = h
            .rows_vec()
            .into_iter()
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .collect();
        Lattice { ambient, basis }
    }

    pub fn from_i64_rows(ambient: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            ambient,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: vec![] }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_rows(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_mat(&self) -> IntMat {
        if self.basis.is_empty() {
            IntMat::zeros(0, self.ambient)
        } else {
            IntMat::from_rows(self.basis.clone())
        }
    }

    pub fn snf(&self) -> SnfResult {
        snf(&self.basis_mat())
    }

    /// The nonzero diagonal of the Smith form: d_1 | d_2 | ... | d_r.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        if self.basis.is_empty() {
            return vec![];
        }
        self.snf().divisors
    }

    /// True iff at most `s` elementary divisors differ from one, i.e. the
    /// diagonal group cut out by the lattice is topologically s-generated.
    pub fn is_s_generated(&self, s: usize) -> bool {
        self.elementary_divisors()
            .iter()
            .filter(|d| !d.is_one())
            .count()
            <= s
    }

    /// Minimal number of topological generators: the count of nontrivial
    /// elementary divisors, or one if a positive-dimensional free part needs
    /// a generator the torsion does not already supply.
    pub fn min_generators(&self) -> usize {
        let nontrivial = self
            .elementary_divisors()
            .iter()
            .filter(|d| !d.is_one())
            .count();
        if nontrivial == 0 && self.rank() < self.ambient {
            1
        } else {
            nontrivial
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Expresses `v` as an integer combination of basis rows, if possible.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let mut rem: Vec<BigInt> = v.to_vec();
        let mut coords = vec![BigInt::zero(); self.basis.len()];
        for (i, row) in self.basis.iter().enumerate() {
            let pivot_col = match row.iter().position(|e| !e.is_zero()) {
                Some(c) => c,
                None => continue,
            };
            if rem[pivot_col].is_zero() {
                continue;
            }
            let (q, r) = rem[pivot_col].div_rem(&row[pivot_col]);
            if !r.is_zero() {
                return None;
            }
            for (j, e) in row.iter().enumerate() {
                rem[j] -= &q * e;
            }
            coords[i] = q;
        }
        rem.iter().all(|e| e.is_zero()).then_some(coords)
    }

    /// The saturation (Q*Lambda) ∩ Z^d; its quotient by the lattice is the
    /// torsion of Z^d/Lambda.
    pub fn saturation(&self) -> Lattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        let r = self.snf();
        let rows = (0..self.rank()).map(|i| r.v_inv.row(i).to_vec()).collect();
        Lattice::from_rows(self.ambient, rows)
    }
}

/// A character of the finite quotient Lambda_sat/Lambda, presented by its
/// values (roots of unity) on the Smith basis of the saturation. Values are
/// multiplicative on the quotient and trivial on the lattice itself.
#[derive(Clone, Debug)]
pub struct TorsionCharacter {
    /// basis of the saturation, one row per w_i
    sat_basis: Vec<Vec<BigInt>>,
    /// elementary divisor attached to each w_i
    divisors: Vec<u32>,
    /// the character sends w_i to zeta_{d_i}^{exps_i}
    exps: Vec<u32>,
    sat: Lattice,
}

impl TorsionCharacter {
    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn divisors(&self) -> &[u32] {
        &self.divisors
    }

    pub fn sat_basis(&self) -> &[Vec<BigInt>] {
        &self.sat_basis
    }

    /// Character value on a vector of the saturation.
    pub fn value_on(&self, v: &[BigInt]) -> Option<CycloNum> {
        let coords = self.sat.coords_of(v)?;
        let q = self.conductor();
        let mut total: i64 = 0;
        for ((m, &d), &e) in coords.iter().zip(&self.divisors).zip(&self.exps) {
            if d == 1 {
                continue;
            }
            let m = (m % BigInt::from(d)).to_i64()?;
            let step = (q / d) as i64;
            total = (total + m * e as i64 * step).rem_euclid(q as i64);
        }
        Some(CycloNum::root(q, total))
    }

    /// Least common multiple of the divisors: the conductor of all values.
    pub fn conductor(&self) -> u32 {
        self.divisors.iter().fold(1u32, |a, &d| a.lcm(&d))
    }
}

/// One character per element of Lambda_sat/Lambda; the count is the product
/// of the elementary divisors. Each character marks one torsion coset of
/// the diagonal group H_Lambda.
pub fn torsion_characters(lat: &Lattice) -> Result<Vec<TorsionCharacter>, LatticeError> {
    let r = lat.rank();
    if r == 0 {
        return Ok(vec![TorsionCharacter {
            sat_basis: vec![],
            divisors: vec![],
            exps: vec![],
            sat: lat.clone(),
        }]);
    }
    let data = lat.snf();
    let sat_basis: Vec<Vec<BigInt>> = (0..r).map(|i| data.v_inv.row(i).to_vec()).collect();
    let divisors: Vec<u32> = data
        .divisors
        .iter()
        .map(|d| d.to_u32().ok_or(LatticeError::TorsionTooLarge))
        .collect::<Result<_, _>>()?;
    let count: u64 = divisors.iter().map(|&d| d as u64).product();
    if count > 4096 {
        return Err(LatticeError::TorsionTooLarge);
    }
    let sat = Lattice {
        ambient: lat.ambient,
        basis: sat_basis.clone(),
    };
    let mut out = Vec::with_capacity(count as usize);
    let mut exps = vec![0u32; r];
    loop {
        out.push(TorsionCharacter {
            sat_basis: sat_basis.clone(),
            divisors: divisors.clone(),
            exps: exps.clone(),
            sat: sat.clone(),
        });
        // odometer over prod Z/d_i
        let mut i = 0;
        loop {
            if i == r {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < divisors[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Builds `s` diagonal tuples in Q(zeta_q)^d that topologically generate
/// H_Lambda: torsion slots receive primitive roots of unity, free slots a
/// fixed ascending sequence of primes, so outputs are deterministic and the
/// joint relation lattice is exactly `lat`.
pub fn generators_of_h(lat: &Lattice, s: usize) -> Result<Vec<Vec<CycloNum>>, LatticeError> {
    assert!(s >= 1);
    if !lat.is_s_generated(s) {
        return Err(LatticeError::NotSGenerated(s));
    }
    let d = lat.ambient();
    let r = lat.rank();
    let data = if r > 0 { Some(lat.snf()) } else { None };
    let divisors: Vec<u32> = match &data {
        None => vec![],
        Some(res) => res
            .divisors
            .iter()
            .map(|x| x.to_u32().ok_or(LatticeError::TorsionTooLarge))
            .collect::<Result<_, _>>()?,
    };
    let nontrivial: Vec<usize> = (0..r).filter(|&i| divisors[i] != 1).collect();
    let q = nontrivial.iter().fold(1u32, |a, &i| a.lcm(&divisors[i]));

    const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    let mut prime_idx = 0usize;
    let mut next_prime = || {
        let p = PRIMES
            .get(prime_idx)
            .copied()
            .expect("prime pool exhausted: ambient dimension too large");
        prime_idx += 1;
        p
    };

    // values h[i][j] in the Smith coordinate system: generator i on basis w_j
    let mut h_vals = vec![vec![CycloNum::one(); d]; s];
    for (gen_idx, &slot) in nontrivial.iter().enumerate() {
        h_vals[gen_idx][slot] = CycloNum::root(q, (q / divisors[slot]) as i64);
    }
    for h in h_vals.iter_mut() {
        for slot in h.iter_mut().take(d).skip(r) {
            *slot = CycloNum::from_rational(crate::arith::rat_i(next_prime()));
        }
    }

    // transform back: g_j = prod_k h_k^{V[j][k]}; with no rows, V = Id
    let mut out = Vec::with_capacity(s);
    for h in &h_vals {
        let mut g = Vec::with_capacity(d);
        for j in 0..d {
            let mut val = CycloNum::one();
            for (k, hk) in h.iter().enumerate() {
                let e = match &data {
                    Some(res) => res.v[(j, k)].to_i64().ok_or(LatticeError::TorsionTooLarge)?,
                    None => i64::from(j == k),
                };
                if e != 0 {
                    let p = hk.pow_i(e).ok_or(LatticeError::TorsionTooLarge)?;
                    val = val.checked_mul(&p).expect("same conductor");
                }
            }
            g.push(val);
        }
        out.push(g);
    }
    Ok(out)
}

/// The lattice generated by all exponent-vector differences within each
/// generator (the standard recovery of Lambda from defining equations).
pub fn lattice_from_polys<F: Coeff>(gens: &[Poly<F>]) -> Lattice {
    let ambient = gens
        .first()
        .map(|g| g.ring().arity())
        .expect("need at least one polynomial");
    let mut rows: Vec<Vec<BigInt>> = vec![];
    for g in gens {
        let exps: Vec<&Monomial> = g.terms().map(|(m, _)| m).collect();
        if let Some((first, rest)) = exps.split_first() {
            for m in rest {
                rows.push(
                    m.0.iter()
                        .zip(&first.0)
                        .map(|(a, b)| BigInt::from(*a as i64 - *b as i64))
                        .collect(),
                );
            }
        }
    }
    Lattice::from_rows(ambient, rows)
}

/// The pure binomial x^{v+} - x^{v-} attached to an integer vector.
pub fn binomial_of_vector<F: Coeff>(ring: &RingRef, v: &[BigInt]) -> Poly<F> {
    let n = ring.arity();
    assert_eq!(v.len(), n);
    let mut plus = vec![0u32; n];
    let mut minus = vec![0u32; n];
    for (i, e) in v.iter().enumerate() {
        if e.is_positive() {
            plus[i] = e.to_u32().expect("exponent fits");
        } else if e.is_negative() {
            minus[i] = (-e).to_u32().expect("exponent fits");
        }
    }
    let mut p = Poly::zero(ring);
    p.add_term(Monomial(plus), F::one());
    p.add_term(Monomial(minus), F::one().neg());
    p
}

/// The pure binomial ideal of the lattice: one binomial per Hermite basis
/// row. Its zero set in the torus equals H_Lambda (the full lattice ideal
/// is its saturation by the product of the variables).
pub fn binomial_ideal_of<F: Coeff>(lat: &Lattice, ring: &RingRef) -> Ideal<F> {
    assert_eq!(ring.arity(), lat.ambient());
    let gens = lat
        .basis_rows()
        .iter()
        .map(|v| binomial_of_vector(ring, v))
        .collect();
    Ideal::new(ring.clone(), gens)
}

/// Exhaustively enumerates the distinct lattices generated by up to `k`
/// vectors with entries bounded by `b` in absolute value, in a canonical
/// order (breadth-first over generator count). Hard-capped at k*b <= 6;
/// only the s-generated ones are returned.
pub fn enumerate_lattices_exhaustive(k: usize, b: i64, s: usize) -> Vec<Lattice> {
    assert!(k >= 1 && b >= 1);
    assert!(k as i64 * b <= 6, "exhaustive enumeration capped at k*b <= 6");
    // candidate vectors, canonical sign (first nonzero entry positive)
    let mut vectors: Vec<Vec<BigInt>> = vec![];
    let mut cur = vec![-b; k];
    'outer: loop {
        if cur.iter().any(|&e| e != 0) {
            let first = cur.iter().find(|&&e| e != 0).copied().unwrap();
            if first > 0 {
                vectors.push(cur.iter().map(|&e| BigInt::from(e)).collect());
            }
        }
        for i in (0..k).rev() {
            if cur[i] < b {
                cur[i] += 1;
                continue 'outer;
            }
            cur[i] = -b;
        }
        break;
    }
    vectors.sort();

    let mut seen: BTreeSet<Lattice> = BTreeSet::new();
    let mut order: Vec<Lattice> = vec![];
    let zero = Lattice::zero(k);
    seen.insert(zero.clone());
    order.push(zero.clone());
    let mut frontier = vec![zero];
    for _level in 0..k {
        let mut next = vec![];
        for lat in &frontier {
            for v in &vectors {
                let mut rows = lat.basis_rows().to_vec();
                rows.push(v.clone());
                let ext = Lattice::from_rows(k, rows);
                if seen.insert(ext.clone()) {
                    order.push(ext.clone());
                    next.push(ext);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    order.into_iter().filter(|l| l.is_s_generated(s)).collect()
}

/// Deterministic candidate lattices from seed vectors: all sublattices
/// generated by subsets of the (sign-canonicalized, deduplicated) seeds of
/// size at most `max_subset`, in first-seen order, filtered to s-generated.
pub fn lattices_from_seeds(
    ambient: usize,
    seeds: &[Vec<BigInt>],
    max_subset: usize,
    s: usize,
) -> Vec<Lattice> {
    let mut pool: Vec<Vec<BigInt>> = vec![];
    let mut seen_vec: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for v in seeds {
        if v.iter().all(|e| e.is_zero()) {
            continue;
        }
        let mut w = v.clone();
        if w.iter().find(|e| !e.is_zero()).map(|e| e.is_negative()) == Some(true) {
            for e in &mut w {
                *e = -e.clone();
            }
        }
        if seen_vec.insert(w.clone()) {
            pool.push(w);
        }
    }
    let n = pool.len();
    let max_subset = max_subset.min(n);
    let mut out: Vec<Lattice> = vec![];
    let mut seen: BTreeSet<Lattice> = BTreeSet::new();
    let push = |rows: Vec<Vec<BigInt>>, out: &mut Vec<Lattice>, seen: &mut BTreeSet<Lattice>| {
        let lat = Lattice::from_rows(ambient, rows);
        if lat.is_s_generated(s) && seen.insert(lat.clone()) {
            out.push(lat);
        }
    };
    for size in 1..=max_subset {
        for idx in combinations(n, size) {
            push(idx.iter().map(|&i| pool[i].clone()).collect(), &mut out, &mut seen);
        }
    }
    if n > max_subset {
        push(pool.clone(), &mut out, &mut seen);
    }
    out
}

/// All size-`k` index combinations of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        let mut moved = false;
        while i > 0 {
            i -= 1;
            if idx[i] + (k - i) <= n - 1 {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            return out;
        }
    }
}

#[cfg(test)]
mod tests;
