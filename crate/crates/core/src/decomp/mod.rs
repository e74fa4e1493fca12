//! Minimal-prime decomposition for the class of ideals the pipeline meets:
//! radical ideals whose components are binomial, i.e. finite unions of
//! torsion cosets of subtori (possibly crossed with forced-zero
//! coordinates). Inputs outside the class are reported, never guessed at.

use crate::arith::Coeff;
use crate::lattice::{binomial_of_vector, hnf, IntMat, Lattice};
use crate::poly::{Budget, Ideal, Monomial, MonomialOrder, Poly, PolyError, RingRef};
use num::bigint::BigInt;
use num::{Integer, Signed, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("ideal is outside the binomial component class: {0}")]
    NotInClass(String),
    #[error("no component passes through the identity")]
    NoIdentityComponent,
    #[error("components need roots of unity of order {0}")]
    NeedsRootsOfUnity(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A minimal-prime decomposition: pairwise incomparable components whose
/// intersection, saturated by the product of the live variables, recovers
/// the (saturated) source ideal.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Coeff> {
    pub components: Vec<Ideal<F>>,
    pub source: Ideal<F>,
}

/// True iff every element of the reduced grevlex basis has at most 2 terms.
pub fn is_binomial_ideal<F: Coeff>(i: &Ideal<F>, budget: &Budget) -> Result<bool, PolyError> {
    let gb = i.groebner(&MonomialOrder::GrevLex, budget)?;
    Ok(gb.iter().all(|p| p.num_terms() <= 2))
}

/// Minimal primes of an ideal in the binomial class. The input should be
/// saturated with respect to the product of its non-forced variables (the
/// Laurent locus); the routine re-saturates defensively, so the
/// decomposition always describes that locus.
pub fn min_primes_binomial_class<F: Coeff>(
    input: &Ideal<F>,
    conductor: u32,
    budget: &Budget,
) -> Result<Decomposition<F>, DecompError> {
    let mut components = split_recursive(input, conductor, budget, 0)?;
    // canonical order: by reduced-basis string form
    let mut keyed: Vec<(Vec<String>, Ideal<F>)> = components
        .drain(..)
        .map(|c| {
            let key = c
                .groebner(&MonomialOrder::GrevLex, budget)
                .map(|gb| gb.iter().map(|p| p.to_string()).collect())
                .unwrap_or_default();
            (key, c)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    // minimality: drop any component strictly containing another
    let mut keep = vec![true; keyed.len()];
    for i in 0..keyed.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..keyed.len() {
            if i == j || !keep[j] {
                continue;
            }
            // if component j is contained in component i (as ideals), then
            // V(i) is inside V(j) and i is not minimal
            let j_in_i = keyed[j]
                .1
                .gens()
                .iter()
                .try_fold(true, |acc, g| keyed[i].1.member(g, budget).map(|m| acc && m))?;
            if j_in_i && keyed[i].0 != keyed[j].0 {
                keep[i] = false;
                break;
            }
        }
    }
    let components = keyed
        .into_iter()
        .zip(keep)
        .filter_map(|((_, c), k)| k.then_some(c))
        .collect();
    Ok(Decomposition { components, source: input.clone() })
}

/// The component whose generators all vanish at the identity matrix point:
/// 1 on torus coordinates, 0 on forced-zero coordinates. First in canonical
/// order when several qualify.
pub fn identity_component<F: Coeff>(d: &Decomposition<F>) -> Result<Ideal<F>, DecompError> {
    for comp in &d.components {
        if vanishes_at_identity(comp) {
            return Ok(comp.clone());
        }
    }
    Err(DecompError::NoIdentityComponent)
}

/// Evaluates generators at the point that is 0 on variables appearing in
/// single-monomial generators and 1 everywhere else.
fn vanishes_at_identity<F: Coeff>(comp: &Ideal<F>) -> bool {
    let arity = comp.ring().arity();
    let mut zero_vars = vec![false; arity];
    for g in comp.gens() {
        if g.num_terms() == 1 {
            for idx in g.support_vars() {
                zero_vars[idx] = true;
            }
        }
    }
    let point: Vec<F> = (0..arity)
        .map(|i| if zero_vars[i] { F::zero() } else { F::one() })
        .collect();
    comp.gens().iter().all(|g| g.eval(&point).is_zero())
}

fn split_recursive<F: Coeff>(
    ideal: &Ideal<F>,
    conductor: u32,
    budget: &Budget,
    depth: usize,
) -> Result<Vec<Ideal<F>>, DecompError> {
    if depth > 24 {
        return Err(DecompError::NotInClass("splitting recursion too deep".into()));
    }
    if ideal.is_zero_ideal() {
        return Ok(vec![ideal.clone()]);
    }
    // saturate by the product of the variables not already forced to zero
    let saturated = resaturate(ideal, budget)?;
    if saturated.is_trivial(budget)? {
        return Ok(vec![]);
    }
    let gb = saturated.groebner(&MonomialOrder::GrevLex, budget)?;
    if let Some(poly) = gb.iter().find(|p| p.num_terms() > 2) {
        let Some(divisor) = find_binomial_divisor(poly, budget)? else {
            return Err(DecompError::NotInClass(format!(
                "no binomial divisor splits `{poly}`"
            )));
        };
        let mut with: Vec<Poly<F>> = saturated.gens().to_vec();
        with.push(divisor.clone());
        let with_ideal = Ideal::new(saturated.ring().clone(), with);
        let without_ideal = saturated.saturate(&divisor, budget)?;
        let mut out = split_recursive(&with_ideal, conductor, budget, depth + 1)?;
        out.extend(split_recursive(&without_ideal, conductor, budget, depth + 1)?);
        return Ok(out);
    }
    torsion_coset_split(&saturated, &gb, conductor, budget)
}

/// Saturates by the product of the variables that are not forced to zero by
/// a monomial generator.
fn resaturate<F: Coeff>(ideal: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>, DecompError> {
    let ring = ideal.ring().clone();
    let gb = ideal.groebner(&MonomialOrder::GrevLex, budget)?;
    let mut forced = vec![false; ring.arity()];
    for p in gb.iter().filter(|p| p.num_terms() == 1) {
        for v in p.support_vars() {
            forced[v] = true;
        }
    }
    let mut product = Poly::<F>::one(&ring);
    for i in 0..ring.arity() {
        if !forced[i] {
            product = product.mul(&Poly::var(&ring, i));
        }
    }
    if product.total_degree() == 0 {
        return Ok(ideal.clone());
    }
    Ok(ideal.saturate(&product, budget)?)
}

/// Searches a reduced-basis element for a two-term divisor x^a - c x^b with
/// exponents bounded by the element's own support.
fn find_binomial_divisor<F: Coeff>(
    poly: &Poly<F>,
    budget: &Budget,
) -> Result<Option<Poly<F>>, DecompError> {
    let ring = poly.ring().clone();
    let terms: Vec<(Monomial, F)> = poly.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    // candidate exponent-difference vectors from support pairs
    let mut cand_vecs: Vec<Vec<i64>> = vec![];
    for i in 0..terms.len() {
        for j in 0..terms.len() {
            if i == j {
                continue;
            }
            let v: Vec<i64> = terms[i]
                .0
                 .0
                .iter()
                .zip(&terms[j].0 .0)
                .map(|(a, b)| *a as i64 - *b as i64)
                .collect();
            if v.iter().any(|&e| e != 0) && !cand_vecs.contains(&v) {
                cand_vecs.push(v);
            }
        }
    }
    cand_vecs.sort();
    // candidate coefficients: ratios of term coefficients (both signs)
    let mut cand_coeffs: Vec<F> = vec![F::one()];
    for i in 0..terms.len() {
        for j in 0..terms.len() {
            if i == j {
                continue;
            }
            if let Some(r) = terms[i].1.div(&terms[j].1) {
                if !cand_coeffs.contains(&r) {
                    cand_coeffs.push(r.clone());
                }
                let nr = r.neg();
                if !cand_coeffs.contains(&nr) {
                    cand_coeffs.push(nr);
                }
            }
        }
    }
    for v in &cand_vecs {
        let mut plus = vec![0u32; ring.arity()];
        let mut minus = vec![0u32; ring.arity()];
        for (k, &e) in v.iter().enumerate() {
            if e > 0 {
                plus[k] = e as u32;
            } else if e < 0 {
                minus[k] = (-e) as u32;
            }
        }
        for c in &cand_coeffs {
            let mut b = Poly::zero(&ring);
            b.add_term(Monomial(plus.clone()), F::one());
            b.add_term(Monomial(minus.clone()), c.neg());
            if b.num_terms() != 2 {
                continue;
            }
            let rem = crate::poly::normal_form(poly, &[b.clone()], &MonomialOrder::GrevLex, budget)?;
            if rem.is_zero() {
                return Ok(Some(b));
            }
        }
    }
    Ok(None)
}

/// Splits a (saturated) binomial ideal into its prime torsion cosets via
/// the lattice of exponent differences and the characters of the torsion
/// quotient.
fn torsion_coset_split<F: Coeff>(
    ideal: &Ideal<F>,
    gb: &[Poly<F>],
    conductor: u32,
    budget: &Budget,
) -> Result<Vec<Ideal<F>>, DecompError> {
    let ring = ideal.ring().clone();
    let arity = ring.arity();
    let mut forced_polys: Vec<Poly<F>> = vec![];
    let mut diffs: Vec<Vec<BigInt>> = vec![];
    let mut diff_vals: Vec<F> = vec![];
    for p in gb {
        match p.num_terms() {
            0 => {}
            1 => {
                // forced-zero coordinate(s); keep as component generators
                forced_polys.push(p.clone());
            }
            2 => {
                let mut it = p.terms();
                let (m1, c1) = it.next().unwrap();
                let (m2, c2) = it.next().unwrap();
                // orient by the grevlex leading term so the character value
                // is well defined: lead - c * tail with c = -c_tail/c_lead
                let (lead, lc, tail, tc) =
                    if MonomialOrder::GrevLex.cmp(m1, m2) == std::cmp::Ordering::Greater {
                        (m1, c1, m2, c2)
                    } else {
                        (m2, c2, m1, c1)
                    };
                let c = tc.neg().div(lc).expect("nonzero lead");
                let v: Vec<BigInt> = lead
                    .0
                    .iter()
                    .zip(&tail.0)
                    .map(|(a, b)| BigInt::from(*a as i64 - *b as i64))
                    .collect();
                diffs.push(v);
                diff_vals.push(c);
            }
            _ => unreachable!("caller filtered non-binomial elements"),
        }
    }
    if diffs.is_empty() {
        let comp = Ideal::new(ring.clone(), forced_polys);
        return Ok(vec![comp]);
    }
    // lattice with transform: rows of H express the canonical basis as
    // integer combinations of the original difference vectors
    let diff_mat = IntMat::from_rows(diffs.clone());
    let (h, u) = hnf(&diff_mat);
    let basis_rows: Vec<Vec<BigInt>> = h
        .rows_vec()
        .into_iter()
        .filter(|r| r.iter().any(|e| !num::Zero::is_zero(e)))
        .collect();
    let lat = Lattice::from_rows(arity, basis_rows.clone());
    // partial character on the basis rows
    let mut rho_basis: Vec<F> = vec![];
    for (i, _) in basis_rows.iter().enumerate() {
        let mut val = F::one();
        for (j, dv) in diff_vals.iter().enumerate() {
            let e = u[(i, j)]
                .to_i64()
                .ok_or_else(|| DecompError::NotInClass("transform entry overflow".into()))?;
            if e != 0 {
                let p = dv.pow_i(e).ok_or_else(|| {
                    DecompError::NotInClass("character value not invertible".into())
                })?;
                val = val.mul(&p);
            }
        }
        rho_basis.push(val);
    }
    // saturation data via torsion characters
    let chars = crate::lattice::torsion_characters(&lat)
        .map_err(|e| DecompError::NotInClass(e.to_string()))?;
    let divisors: Vec<u32> = chars[0].divisors().to_vec();
    let sat_basis = chars[0].sat_basis().to_vec();
    // base root: rho_tilde(w_i)^{d_i} = rho(d_i w_i)
    let mut base_roots: Vec<F> = vec![];
    for (i, w) in sat_basis.iter().enumerate() {
        let d_i = divisors[i];
        let dw: Vec<BigInt> = w.iter().map(|e| e * BigInt::from(d_i)).collect();
        let coords = lat.coords_of(&dw).expect("d_i * w_i lies in the lattice");
        let mut val = F::one();
        for (j, c) in coords.iter().enumerate() {
            let e = c
                .to_i64()
                .ok_or_else(|| DecompError::NotInClass("coordinate overflow".into()))?;
            if e != 0 {
                let p = rho_basis[j].pow_i(e).ok_or_else(|| {
                    DecompError::NotInClass("character value not invertible".into())
                })?;
                val = val.mul(&p);
            }
        }
        base_roots.push(nth_root_in_field(&val, d_i, conductor)?);
    }
    // one component per character
    let mut out = vec![];
    for ch in &chars {
        let mut gens: Vec<Poly<F>> = forced_polys.clone();
        for (i, w) in sat_basis.iter().enumerate() {
            let d_i = divisors[i];
            let zeta = if d_i == 1 {
                F::one()
            } else {
                if conductor % d_i != 0 {
                    return Err(DecompError::NeedsRootsOfUnity(lcm_all(&divisors).lcm(&conductor.max(1))));
                }
                F::root_of_unity(conductor, (ch.exps()[i] as i64) * (conductor / d_i) as i64)
                    .ok_or(DecompError::NeedsRootsOfUnity(lcm_all(&divisors)))?
            };
            let coeff = base_roots[i].mul(&zeta);
            gens.push(coset_binomial(&ring, w, &coeff));
        }
        let comp = Ideal::new(ring.clone(), gens);
        let comp = resaturate(&comp, budget)?;
        out.push(comp);
    }
    Ok(out)
}

fn lcm_all(divisors: &[u32]) -> u32 {
    divisors.iter().fold(1u32, |a, &d| a.lcm(&d))
}

/// x^{w+} - c * x^{w-}
fn coset_binomial<F: Coeff>(ring: &RingRef, w: &[BigInt], c: &F) -> Poly<F> {
    if c.is_one() {
        return binomial_of_vector(ring, w);
    }
    let n = ring.arity();
    let mut plus = vec![0u32; n];
    let mut minus = vec![0u32; n];
    for (i, e) in w.iter().enumerate() {
        if e.is_positive() {
            plus[i] = e.to_u32().expect("small exponent");
        } else if e.is_negative() {
            minus[i] = (-e).to_u32().expect("small exponent");
        }
    }
    let mut p = Poly::zero(ring);
    p.add_term(Monomial(plus), F::one());
    p.add_term(Monomial(minus), c.neg());
    p
}

/// An exact d-th root of `val` in F, searched among rational roots times
/// powers of zeta_conductor. Errors if none is representable.
fn nth_root_in_field<F: Coeff>(val: &F, d: u32, conductor: u32) -> Result<F, DecompError> {
    if d == 1 {
        return Ok(val.clone());
    }
    if val.is_one() {
        return Ok(F::one());
    }
    let mut magnitudes: Vec<F> = vec![F::one()];
    if let Some(r) = val.to_rat() {
        let num = r.numer().abs();
        let den = r.denom().abs();
        let nr = num.nth_root(d);
        let dr = den.nth_root(d);
        if num::pow::pow(nr.clone(), d as usize) == num
            && num::pow::pow(dr.clone(), d as usize) == den
        {
            magnitudes.push(F::from_rat(&crate::arith::Rat::new(nr, dr)));
        }
    }
    for mag in &magnitudes {
        for j in 0..conductor.max(1) {
            if let Some(z) = F::root_of_unity(conductor.max(1), j as i64) {
                let cand = mag.mul(&z);
                if let Some(p) = cand.pow_i(d as i64) {
                    if p == *val {
                        return Ok(cand);
                    }
                }
                let neg = cand.neg();
                if let Some(p) = neg.pow_i(d as i64) {
                    if p == *val {
                        return Ok(neg);
                    }
                }
            }
        }
    }
    Err(DecompError::NeedsRootsOfUnity(d * conductor.max(1)))
}

#[cfg(test)]
mod tests;
