//! The parametric change-of-variables solver: given source polynomials
//! (already composed with a symbolic substitution) and target generators,
//! compute the ideal of parameter conditions under which each source lies
//! in the target ideal. Containment is encoded by a bounded-degree cofactor
//! ansatz, coefficient matching, and elimination of the ansatz unknowns.

use super::DetError;
use crate::arith::Coeff;
use crate::poly::{Budget, Ideal, Monomial, Poly, Ring, RingRef};

/// A containment question inside one combined ring of parameter variables
/// and point variables.
pub struct ContainmentProblem<F: Coeff> {
    /// the combined ring (parameters and point variables by name)
    pub ring: RingRef,
    /// indices of the point variables within `ring`
    pub point_vars: Vec<usize>,
    /// polynomials whose membership is being asked
    pub sources: Vec<Poly<F>>,
    /// generators of the target ideal (may involve parameters)
    pub targets: Vec<Poly<F>>,
}

impl<F: Coeff> ContainmentProblem<F> {
    fn param_vars(&self) -> Vec<usize> {
        (0..self.ring.arity())
            .filter(|i| !self.point_vars.contains(i))
            .collect()
    }

    fn param_ring(&self) -> RingRef {
        let names: Vec<String> = self
            .param_vars()
            .iter()
            .map(|&i| self.ring.vars()[i].clone())
            .collect();
        Ring::new(names)
    }
}

/// The parameter locus where every source polynomial lies in the target
/// ideal, one cofactor ansatz per source, ansatz unknowns eliminated.
///
/// Cofactor degrees: deg_pt(source) - deg_pt(target_j) plus `extra`; a
/// target of larger point degree than the source gets a cofactor only when
/// `extra` allows it.
pub fn containment_conditions<F: Coeff>(
    prob: &ContainmentProblem<F>,
    extra: u32,
    budget: &Budget,
) -> Result<Ideal<F>, DetError> {
    let param_ring = prob.param_ring();
    let mut total = Ideal::new(param_ring.clone(), vec![]);
    for src in &prob.sources {
        let cond = one_source_conditions(prob, src, extra, budget)?;
        let mut gens = total.gens().to_vec();
        gens.extend(cond.gens().iter().cloned());
        total = Ideal::new(param_ring.clone(), gens);
    }
    Ok(total)
}

/// Equality conditions: containment in both directions, summed.
pub fn equality_conditions<F: Coeff>(
    prob: &ContainmentProblem<F>,
    extra: u32,
    budget: &Budget,
) -> Result<Ideal<F>, DetError> {
    let fwd = containment_conditions(prob, extra, budget)?;
    let rev_prob = ContainmentProblem {
        ring: prob.ring.clone(),
        point_vars: prob.point_vars.clone(),
        sources: prob.targets.clone(),
        targets: prob.sources.clone(),
    };
    let rev = containment_conditions(&rev_prob, extra, budget)?;
    let mut gens = fwd.gens().to_vec();
    gens.extend(rev.gens().iter().cloned());
    Ok(Ideal::new(fwd.ring().clone(), gens))
}

fn one_source_conditions<F: Coeff>(
    prob: &ContainmentProblem<F>,
    src: &Poly<F>,
    extra: u32,
    budget: &Budget,
) -> Result<Ideal<F>, DetError> {
    let pt = &prob.point_vars;
    let src_deg = src.degree_in(pt);
    // cofactor degree per target
    let mut cof_degs: Vec<Option<u32>> = vec![];
    for t in &prob.targets {
        let td = t.degree_in(pt);
        if td > src_deg + extra {
            cof_degs.push(None);
        } else {
            cof_degs.push(Some(src_deg + extra - td));
        }
    }
    if cof_degs.iter().all(Option::is_none) {
        // no representable combination: condition is src = 0 identically
        return coefficients_as_conditions(prob, src);
    }
    // build the extended ring with one unknown per (target, point monomial)
    let mut c_names: Vec<String> = vec![];
    let mut layout: Vec<Vec<(Monomial, String)>> = vec![];
    for (j, deg) in cof_degs.iter().enumerate() {
        let mut slots = vec![];
        if let Some(limit) = deg {
            for mono in point_monomials(prob, *limit) {
                let name = format!("c{}_{}", j, slots.len());
                c_names.push(name.clone());
                slots.push((mono, name));
            }
        }
        layout.push(slots);
    }
    let ext_ring = {
        let mut vars: Vec<String> = c_names.clone();
        vars.extend(prob.ring.vars().iter().cloned());
        Ring::new(vars)
    };
    // E := sum_j h_j * G_j - src, expanded in the extended ring
    let mut e = src.transfer(&ext_ring).map_err(DetError::from)?.neg();
    for (j, slots) in layout.iter().enumerate() {
        if slots.is_empty() {
            continue;
        }
        let g = prob.targets[j].transfer(&ext_ring).map_err(DetError::from)?;
        let mut h = Poly::zero(&ext_ring);
        for (mono, name) in slots {
            // monomial in point vars, lifted to the extended ring
            let mut exps = vec![0u32; ext_ring.arity()];
            for (k, &pv) in pt.iter().enumerate() {
                let name_pv = &prob.ring.vars()[pv];
                let idx = ext_ring.var_index(name_pv).unwrap();
                exps[idx] = mono.0[k];
            }
            let mut term = Poly::zero(&ext_ring);
            term.add_term(Monomial(exps), F::one());
            h = h.add(&term.mul(&Poly::var_named(&ext_ring, name)));
        }
        e = e.add(&h.mul(&g));
    }
    // match coefficients of every point-variable monomial
    let pt_ext: Vec<usize> = pt
        .iter()
        .map(|&i| ext_ring.var_index(&prob.ring.vars()[i]).unwrap())
        .collect();
    let equations = collect_point_coefficients(&e, &pt_ext);
    // eliminate the ansatz unknowns
    let c_indices: Vec<usize> = c_names
        .iter()
        .map(|n| ext_ring.var_index(n).unwrap())
        .collect();
    let sys = Ideal::new(ext_ring, equations);
    let eliminated = sys.eliminate(&c_indices, budget)?;
    let param_ring = prob.param_ring();
    let gens = eliminated
        .gens()
        .iter()
        .map(|g| g.transfer(&param_ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(param_ring, gens))
}

/// With no ansatz at all, containment forces every point coefficient of the
/// source to vanish.
fn coefficients_as_conditions<F: Coeff>(
    prob: &ContainmentProblem<F>,
    src: &Poly<F>,
) -> Result<Ideal<F>, DetError> {
    let eqs = collect_point_coefficients(src, &prob.point_vars);
    let param_ring = prob.param_ring();
    let gens = eqs
        .iter()
        .map(|g| g.transfer(&param_ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(param_ring, gens))
}

/// Groups the terms of `p` by their point-variable monomial part; returns
/// one coefficient polynomial (in the remaining variables) per group.
fn collect_point_coefficients<F: Coeff>(p: &Poly<F>, point_vars: &[usize]) -> Vec<Poly<F>> {
    use std::collections::BTreeMap;
    let ring = p.ring().clone();
    let mut groups: BTreeMap<Vec<u32>, Poly<F>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let key: Vec<u32> = point_vars.iter().map(|&i| m.0[i]).collect();
        let mut rest = m.clone();
        for &i in point_vars {
            rest.0[i] = 0;
        }
        let entry = groups.entry(key).or_insert_with(|| Poly::zero(&ring));
        entry.add_term(rest, c.clone());
    }
    groups.into_values().filter(|g| !g.is_zero()).collect()
}

/// All monomials in the point variables up to the given total degree,
/// presented in the point-variable index space (one exponent per point var).
fn point_monomials<F: Coeff>(prob: &ContainmentProblem<F>, limit: u32) -> Vec<Monomial> {
    let k = prob.point_vars.len();
    let mut out = vec![];
    let mut cur = vec![0u32; k];
    loop {
        if cur.iter().sum::<u32>() <= limit {
            out.push(Monomial(cur.clone()));
        }
        // odometer bounded by limit in each slot
        let mut i = 0;
        loop {
            if i == k {
                out.sort();
                return out;
            }
            cur[i] += 1;
            if cur[i] <= limit {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}
