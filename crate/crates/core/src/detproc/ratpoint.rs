//! Explicit point search on a parameter variety: triangular back-
//! substitution over a lex Groebner basis with a small menu of candidate
//! values for free variables, and exact root extraction (rational or
//! c * zeta_q) for the pivot variables. Absence of a point is a value, not
//! an error; the search is deliberately bounded.

use super::DetError;
use crate::arith::{rat, rat_i, Coeff, Rat};
use crate::matgroup::{field_roots, UniPoly};
use crate::poly::{Budget, Ideal, MonomialOrder, Poly};

pub struct PointSearch<'a, F: Coeff> {
    /// conductor for cyclotomic roots (1 = rational points only)
    pub conductor: u32,
    /// values tried for free variables, in order
    pub menu: Vec<Rat>,
    /// cap on visited search nodes
    pub max_nodes: usize,
    /// a polynomial that must not vanish at the point (e.g. det P)
    pub nonzero: Option<&'a Poly<F>>,
}

impl<F: Coeff> PointSearch<'_, F> {
    pub fn defaults(conductor: u32, max_nodes: usize) -> PointSearch<'static, F> {
        PointSearch {
            conductor,
            menu: vec![
                rat_i(0),
                rat_i(1),
                rat_i(-1),
                rat_i(2),
                rat_i(-2),
                rat(1, 2),
                rat(-1, 2),
                rat_i(3),
                rat_i(-3),
                rat(1, 3),
                rat(-1, 3),
            ],
            max_nodes,
            nonzero: None,
        }
    }
}

/// First point found, if any.
pub fn rational_point<F: Coeff>(
    ideal: &Ideal<F>,
    search: &PointSearch<'_, F>,
    budget: &Budget,
) -> Result<Option<Vec<F>>, DetError> {
    Ok(rational_points(ideal, search, 1, budget)?.into_iter().next())
}

/// Up to `max_points` points of V(ideal) meeting the nonzero constraint,
/// in deterministic search order.
pub fn rational_points<F: Coeff>(
    ideal: &Ideal<F>,
    search: &PointSearch<'_, F>,
    max_points: usize,
    budget: &Budget,
) -> Result<Vec<Vec<F>>, DetError> {
    let gb = ideal.groebner(&MonomialOrder::Lex, budget)?;
    if gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero() {
        return Ok(vec![]); // empty variety
    }
    let arity = ideal.ring().arity();
    let mut st = State {
        gens: gb.to_vec(),
        search,
        found: vec![],
        max_points,
        nodes: 0,
    };
    let mut assign: Vec<Option<F>> = vec![None; arity];
    st.dfs(&mut assign);
    Ok(st.found)
}

struct State<'a, 'b, F: Coeff> {
    gens: Vec<Poly<F>>,
    search: &'a PointSearch<'b, F>,
    found: Vec<Vec<F>>,
    max_points: usize,
    nodes: usize,
}

impl<F: Coeff> State<'_, '_, F> {
    fn dfs(&mut self, assign: &mut Vec<Option<F>>) {
        if self.found.len() >= self.max_points || self.nodes >= self.search.max_nodes {
            return;
        }
        self.nodes += 1;
        // partial-evaluate all constraints
        let mut reduced: Vec<Poly<F>> = vec![];
        for g in &self.gens {
            let r = g.eval_partial(assign);
            if r.is_zero() {
                continue;
            }
            if r.is_constant() {
                return; // contradiction on this branch
            }
            reduced.push(r);
        }
        if reduced.is_empty() {
            self.fill_free(assign, 0);
            return;
        }
        // prefer the constraint with the fewest unassigned variables
        reduced.sort_by_key(|p| p.support_vars().len());
        let target = reduced[0].clone();
        let sup = target.support_vars();
        if sup.len() == 1 {
            let var = sup[0];
            let uni = to_univariate(&target, var);
            let mut roots = field_roots(&uni, self.search.conductor);
            // include menu values that happen to be roots but were missed
            for m in &self.search.menu {
                let cand = F::from_rat(m);
                if uni.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
            sort_by_simplicity(&mut roots);
            for r in roots {
                assign[var] = Some(r);
                self.dfs(assign);
                assign[var] = None;
                if self.found.len() >= self.max_points || self.nodes >= self.search.max_nodes {
                    return;
                }
            }
            return;
        }
        // branch on the last unassigned variable of the tightest constraint
        // (lex back-substitution order)
        let var = *sup.last().unwrap();
        for m in &self.search.menu {
            assign[var] = Some(F::from_rat(m));
            self.dfs(assign);
            assign[var] = None;
            if self.found.len() >= self.max_points || self.nodes >= self.search.max_nodes {
                return;
            }
        }
    }

    /// All constraints satisfied; give remaining variables menu values.
    fn fill_free(&mut self, assign: &mut Vec<Option<F>>, from: usize) {
        if self.found.len() >= self.max_points || self.nodes >= self.search.max_nodes {
            return;
        }
        match (from..assign.len()).find(|&i| assign[i].is_none()) {
            None => {
                self.nodes += 1;
                if let Some(nz) = self.search.nonzero {
                    let point: Vec<F> = assign.iter().map(|v| v.clone().unwrap()).collect();
                    if nz.eval(&point).is_zero() {
                        return;
                    }
                }
                let point: Vec<F> = assign.iter().map(|v| v.clone().unwrap()).collect();
                self.found.push(point);
            }
            Some(i) => {
                for m in &self.search.menu {
                    assign[i] = Some(F::from_rat(m));
                    // re-check constraints that may have become violated is
                    // unnecessary: they were all satisfied identically
                    self.fill_free(assign, i + 1);
                    assign[i] = None;
                    if self.found.len() >= self.max_points || self.nodes >= self.search.max_nodes {
                        return;
                    }
                }
            }
        }
    }
}

fn to_univariate<F: Coeff>(p: &Poly<F>, var: usize) -> UniPoly<F> {
    let deg = p
        .terms()
        .map(|(m, _)| m.0[var])
        .max()
        .unwrap_or(0) as usize;
    let mut coeffs = vec![F::zero(); deg + 1];
    for (m, c) in p.terms() {
        let e = m.0[var] as usize;
        debug_assert!(m.0.iter().enumerate().all(|(i, &x)| i == var || x == 0));
        coeffs[e] = coeffs[e].add(c);
    }
    UniPoly::new(coeffs)
}

/// Simple values first: small denominators, small numerators, rational
/// before cyclotomic.
fn sort_by_simplicity<F: Coeff>(vals: &mut [F]) {
    use num::Signed;
    vals.sort_by_key(|v| match v.to_rat() {
        Some(r) => (
            0u8,
            r.denom().abs().to_string().len(),
            r.numer().abs().to_string().len(),
            r.numer().is_negative() as u8,
            v.sort_key(),
        ),
        None => (1u8, 0, 0, 0, v.sort_key()),
    });
}
