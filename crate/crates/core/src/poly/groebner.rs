//! Buchberger's algorithm with the product and chain criteria, full
//! inter-reduction, and a step budget so runaway inputs fail fast instead
//! of running unbounded.

use super::{Monomial, MonomialOrder, Poly, PolyError};
use crate::arith::Coeff;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

/// Default S-pair reduction budget.
pub const DEFAULT_BUDGET: u64 = 200_000;

/// Shared reduction-step counter. One unit is one leading-term cancellation.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn step(&self, n: u64) -> Result<(), PolyError> {
        let prev = self.used.fetch_add(n, AtomicOrdering::Relaxed);
        if prev + n > self.limit {
            Err(PolyError::ResourceLimit)
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(AtomicOrdering::Relaxed)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// Working representation: terms sorted descending under the active order.
struct SortedPoly<F: Coeff> {
    terms: Vec<(Monomial, F)>,
}

impl<F: Coeff> SortedPoly<F> {
    fn from_poly(p: &Poly<F>, ord: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, F)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
        SortedPoly { terms }
    }

    fn to_poly(&self, ring: &super::RingRef) -> Poly<F> {
        Poly::from_terms(ring, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, F) {
        &self.terms[0]
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            let inv = lc.inv().expect("field inverse");
            if !inv.is_one() {
                for (_, c) in &mut self.terms {
                    *c = c.mul(&inv);
                }
            }
        }
    }

    /// self -= coeff * x^shift * other, merging in descending order.
    fn sub_scaled(&mut self, other: &SortedPoly<F>, shift: &Monomial, coeff: &F, ord: &MonomialOrder) {
        let mut merged: Vec<(Monomial, F)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            let om = other.terms[j].0.mul(shift);
            match ord.cmp(&self.terms[i].0, &om) {
                std::cmp::Ordering::Greater => {
                    merged.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    merged.push((om, other.terms[j].1.mul(coeff).neg()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].1.sub(&other.terms[j].1.mul(coeff));
                    if !c.is_zero() {
                        merged.push((om, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&self.terms[i..]);
        for (m, c) in &other.terms[j..] {
            merged.push((m.mul(shift), c.mul(coeff).neg()));
        }
        self.terms = merged;
    }
}

/// Fully reduces `p` modulo `basis`: no term of the result is divisible by
/// any basis leading monomial.
fn reduce_full<F: Coeff>(
    mut p: SortedPoly<F>,
    basis: &[SortedPoly<F>],
    ord: &MonomialOrder,
    budget: &Budget,
) -> Result<SortedPoly<F>, PolyError> {
    let mut out: Vec<(Monomial, F)> = Vec::new();
    'outer: while !p.terms.is_empty() {
        let (m, c) = p.terms[0].clone();
        for g in basis {
            if g.lead().0.divides(&m) {
                budget.step(1)?;
                let shift = g.lead().0.div_into(&m);
                let factor = c.div(&g.lead().1).expect("nonzero lead");
                p.sub_scaled(g, &shift, &factor, ord);
                continue 'outer;
            }
        }
        // head is irreducible: move it to the remainder
        out.push(p.terms.remove(0));
    }
    Ok(SortedPoly { terms: out })
}

/// Normal form of `f` modulo the polynomials `gens` under `ord`.
pub fn normal_form<F: Coeff>(
    f: &Poly<F>,
    gens: &[Poly<F>],
    ord: &MonomialOrder,
    budget: &Budget,
) -> Result<Poly<F>, PolyError> {
    let basis: Vec<SortedPoly<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SortedPoly::from_poly(g, ord))
        .collect();
    let red = reduce_full(SortedPoly::from_poly(f, ord), &basis, ord, budget)?;
    Ok(red.to_poly(f.ring()))
}

/// The unique reduced Groebner basis of the ideal generated by `gens`.
///
/// Output is monic, fully inter-reduced, and sorted ascending by leading
/// monomial, so equal ideals give identical vectors.
pub fn groebner<F: Coeff>(
    gens: &[Poly<F>],
    ord: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<Poly<F>>, PolyError> {
    let ring = match gens.first() {
        None => return Ok(vec![]),
        Some(g) => g.ring().clone(),
    };
    let mut basis: Vec<SortedPoly<F>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let mut s = SortedPoly::from_poly(g, ord);
            s.make_monic();
            basis.push(s);
        }
    }
    if basis.is_empty() {
        return Ok(vec![]);
    }

    // pair queue ordered by lcm degree, then indices, for determinism
    let mut pairs: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let mut lcms: std::collections::HashMap<(usize, usize), Monomial> = Default::default();
    let push_pairs = |pairs: &mut BinaryHeap<Reverse<(u32, usize, usize)>>,
                          lcms: &mut std::collections::HashMap<(usize, usize), Monomial>,
                          basis: &[SortedPoly<F>],
                          j: usize| {
        for i in 0..j {
            let l = basis[i].lead().0.lcm(&basis[j].lead().0);
            pairs.push(Reverse((l.total_degree(), i, j)));
            lcms.insert((i, j), l);
        }
    };
    for j in 1..basis.len() {
        push_pairs(&mut pairs, &mut lcms, &basis, j);
    }
    let mut done: std::collections::HashSet<(usize, usize)> = Default::default();

    while let Some(Reverse((_, i, j))) = pairs.pop() {
        done.insert((i, j));
        let (li, lj) = (&basis[i].lead().0, &basis[j].lead().0);
        // product criterion
        if li.coprime(lj) {
            continue;
        }
        let lcm = lcms[&(i, j)].clone();
        // chain criterion: some k with LT(k) | lcm and both pairs handled
        let mut skip = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if g.lead().0.divides(&lcm) {
                let a = (i.min(k), i.max(k));
                let b = (j.min(k), j.max(k));
                if done.contains(&a) && done.contains(&b) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }
        // S-polynomial
        let shift_i = basis[i].lead().0.div_into(&lcm);
        let shift_j = basis[j].lead().0.div_into(&lcm);
        let mut s = SortedPoly {
            terms: basis[i]
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&shift_i), c.clone()))
                .collect(),
        };
        let cj = F::one();
        s.sub_scaled(&basis[j], &shift_j, &cj, ord);
        // leading terms cancel by construction (both bases are monic)
        let mut red = reduce_full(s, &basis, ord, budget)?;
        if !red.is_zero() {
            red.make_monic();
            basis.push(red);
            let j_new = basis.len() - 1;
            push_pairs(&mut pairs, &mut lcms, &basis, j_new);
        }
    }

    // minimize: drop elements whose lead is divisible by another lead
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            if basis[b].lead().0.divides(&basis[a].lead().0)
                && (basis[a].lead().0 != basis[b].lead().0 || b < a)
            {
                keep[a] = false;
                break;
            }
        }
    }
    let minimal: Vec<SortedPoly<F>> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // inter-reduce tails for the unique reduced basis
    let mut reduced: Vec<SortedPoly<F>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SortedPoly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| SortedPoly { terms: g.terms.clone() })
            .collect();
        let mut r = reduce_full(SortedPoly { terms: minimal[i].terms.clone() }, &others, ord, budget)?;
        if !r.is_zero() {
            r.make_monic();
            reduced.push(r);
        }
    }
    reduced.sort_by(|a, b| ord.cmp(&a.lead().0, &b.lead().0));
    Ok(reduced.into_iter().map(|s| s.to_poly(&ring)).collect())
}
