//! Finitely generated ideals with cached reduced Groebner bases and the
//! elimination-based operations the determination procedures consume.

use super::groebner::{groebner, normal_form, Budget};
use super::{Monomial, MonomialOrder, Poly, PolyError, Ring, RingRef};
use crate::arith::Coeff;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// An ideal presented by generators. Reduced Groebner bases are computed on
/// demand and cached per monomial order (single-writer; values immutable).
pub struct Ideal<F: Coeff> {
    ring: RingRef,
    gens: Vec<Poly<F>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Poly<F>>>>>,
}

impl<F: Coeff> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl<F: Coeff> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl<F: Coeff> Ideal<F> {
    pub fn new(ring: RingRef, gens: Vec<Poly<F>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens, cache: Mutex::new(HashMap::new()) }
    }

    pub fn parse(ring: &RingRef, sources: &[&str]) -> Result<Self, PolyError> {
        let gens = sources
            .iter()
            .map(|s| super::parse_poly(s, ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(ring.clone(), gens))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// The unique reduced Groebner basis for `ord`, cached.
    pub fn groebner(&self, ord: &MonomialOrder, budget: &Budget) -> Result<Arc<Vec<Poly<F>>>, PolyError> {
        if let Some(hit) = self.cache.lock().unwrap().get(ord) {
            return Ok(hit.clone());
        }
        let basis = Arc::new(groebner(&self.gens, ord, budget)?);
        self.cache
            .lock()
            .unwrap()
            .entry(*ord)
            .or_insert_with(|| basis.clone());
        Ok(basis)
    }

    /// True iff the ideal is the whole ring (its reduced basis is {1}).
    pub fn is_trivial(&self, budget: &Budget) -> Result<bool, PolyError> {
        let gb = self.groebner(&MonomialOrder::GrevLex, budget)?;
        Ok(gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero())
    }

    /// Ideal membership via normal form against a Groebner basis.
    pub fn member(&self, f: &Poly<F>, budget: &Budget) -> Result<bool, PolyError> {
        if f.is_zero() {
            return Ok(true);
        }
        let gb = self.groebner(&MonomialOrder::GrevLex, budget)?;
        Ok(normal_form(f, &gb, &MonomialOrder::GrevLex, budget)?.is_zero())
    }

    /// Radical membership by the Rabinowitsch trick:
    /// f in sqrt(I) iff 1 in <I, 1 - t*f> for a fresh t.
    pub fn radical_member(&self, f: &Poly<F>, budget: &Budget) -> Result<bool, PolyError> {
        if f.is_zero() {
            return Ok(true);
        }
        let t_name = self.ring.fresh_name("t");
        let ext = prepend_ring(&self.ring, &t_name);
        let t = Poly::var_named(&ext, &t_name);
        let mut gens: Vec<Poly<F>> = self
            .gens
            .iter()
            .map(|g| g.transfer(&ext))
            .collect::<Result<_, _>>()?;
        let fe = f.transfer(&ext)?;
        gens.push(Poly::one(&ext).sub(&t.mul(&fe)));
        Ideal::new(ext, gens).is_trivial(budget)
    }

    /// Intersection with the dropped-variable subring:
    /// generators of I ∩ k[vars \ drop], computed with a block order.
    /// The result lives in the subring (same variable names, original order).
    pub fn eliminate(&self, drop: &[usize], budget: &Budget) -> Result<Ideal<F>, PolyError> {
        let arity = self.ring.arity();
        assert!(drop.iter().all(|&i| i < arity));
        let mut dropped: Vec<usize> = drop.to_vec();
        dropped.sort_unstable();
        dropped.dedup();
        let kept: Vec<usize> = (0..arity).filter(|i| !dropped.contains(i)).collect();
        let perm: Vec<usize> = dropped.iter().chain(kept.iter()).copied().collect();
        let perm_ring = Ring::new(perm.iter().map(|&i| self.ring.vars()[i].clone()).collect());
        let gens: Vec<Poly<F>> = self
            .gens
            .iter()
            .map(|g| g.transfer(&perm_ring))
            .collect::<Result<_, _>>()?;
        let gb = groebner(&gens, &MonomialOrder::Block(dropped.len()), budget)?;
        let block: Vec<usize> = (0..dropped.len()).collect();
        let sub_ring = Ring::new(kept.iter().map(|&i| self.ring.vars()[i].clone()).collect());
        let kept_polys: Vec<Poly<F>> = gb
            .iter()
            .filter(|p| p.terms().all(|(m, _)| m.avoids(&block)))
            .map(|p| p.transfer(&sub_ring))
            .collect::<Result<_, _>>()?;
        Ok(Ideal::new(sub_ring, kept_polys))
    }

    /// Like `eliminate`, but re-expressed in `target` (which must contain
    /// every kept variable by name).
    pub fn eliminate_into(
        &self,
        drop: &[usize],
        target: &RingRef,
        budget: &Budget,
    ) -> Result<Ideal<F>, PolyError> {
        let sub = self.eliminate(drop, budget)?;
        let gens: Vec<Poly<F>> = sub
            .gens
            .iter()
            .map(|g| g.transfer(target))
            .collect::<Result<_, _>>()?;
        Ok(Ideal::new(target.clone(), gens))
    }

    /// I ∩ J via t*I + (1-t)*J and elimination of t.
    pub fn intersect(&self, other: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>, PolyError> {
        assert!(Ring::same(&self.ring, &other.ring), "ring mismatch");
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::new(self.ring.clone(), vec![]));
        }
        let t_name = self.ring.fresh_name("t");
        let ext = prepend_ring(&self.ring, &t_name);
        let t = Poly::var_named(&ext, &t_name);
        let one_minus_t = Poly::one(&ext).sub(&t);
        let mut gens: Vec<Poly<F>> = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&g.transfer(&ext)?));
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&g.transfer(&ext)?));
        }
        Ideal::new(ext, gens).eliminate_into(&[0], &self.ring, budget)
    }

    /// Saturation I : f^infinity, by eliminating t from <I, 1 - t*f>.
    pub fn saturate(&self, f: &Poly<F>, budget: &Budget) -> Result<Ideal<F>, PolyError> {
        assert!(!f.is_zero(), "saturation by zero");
        let t_name = self.ring.fresh_name("t");
        let ext = prepend_ring(&self.ring, &t_name);
        let t = Poly::var_named(&ext, &t_name);
        let mut gens: Vec<Poly<F>> = self
            .gens
            .iter()
            .map(|g| g.transfer(&ext))
            .collect::<Result<_, _>>()?;
        gens.push(Poly::one(&ext).sub(&t.mul(&f.transfer(&ext)?)));
        Ideal::new(ext, gens).eliminate_into(&[0], &self.ring, budget)
    }

    /// The image ideal {f(A x) : f in I}. `rows` is a square matrix of
    /// polynomials over a ring that contains this ideal's variables (it may
    /// carry extra parameter variables); entry [i][j] multiplies variable j
    /// in the image of variable i.
    pub fn substitute_linear(&self, rows: &[Vec<Poly<F>>]) -> Result<Ideal<F>, PolyError> {
        let n = self.ring.arity();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(PolyError::DimensionMismatch);
        }
        let target = rows[0][0].ring().clone();
        let mut images: Vec<Poly<F>> = Vec::with_capacity(n);
        for row in rows {
            let mut img = Poly::zero(&target);
            for (j, entry) in row.iter().enumerate() {
                let xj = Poly::var_named(&target, &self.ring.vars()[j]);
                img = img.add(&entry.mul(&xj));
            }
            images.push(img);
        }
        let gens = self.gens.iter().map(|g| g.substitute(&images)).collect();
        Ok(Ideal::new(target, gens))
    }

    /// Equality of ideals: identical reduced Groebner bases.
    pub fn equal(&self, other: &Ideal<F>, ord: &MonomialOrder, budget: &Budget) -> Result<bool, PolyError> {
        if !Ring::same(&self.ring, &other.ring) {
            return Ok(false);
        }
        let a = self.groebner(ord, budget)?;
        let b = other.groebner(ord, budget)?;
        Ok(*a == *b)
    }

    /// If the radical of the ideal cuts out an affine subspace, returns the
    /// linear forms of its reduced lex basis. Non-linear basis elements are
    /// tolerated only when they are perfect powers of linear forms (that is
    /// the restricted radical this pipeline needs).
    pub fn linear_variety_basis(&self, budget: &Budget) -> Result<Option<Vec<Poly<F>>>, PolyError> {
        let mut gens = self.gens.clone();
        if gens.is_empty() {
            return Ok(Some(vec![]));
        }
        loop {
            let gb = groebner(&gens, &MonomialOrder::Lex, budget)?;
            if gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero() {
                return Ok(None); // empty variety
            }
            let mut next = Vec::with_capacity(gb.len());
            let mut changed = false;
            for g in &gb {
                if g.total_degree() <= 1 {
                    next.push(g.clone());
                } else if let Some(l) = linear_power_root(g) {
                    next.push(l);
                    changed = true;
                } else {
                    return Ok(None);
                }
            }
            if !changed {
                return Ok(Some(gb.into_iter().collect()));
            }
            gens = next;
        }
    }
}

/// If `g` = c * l^k for a linear form l, returns l (monic under lex).
fn linear_power_root<F: Coeff>(g: &Poly<F>) -> Option<Poly<F>> {
    let k = g.total_degree();
    if k < 2 {
        return None;
    }
    let (lm, _) = g.leading(&MonomialOrder::Lex)?;
    // the lex leading monomial of l^k is a pure k-th power of one variable
    let i = lm.0.iter().position(|&e| e == k)?;
    if lm.total_degree() != k {
        return None;
    }
    let mut d = g.clone();
    for _ in 0..k - 1 {
        d = d.derivative(i);
    }
    if d.is_zero() || d.total_degree() > 1 {
        return None;
    }
    let l = d.monic(&MonomialOrder::Lex);
    let lk = l.pow(k);
    let c = g
        .leading(&MonomialOrder::Lex)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(F::one);
    if lk.scale(&c) == *g {
        Some(l)
    } else {
        None
    }
}

fn prepend_ring(ring: &RingRef, name: &str) -> RingRef {
    let mut vars = vec![name.to_string()];
    vars.extend(ring.vars().iter().cloned());
    Ring::new(vars)
}

impl<F: Coeff> Ideal<F> {
    /// Generators rendered canonically (grevlex order), for serialization.
    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

    /// Checks if the monomial `m` avoids nothing; helper for tests.
    #[doc(hidden)]
    pub fn leading_monomials(&self, ord: &MonomialOrder, budget: &Budget) -> Result<Vec<Monomial>, PolyError> {
        Ok(self
            .groebner(ord, budget)?
            .iter()
            .filter_map(|p| p.leading(ord).map(|(m, _)| m.clone()))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;
    use crate::poly::parse_poly;

    fn b() -> Budget {
        Budget::default()
    }

    fn ideal(ring: &RingRef, srcs: &[&str]) -> Ideal<Rat> {
        Ideal::parse(ring, srcs).unwrap()
    }

    fn strings(ps: &[Poly<Rat>]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn member_basics() {
        let ring = Ring::new(vec!["x", "y", "z"]);
        let i = ideal(&ring, &["x"]);
        assert!(i.member(&parse_poly("x^2", &ring).unwrap(), &b()).unwrap());
        assert!(!i.member(&parse_poly("x + 1", &ring).unwrap(), &b()).unwrap());
        // oracle: substituting y = x^2, z = x^3 kills y^3 - z^2
        let cubic = ideal(&ring, &["y - x^2", "z - x^3"]);
        let f: Poly<Rat> = parse_poly("y^3 - z^2", &ring).unwrap();
        let sub_ring = Ring::new(vec!["x"]);
        let x = Poly::<Rat>::var(&sub_ring, 0);
        let images = vec![x.clone(), x.pow(2), x.pow(3)];
        assert!(f.substitute(&images).is_zero());
        assert!(cubic.member(&f, &b()).unwrap());
    }

    #[test]
    fn radical_member_rabinowitsch() {
        let ring = Ring::new(vec!["x", "y"]);
        let i2 = ideal(&ring, &["x^2"]);
        assert!(i2.radical_member(&parse_poly("x", &ring).unwrap(), &b()).unwrap());
        assert!(!i2.radical_member(&parse_poly("x + 1", &ring).unwrap(), &b()).unwrap());
        let sq = ideal(&ring, &["x^2", "y^2"]);
        let xy: Poly<Rat> = parse_poly("x*y", &ring).unwrap();
        // oracle: (x*y)^2 is a plain member
        assert!(sq.member(&xy.pow(2), &b()).unwrap());
        assert!(sq.radical_member(&xy, &b()).unwrap());
    }

    #[test]
    fn eliminate_examples() {
        let ring = Ring::new(vec!["t", "x", "y"]);
        let par = ideal(&ring, &["x - t", "y - t^2"]);
        let out = par.eliminate(&[0], &b()).unwrap();
        assert_eq!(strings(out.gens()), vec!["x^2 - y"]);
        let unit = ideal(&Ring::new(vec!["t", "x"]), &["1 - t*x"]);
        let out = unit.eliminate(&[0], &b()).unwrap();
        assert!(out.is_zero_ideal());
    }

    #[test]
    fn intersect_examples() {
        let ring = Ring::new(vec!["x", "y"]);
        let a = ideal(&ring, &["x"]);
        let c = ideal(&ring, &["y"]);
        let m = a.intersect(&c, &b()).unwrap();
        assert_eq!(strings(&m.groebner(&MonomialOrder::GrevLex, &b()).unwrap()), vec!["x*y"]);
        // I ∩ I = I
        let i = ideal(&ring, &["x^2 - y", "x*y - 1"]);
        let ii = i.intersect(&i, &b()).unwrap();
        assert!(ii.equal(&i, &MonomialOrder::GrevLex, &b()).unwrap());
        // components of Example 5.2's diagonal slice
        let r4 = Ring::new(vec!["x", "y", "z", "w"]);
        let p1 = ideal(&r4, &["w", "z", "y^2 - x"]);
        let p2 = ideal(&r4, &["w", "z", "x^2 - y"]);
        let inter = p1.intersect(&p2, &b()).unwrap();
        // (y^2 - x)*(x^2 - y), expanded: the product generator of the intersection
        let prod = parse_poly::<Rat>("y^2 - x", &r4)
            .unwrap()
            .mul(&parse_poly("x^2 - y", &r4).unwrap());
        let expect = Ideal::new(
            r4.clone(),
            vec![
                parse_poly("w", &r4).unwrap(),
                parse_poly("z", &r4).unwrap(),
                prod,
            ],
        );
        assert!(inter.equal(&expect, &MonomialOrder::GrevLex, &b()).unwrap());
    }

    #[test]
    fn saturate_examples() {
        let ring = Ring::new(vec!["x", "y"]);
        let xy = ideal(&ring, &["x*y"]);
        let sat = xy.saturate(&parse_poly("x", &ring).unwrap(), &b()).unwrap();
        assert_eq!(strings(&sat.groebner(&MonomialOrder::GrevLex, &b()).unwrap()), vec!["y"]);
        let sq = ideal(&ring, &["x^2"]);
        let sat = sq.saturate(&parse_poly("y", &ring).unwrap(), &b()).unwrap();
        assert!(sat.equal(&sq, &MonomialOrder::GrevLex, &b()).unwrap());
        let pq = ideal(&ring, &["x^2 - x"]);
        let sat = pq.saturate(&parse_poly("x", &ring).unwrap(), &b()).unwrap();
        assert_eq!(strings(&sat.groebner(&MonomialOrder::GrevLex, &b()).unwrap()), vec!["x - 1"]);
    }

    #[test]
    fn ideal_equvoid_and_substitution() {
        let ring = Ring::new(vec!["x", "y"]);
        assert!(ideal(&ring, &["x - y"])
            .equal(&ideal(&ring, &["y - x"]), &MonomialOrder::GrevLex, &b())
            .unwrap());
        assert!(!ideal(&ring, &["x"])
            .equal(&ideal(&ring, &["x^2"]), &MonomialOrder::GrevLex, &b())
            .unwrap());
        // identity substitution preserves the ideal; a swap maps <x-y> to itself
        let i = ideal(&ring, &["x - y"]);
        let one = Poly::<Rat>::one(&ring);
        let zero = Poly::<Rat>::zero(&ring);
        let id_rows = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
        assert!(i.substitute_linear(&id_rows).unwrap().equal(&i, &MonomialOrder::GrevLex, &b()).unwrap());
        let swap_rows = vec![vec![zero.clone(), one.clone()], vec![one, zero]];
        assert!(i.substitute_linear(&swap_rows).unwrap().equal(&i, &MonomialOrder::GrevLex, &b()).unwrap());
    }

    #[test]
    fn linear_variety_basis_examples() {
        let ring = Ring::new(vec!["x", "y"]);
        let l = ideal(&ring, &["x - y"]);
        let forms = l.linear_variety_basis(&b()).unwrap().unwrap();
        assert_eq!(strings(&forms), vec!["x - y"]);
        assert!(ideal(&ring, &["x^2 - y"]).linear_variety_basis(&b()).unwrap().is_none());
        // radical of <x^2, x - y> is <x, y>
        let forms = ideal(&ring, &["x^2", "x - y"]).linear_variety_basis(&b()).unwrap().unwrap();
        assert_eq!(strings(&forms), vec!["y", "x"]);
    }

    #[test]
    fn example_44_condition_ideal_reduces() {
        // the P-condition ideal of the 2x2 change-of-variables worked example
        let ring = Ring::new(vec!["a", "b", "c", "d"]);
        let j = ideal(&ring, &[
            "4*a^2 + c^2 + 4*a*c - b - d",
            "4*b^2 + d^2 + 4*b*d",
            "8*a*b + 2*c*d + 4*a*d + 4*b*c",
            "a + c",
        ]);
        let expect = ideal(&ring, &[
            "a + c",
            "c^2 - b - d",
            "2*b*c + c*d",
            "4*b^2 + 4*b*d + d^2",
        ]);
        assert!(j.equal(&expect, &MonomialOrder::GrevLex, &b()).unwrap());
        let basis = j.groebner(&MonomialOrder::GrevLex, &b()).unwrap();
        eprintln!("reduced basis: {:?}", strings(&basis));
    }
}
