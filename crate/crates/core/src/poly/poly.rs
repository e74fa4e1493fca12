//! The sparse polynomial type and its ring context.

use super::{Monomial, MonomialOrder, PolyError};
use crate::arith::{Coeff, Rat};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A polynomial ring context: an ordered list of variable names.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> RingRef {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            assert!(seen.insert(v.clone()), "duplicate ring variable `{v}`");
        }
        Arc::new(Ring { vars })
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A new ring with extra variables appended; names must be fresh.
    pub fn extended<S: Into<String>>(&self, extra: Vec<S>) -> RingRef {
        let mut vars = self.vars.clone();
        vars.extend(extra.into_iter().map(Into::into));
        Ring::new(vars)
    }

    /// A fresh variable name based on `base` that does not clash with `self`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        for i in 0.. {
            let cand = format!("{base}_{i}");
            if self.var_index(&cand).is_none() {
                return cand;
            }
        }
        unreachable!()
    }

    pub fn same(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b) || a.vars == b.vars
    }
}

/// Sparse multivariate polynomial over the coefficient field `F`.
///
/// Terms are kept in a canonical map keyed by exponent vector with no zero
/// coefficients stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Coeff> {
    ring: RingRef,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Coeff> Poly<F> {
    pub fn zero(ring: &RingRef) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: F) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.arity()), c);
        }
        p
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        assert!(i < ring.arity());
        let mut p = Self::zero(ring);
        p.terms.insert(Monomial::var(ring.arity(), i), F::one());
        p
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Self {
        let i = ring.var_index(name).unwrap_or_else(|| panic!("no variable `{name}`"));
        Self::var(ring, i)
    }

    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn constant_coeff(&self) -> F {
        self.terms
            .get(&Monomial::one(self.ring.arity()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        debug_assert_eq!(m.0.len(), self.ring.arity());
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(Ring::same(&self.ring, &o.ring), "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert!(Ring::same(&self.ring, &o.ring), "ring mismatch");
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut n = e;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading term under `ord`; `None` for the zero polynomial.
    pub fn leading(&self, ord: &MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| ord.cmp(a, b))
    }

    /// Divides every coefficient so the leading coefficient becomes one.
    pub fn monic(&self, ord: &MonomialOrder) -> Self {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Coefficient of an exact monomial (zero when absent).
    pub fn coeff_of(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Replaces variable `i` by the polynomial `image` (same ring family as
    /// the output ring); all images must live in one ring.
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.ring.arity(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        // memoized powers per variable
        let mut pows: Vec<Vec<Poly<F>>> = images
            .iter()
            .map(|p| vec![Poly::one(&target), p.clone()])
            .collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[i].len() <= e as usize {
                    let next = pows[i].last().unwrap().mul(&images[i]);
                    pows[i].push(next);
                }
                term = term.mul(&pows[i][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluates at a point, one field value per variable.
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.arity());
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow_i(e as i64).expect("nonneg power"));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Moves the polynomial into `target` by matching variable names.
    /// Fails when a variable with nonzero exponent has no counterpart.
    pub fn transfer(&self, target: &RingRef) -> Result<Poly<F>, PolyError> {
        if Ring::same(&self.ring, target) {
            return Ok(Poly { ring: target.clone(), terms: self.terms.clone() });
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.arity()];
            for (i, &exp) in m.0.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] += exp,
                    None => return Err(PolyError::RingMismatch),
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Maps coefficients into another field.
    pub fn map_coeffs<G: Coeff>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly<F> {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut me = m.clone();
            me.0[i] -= 1;
            out.add_term(me, c.mul(&F::from_i64(e as i64)));
        }
        out
    }

    /// Substitutes field values for the assigned variables, leaving the
    /// rest symbolic. `point[i] = None` keeps variable i.
    pub fn eval_partial(&self, point: &[Option<F>]) -> Poly<F> {
        assert_eq!(point.len(), self.ring.arity());
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0.clone();
            for (i, v) in point.iter().enumerate() {
                if let Some(val) = v {
                    if exps[i] > 0 {
                        coeff = coeff.mul(&val.pow_i(exps[i] as i64).expect("nonneg power"));
                        exps[i] = 0;
                    }
                }
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Maximum total degree counting only the listed variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&i| m.0[i]).sum())
            .max()
            .unwrap_or(0)
    }

    /// The set of variable indices that occur with nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.arity()];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    /// Renders with terms sorted descending under `ord`.
    pub fn to_string_ord(&self, ord: &MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &F)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
        let mut out = String::new();
        for (idx, (m, c)) in terms.iter().enumerate() {
            let (sign, mag) = coeff_sign_mag(*c);
            if idx == 0 {
                if sign {
                    out.push('-');
                }
            } else {
                out.push_str(if sign { " - " } else { " + " });
            }
            let coeff_str = mag.to_string();
            let is_unit = mag.is_one();
            if m.is_one() {
                out.push_str(&wrap_coeff(&coeff_str));
            } else {
                if !is_unit {
                    out.push_str(&wrap_coeff(&coeff_str));
                    out.push('*');
                }
                let mut first = true;
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        out.push('*');
                    }
                    first = false;
                    out.push_str(&self.ring.vars()[i]);
                    if e > 1 {
                        out.push_str(&format!("^{e}"));
                    }
                }
            }
        }
        out
    }
}

/// Splits a coefficient into (is_negative, magnitude) for printing; for
/// cyclotomic values with no canonical sign, treat as positive.
fn coeff_sign_mag<F: Coeff>(c: &F) -> (bool, F) {
    if let Some(r) = c.to_rat() {
        if r < Rat::from_integer(0.into()) {
            return (true, c.neg());
        }
    }
    (false, c.clone())
}

fn wrap_coeff(s: &str) -> String {
    if s.contains(['+', '-', ' ', ';']) {
        format!("({s})")
    } else {
        s.to_string()
    }
}

// Display uses grevlex, the crate's default order.
impl<F: Coeff> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_ord(&MonomialOrder::GrevLex))
    }
}

impl<F: Coeff> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
