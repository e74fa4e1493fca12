//! Parametrized upper-unitriangular shapes for the unipotent part of an
//! orbit search. The default family has one repeated super-diagonal
//! parameter per Jordan-block profile; user files may supply richer shapes.

use super::DetError;
use crate::arith::Coeff;
use crate::matgroup::Mat;
use crate::poly::{Poly, RingRef};
use serde::{Deserialize, Serialize};

/// One entry of the pattern: a constant 0/1 or a named parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternEntry {
    Const(u8),
    Param(String),
}

/// A d x d upper-unitriangular shape: ones on the diagonal, zeros below,
/// and 0/1/parameter entries above.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotentTemplate {
    pub pattern: Vec<Vec<PatternEntry>>,
    pub params: Vec<String>,
}

impl UnipotentTemplate {
    pub fn identity(d: usize) -> Self {
        let pattern = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| PatternEntry::Const(u8::from(i == j)))
                    .collect()
            })
            .collect();
        UnipotentTemplate { pattern, params: vec![] }
    }

    /// Single-parameter pattern with the parameter on the super-diagonal
    /// slots of each Jordan block of the given profile (sizes sum to d).
    pub fn jordan_profile(profile: &[usize], param: &str) -> Self {
        let d: usize = profile.iter().sum();
        let mut tpl = Self::identity(d);
        let mut base = 0usize;
        let mut used = false;
        for &block in profile {
            for off in 0..block.saturating_sub(1) {
                tpl.pattern[base + off][base + off + 1] = PatternEntry::Param(param.to_string());
                used = true;
            }
            base += block;
        }
        if used {
            tpl.params = vec![param.to_string()];
        }
        tpl
    }

    pub fn dim(&self) -> usize {
        self.pattern.len()
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    pub fn validate(&self) -> Result<(), DetError> {
        let d = self.pattern.len();
        for (i, row) in self.pattern.iter().enumerate() {
            if row.len() != d {
                return Err(DetError::Input("template pattern is not square".into()));
            }
            for (j, e) in row.iter().enumerate() {
                match e {
                    PatternEntry::Const(c) => {
                        let expect_diag = i == j;
                        if expect_diag && *c != 1 {
                            return Err(DetError::Input("template diagonal must be 1".into()));
                        }
                        if i > j && *c != 0 {
                            return Err(DetError::Input(
                                "template must be upper triangular".into(),
                            ));
                        }
                        if !expect_diag && i < j && *c > 1 {
                            return Err(DetError::Input("constant entries are 0 or 1".into()));
                        }
                    }
                    PatternEntry::Param(name) => {
                        if i >= j {
                            return Err(DetError::Input(
                                "parameters belong strictly above the diagonal".into(),
                            ));
                        }
                        if !self.params.contains(name) {
                            return Err(DetError::Input(format!(
                                "pattern uses undeclared parameter `{name}`"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The set of (i, j) positions carrying a nonzero off-diagonal entry.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for (i, row) in self.pattern.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if i != j && *e != PatternEntry::Const(0) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Instantiate with concrete parameter values, in declaration order.
    pub fn instantiate<F: Coeff>(&self, values: &[F]) -> Mat<F> {
        assert_eq!(values.len(), self.params.len());
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = match &self.pattern[i][j] {
                    PatternEntry::Const(c) => F::from_i64(*c as i64),
                    PatternEntry::Param(name) => {
                        let idx = self.params.iter().position(|p| p == name).unwrap();
                        values[idx].clone()
                    }
                };
            }
        }
        m
    }

    /// The pattern as a matrix of polynomials over a ring that contains the
    /// parameter variables by name.
    pub fn symbolic<F: Coeff>(&self, ring: &RingRef) -> Vec<Vec<Poly<F>>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| match &self.pattern[i][j] {
                        PatternEntry::Const(c) => {
                            Poly::constant(ring, F::from_i64(*c as i64))
                        }
                        PatternEntry::Param(name) => Poly::var_named(ring, name),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Integer partitions of d in a fixed order: descending part lists,
/// lexicographically largest first ([d], [d-1,1], ...).
fn partitions(d: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(d, d, &mut vec![], &mut out);
    out
}

/// The default search family: the identity first, then one single-parameter
/// template per nontrivial Jordan-block profile, ordered by ascending
/// nilpotency (fewest off-diagonal slots first).
pub fn default_template_family(d: usize) -> Vec<UnipotentTemplate> {
    let mut out = vec![UnipotentTemplate::identity(d)];
    let mut shaped: Vec<(usize, Vec<usize>)> = partitions(d)
        .into_iter()
        .filter(|p| p.iter().any(|&b| b > 1))
        .map(|p| {
            let slots: usize = p.iter().map(|&b| b - 1).sum();
            (slots, p)
        })
        .collect();
    shaped.sort();
    for (_, profile) in shaped {
        out.push(UnipotentTemplate::jordan_profile(&profile, "l"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rat};
    use crate::poly::Ring;

    #[test]
    fn family_shape() {
        let fam = default_template_family(4);
        // identity + profiles [2,1,1], [2,2], [3,1], [4]
        assert_eq!(fam.len(), 5);
        assert_eq!(fam[0].param_count(), 0);
        for t in &fam {
            t.validate().unwrap();
        }
        let slots: Vec<usize> = fam.iter().map(|t| t.support().len()).collect();
        assert_eq!(slots, vec![0, 1, 2, 2, 3]);
    }

    #[test]
    fn instantiation_matches_pattern() {
        let tpl = UnipotentTemplate::jordan_profile(&[3, 1], "l");
        let m: Mat<Rat> = tpl.instantiate(&[rat(-1, 5)]);
        assert_eq!(m[(0, 1)], rat(-1, 5));
        assert_eq!(m[(1, 2)], rat(-1, 5));
        assert_eq!(m[(0, 2)], rat(0, 1));
        assert_eq!(m[(3, 3)], rat(1, 1));
        assert!(crate::matgroup::is_unipotent(&m));
        let ring = Ring::new(vec!["l", "x"]);
        let sym = tpl.symbolic::<Rat>(&ring);
        assert_eq!(sym[0][1].to_string(), "l");
        assert_eq!(sym[2][3].to_string(), "0");
    }
}
