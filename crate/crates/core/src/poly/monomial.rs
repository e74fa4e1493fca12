//! Exponent vectors and the monomial orders the engine supports.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// A power product, stored as one exponent per ring variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`; caller guarantees divisibility.
    pub fn div_into(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when every variable in `vars` has exponent zero.
    pub fn avoids(&self, vars: &[usize]) -> bool {
        vars.iter().all(|&i| self.0[i] == 0)
    }
}

/// Total order on monomials, compatible with multiplication.
///
/// `Block(k)` is the elimination order that ranks the first `k` variables
/// above the rest (graded reverse lexicographic within each block).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Block(k) => {
                grevlex(&a.0[..*k], &b.0[..*k]).then_with(|| grevlex(&a.0[*k..], &b.0[*k..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                // larger exponent in the *last* differing place loses
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn orders_rank_standard_examples() {
        let lex = MonomialOrder::Lex;
        // x > y^5 under lex with x before y
        assert_eq!(lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let grev = MonomialOrder::GrevLex;
        // degree decides first
        assert_eq!(grev.cmp(&m(&[0, 5]), &m(&[1, 0])), Ordering::Greater);
        // x*z vs y^2 (same degree): grevlex prefers smaller last exponent
        assert_eq!(grev.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        // x*y vs z^2
        assert_eq!(grev.cmp(&m(&[1, 1, 0]), &m(&[0, 0, 2])), Ordering::Greater);
        // block order eliminates the first block regardless of degrees
        let blk = MonomialOrder::Block(1);
        assert_eq!(blk.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
    }

    #[test]
    fn order_is_multiplicative() {
        let orders = [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block(2)];
        let mons = [
            m(&[0, 0, 0]),
            m(&[1, 0, 2]),
            m(&[0, 3, 1]),
            m(&[2, 2, 0]),
            m(&[1, 1, 1]),
        ];
        let shift = m(&[1, 0, 2]);
        for ord in &orders {
            for a in &mons {
                for b in &mons {
                    let before = ord.cmp(a, b);
                    let after = ord.cmp(&a.mul(&shift), &b.mul(&shift));
                    assert_eq!(before, after);
                    if a != b {
                        assert_ne!(ord.cmp(a, b), Ordering::Equal);
                    }
                }
                // 1 is minimal
                if !a.is_one() {
                    assert_eq!(ord.cmp(a, &Monomial::one(3)), Ordering::Greater);
                }
            }
        }
    }
}
