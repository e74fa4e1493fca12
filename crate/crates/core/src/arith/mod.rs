//! Exact coefficient arithmetic: arbitrary-precision rationals and the
//! cyclotomic fields Q(zeta_q) they embed into.
//!
//! Everything downstream (polynomials, matrices, lattices) is generic over
//! the [`Coeff`] trait, whose two implementations are [`Rat`] and
//! [`CycloNum`]. Values are immutable; all operations return fresh values.

mod cyclo;
mod rat;

pub use cyclo::{cyclo_field_op, cyclotomic_poly, euler_phi, zeta_pow, CycloNum, CycloOp};
pub use rat::{parse_rat, rat, rat_i, Rat};

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("conductor mismatch: q={0} vs q={1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number literal `{0}`")]
    BadLiteral(String),
}

/// An exact field usable as polynomial/matrix coefficients.
///
/// Implementations must be canonical: equal values compare equal as data,
/// which is what makes golden tests bit-exact.
pub trait Coeff:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + std::hash::Hash + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
    fn from_rat(r: &Rat) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rat(&rat_i(n))
    }
    /// `Some` iff the value lies in Q.
    fn to_rat(&self) -> Option<Rat>;
    /// zeta_q^k when it is representable in this field.
    fn root_of_unity(q: u32, k: i64) -> Option<Self>;
    /// Integer power, negative exponents via `inv`. `None` when inverting zero.
    fn pow_i(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        Some(acc)
    }
    /// Deterministic total-order key: used to sort eigenvalues and certificates.
    fn sort_key(&self) -> Vec<Rat>;
    /// Embeds the value into the cyclotomic field (identity on `CycloNum`).
    fn to_cyclo(&self) -> CycloNum;
    /// Parse the field's canonical string form.
    fn parse(s: &str) -> Result<Self, ArithError>;
}

impl Coeff for Rat {
    fn zero() -> Self {
        Rat::new(0.into(), 1.into())
    }
    fn one() -> Self {
        Rat::new(1.into(), 1.into())
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        num::One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        if Coeff::is_zero(self) {
            None
        } else {
            Some(<Rat as num::One>::one() / self)
        }
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn root_of_unity(q: u32, k: i64) -> Option<Self> {
        let q = q as i64;
        let k = k.rem_euclid(q);
        if k == 0 {
            Some(Coeff::one())
        } else if 2 * k == q {
            Some(Coeff::neg(&Coeff::one()))
        } else {
            None
        }
    }
    fn sort_key(&self) -> Vec<Rat> {
        vec![self.clone()]
    }
    fn to_cyclo(&self) -> CycloNum {
        CycloNum::from_rational(self.clone())
    }
    fn parse(s: &str) -> Result<Self, ArithError> {
        parse_rat(s)
    }
}
