//! Sparse multivariate polynomials over an exact field, text parsing, and
//! the Groebner-basis engine with the ideal operations built on it.

mod groebner;
mod ideal;
mod monomial;
mod parse;
#[allow(clippy::module_inception)]
mod poly;

pub use groebner::{groebner, normal_form, Budget, DEFAULT_BUDGET};
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use poly::{Poly, Ring, RingRef};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("computation budget exceeded")]
    ResourceLimit,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("polynomials from different rings")]
    RingMismatch,
}
