//! Exact-arithmetic kernel for deciding whether a variety is (the closure
//! of) an s-generated commutative matrix group, or an orbit closure under
//! such a group, and for synthesizing certifying generators.
//!
//! Layering, bottom to top:
//!
//! - [`arith`]: rationals and cyclotomic fields Q(zeta_q);
//! - [`poly`]: sparse multivariate polynomials and the Groebner engine;
//! - [`lattice`]: integer lattices, Hermite/Smith normal forms, torsion data;
//! - [`matgroup`]: exact dense linear algebra, Jordan-Chevalley, log/exp;
//! - [`decomp`]: minimal primes for the binomial/torsion-coset class;
//! - [`detproc`]: the determination and synthesis procedures plus the
//!   independent certificate verifier.

pub mod arith;
pub mod decomp;
pub mod detproc;
pub mod lattice;
pub mod matgroup;
pub mod poly;
