//! The determination and synthesis procedures: group checks, the parametric
//! change-of-variables solver, group determination, orbit-closure
//! determination, the cyclic-generator algorithms, and the independent
//! certificate verifier every YES answer must pass.

mod certificate;
mod closure;
mod containment;
mod cyclic;
mod groupchk;
mod groupdet;
mod instance;
mod orbitdet;
mod ratpoint;
mod templates;
mod verify;

pub use certificate::{Certificate, CheckResult, VerifyReport};
pub use closure::{group_closure_ideal, orbit_closure_ideal};
pub use containment::{containment_conditions, equality_conditions, ContainmentProblem};
pub use cyclic::{gen_general_cyclic, gen_semisimple_cyclic};
pub use groupchk::{is_alg_group, is_commutative_group};
pub use groupdet::{group_det_commutative, group_det_semisimple};
pub use instance::{DetInstance, DetectOptions, Mode, Shape};
pub use orbitdet::{orbit_condition_ideal, orbit_det_commutative, orbit_det_semisimple};
pub use ratpoint::{rational_point, rational_points, PointSearch};
pub use templates::{default_template_family, UnipotentTemplate};
pub use verify::verify_certificate;

use crate::arith::CycloNum;
use crate::decomp::DecompError;
use crate::lattice::LatticeError;
use crate::matgroup::MatError;
use crate::poly::{Budget, PolyError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("cofactor ansatz unsatisfiable at this degree bound")]
    AnsatzDegreeExceeded,
    #[error("bad input: {0}")]
    Input(String),
}

impl DetError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            DetError::Poly(PolyError::ResourceLimit)
                | DetError::Decomp(DecompError::Poly(PolyError::ResourceLimit))
        )
    }
}

/// The answer of a determination run. YES always carries a certificate that
/// already passed the independent verifier.
#[derive(Debug, Clone)]
pub enum Answer {
    Yes(Box<Certificate>),
    No { reason: String },
    Unknown { reason: String, resource_limited: bool },
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub answer: Answer,
    pub log: Vec<String>,
}

impl Verdict {
    pub fn yes(cert: Certificate, log: Vec<String>) -> Self {
        Verdict { answer: Answer::Yes(Box::new(cert)), log }
    }
    pub fn no(reason: impl Into<String>, log: Vec<String>) -> Self {
        Verdict { answer: Answer::No { reason: reason.into() }, log }
    }
    pub fn unknown(reason: impl Into<String>, resource_limited: bool, log: Vec<String>) -> Self {
        Verdict {
            answer: Answer::Unknown { reason: reason.into(), resource_limited },
            log,
        }
    }
}

/// Runs the procedure selected by the instance's mode.
pub fn detect(inst: &DetInstance, opts: &DetectOptions) -> Result<Verdict, DetError> {
    match inst.mode {
        Mode::OrbitSemisimple => orbit_det_semisimple(inst, opts),
        Mode::OrbitCommutative => orbit_det_commutative(inst, opts),
        Mode::GroupSemisimple => group_det_semisimple(inst, opts),
        Mode::GroupCommutative => group_det_commutative(inst, opts),
        Mode::GenCyclicSemisimple => gen_semisimple_cyclic(inst, opts),
        Mode::GenCyclicGeneral => gen_general_cyclic(inst, opts),
    }
}

pub(crate) fn fresh_budget(opts: &DetectOptions) -> Budget {
    Budget::new(opts.budget)
}

/// Embeds rational-string generators into the cyclotomic field for
/// verification work.
pub(crate) fn parse_gens_cyclo(
    sources: &[String],
    ring: &crate::poly::RingRef,
) -> Result<Vec<crate::poly::Poly<CycloNum>>, DetError> {
    sources
        .iter()
        .map(|s| crate::poly::parse_poly::<CycloNum>(s, ring).map_err(DetError::from))
        .collect()
}

#[cfg(test)]
mod tests;
