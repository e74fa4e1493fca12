//! Problem instances and the tunables every procedure takes.

use super::templates::UnipotentTemplate;
use super::DetError;
use crate::poly::{Ring, RingRef, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    GroupSemisimple,
    GroupCommutative,
    OrbitSemisimple,
    OrbitCommutative,
    GenCyclicSemisimple,
    GenCyclicGeneral,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        Some(match s {
            "group-semisimple" => Mode::GroupSemisimple,
            "group-commutative" => Mode::GroupCommutative,
            "orbit-semisimple" => Mode::OrbitSemisimple,
            "orbit-commutative" => Mode::OrbitCommutative,
            "gen-cyclic-semisimple" => Mode::GenCyclicSemisimple,
            "gen-cyclic-general" => Mode::GenCyclicGeneral,
        _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::GroupSemisimple => "group-semisimple",
            Mode::GroupCommutative => "group-commutative",
            Mode::OrbitSemisimple => "orbit-semisimple",
            Mode::OrbitCommutative => "orbit-commutative",
            Mode::GenCyclicSemisimple => "gen-cyclic-semisimple",
            Mode::GenCyclicGeneral => "gen-cyclic-general",
        }
    }

    pub fn is_orbit(&self) -> bool {
        matches!(self, Mode::OrbitSemisimple | Mode::OrbitCommutative)
    }
}

/// How the instance variables present the ambient space: a full d x d
/// matrix listed row-major, a diagonal group with one variable per diagonal
/// entry, or a point in affine d-space (orbit modes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Matrix { d: usize },
    Diagonal { d: usize },
    Point { d: usize },
}

impl Shape {
    pub fn dim(&self) -> usize {
        match self {
            Shape::Matrix { d } | Shape::Diagonal { d } | Shape::Point { d } => *d,
        }
    }
}

/// A determination problem: variables, generator sources, the generator
/// budget s, the degree/entry bound b, and the mode.
#[derive(Debug, Clone)]
pub struct DetInstance {
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    pub s: usize,
    pub b: i64,
    pub mode: Mode,
    pub shape: Shape,
    /// number of minimal primes of the input ideal, when known
    pub q_hint: Option<u32>,
    pub templates: Option<Vec<UnipotentTemplate>>,
}

impl DetInstance {
    /// Validates counts and shapes; infers the shape from the mode and the
    /// variable count when not forced.
    pub fn new(
        vars: Vec<String>,
        gens: Vec<String>,
        s: usize,
        b: i64,
        mode: Mode,
        shape_hint: Option<&str>,
        q_hint: Option<u32>,
        templates: Option<Vec<UnipotentTemplate>>,
    ) -> Result<Self, DetError> {
        if vars.is_empty() {
            return Err(DetError::Input("no variables".into()));
        }
        if gens.is_empty() {
            return Err(DetError::Input("empty ideal: no poly lines".into()));
        }
        if s == 0 {
            return Err(DetError::Input("s must be at least 1".into()));
        }
        if b < 1 {
            return Err(DetError::Input("bound b must be at least 1".into()));
        }
        let n = vars.len();
        let square_d = (1..=n).find(|d| d * d == n);
        let shape = match (mode, shape_hint) {
            (Mode::OrbitSemisimple | Mode::OrbitCommutative, None | Some("point")) => {
                Shape::Point { d: n }
            }
            (Mode::OrbitSemisimple | Mode::OrbitCommutative, Some(other)) => {
                return Err(DetError::Input(format!(
                    "orbit modes take point variables, not shape `{other}`"
                )))
            }
            (_, Some("diagonal")) => Shape::Diagonal { d: n },
            (_, Some("matrix")) => {
                let d = square_d.ok_or_else(|| {
                    DetError::Input(format!("{n} variables do not form a square matrix"))
                })?;
                Shape::Matrix { d }
            }
            (_, Some(other)) => {
                return Err(DetError::Input(format!("unknown shape `{other}`")))
            }
            (_, None) => match square_d {
                Some(d) => Shape::Matrix { d },
                None => Shape::Diagonal { d: n },
            },
        };
        Ok(DetInstance { vars, gens, s, b, mode, shape, q_hint, templates })
    }

    pub fn ring(&self) -> RingRef {
        Ring::new(self.vars.clone())
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }
}

/// Knobs shared by all procedures; defaults complete every bundled example
/// without tuning.
#[derive(Debug, Clone)]
pub struct DetectOptions {
    /// extra cofactor degree added on ansatz escalation
    pub ansatz_extra: u32,
    /// exhaustive lattice enumeration (capped at k*b <= 6)
    pub exhaustive_lattices: bool,
    /// reduction budget per Groebner computation
    pub budget: u64,
    /// sampling bound for certificate verification
    pub verify_n: i64,
    /// cap on backtracking nodes in the point search
    pub point_search_bound: usize,
    /// worker pool size (candidate evaluation order stays deterministic)
    pub jobs: usize,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            ansatz_extra: 2,
            exhaustive_lattices: false,
            budget: DEFAULT_BUDGET,
            verify_n: 5,
            point_search_bound: 200_000,
            jobs: 1,
        }
    }
}
