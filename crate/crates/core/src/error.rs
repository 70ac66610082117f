use thiserror::Error;

use crate::pmspace::AxiomViolation;
use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input has the wrong shape (non-square matrix, negative entry, label mismatch).
    #[error("structural input error: {0}")]
    Structure(String),

    /// Input could not be decoded at all.
    #[error("schema error: {0}")]
    Schema(String),

    /// A well-formed matrix that is not a partial metric.
    #[error("{}", describe_violations(.0))]
    Axioms(Vec<AxiomViolation>),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0}")]
    Lipschitz(Box<LipschitzViolation>),

    #[error("topology generation refused: carrier has {points} points, cap is {cap}")]
    TopologyCap { points: usize, cap: usize },

    /// A generator produced an invalid space. Always a bug.
    #[error("internal defect: {0}")]
    Internal(String),
}

/// Weights breaking `|w(x) - w(y)| <= 2 d(x,y)`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("weights violate |w(x) - w(y)| <= 2 d(x,y) at points ({x}, {y}): |{wx} - {wy}| > 2 * {d}")]
pub struct LipschitzViolation {
    pub x: usize,
    pub y: usize,
    pub wx: Rational,
    pub wy: Rational,
    pub d: Rational,
}

fn describe_violations(violations: &[AxiomViolation]) -> String {
    match violations.first() {
        Some(first) => format!(
            "matrix violates the partial metric axioms ({} violation(s)); first: {first}",
            violations.len()
        ),
        None => "matrix violates the partial metric axioms".to_string(),
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
