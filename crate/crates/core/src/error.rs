use thiserror::Error;

/// Errors raised while building or evolving an annealing problem.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid trit value {0}; expected one of -1, 0, 1")]
    InvalidTrit(i64),

    #[error("pattern length {found} does not match register size {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("cannot parse pattern {0:?}")]
    BadPattern(String),

    #[error("empty pattern")]
    EmptyPattern,

    #[error("duplicate pattern {0}")]
    DuplicatePattern(String),

    #[error("memory set must hold at least {required} pattern(s), got {found}")]
    TooFewPatterns { required: usize, found: usize },

    #[error("site {site} out of range for a register of {n} sites")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("off-diagonal projector needs distinct bra and ket, got {0} twice")]
    DiagonalRequested(i8),

    #[error("operator is not Hermitian (max |M - M^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("spin-operator and outer-product constructions differ by {0:e}")]
    ConstructionMismatch(f64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("time {t} outside the schedule window [0, {total}]")]
    TimeOutOfRange { t: f64, total: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("norm drifted by {drift:e} at step {step}")]
    NormDrift { step: usize, drift: f64 },

    #[error("perturbative basis invalid: 3*c2^2 = {0} exceeds 1")]
    OutsideValidityWindow(f64),

    #[error("step-size check failed: halving the step moved |a3|^2 by {0:e}")]
    StepSizeFailure(f64),

    #[error("quadrature did not converge (error estimate {0:e})")]
    QuadratureFailure(f64),

    #[error("finite-difference slope rejected: Richardson disagreement {error:e} vs value {value:e}")]
    RichardsonRejected { value: f64, error: f64 },

    #[error("regression needs at least two distinct abscissae")]
    UnderdeterminedFit,

    #[error("at gamma = {gamma}: {source}")]
    AtGamma {
        gamma: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("line {line}: {message}")]
    Scenario { line: usize, message: String },
}

impl Error {
    /// True for failures of a numerical invariant (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NormDrift { .. }
            | Error::StepSizeFailure(_)
            | Error::QuadratureFailure(_)
            | Error::RichardsonRejected { .. }
            | Error::NotHermitian(_)
            | Error::ConstructionMismatch(_) => true,
            Error::AtGamma { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
