use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series is not invertible: leading coefficient is zero")]
    NotInvertible,
    #[error("scalar is zero and has no inverse")]
    ZeroDivision,
    #[error("point {0} is not in the upper half plane")]
    OutsideUpperHalfPlane(String),
    #[error("invalid product factor: {0}")]
    InvalidFactor(String),
    #[error("invalid weight {0}")]
    InvalidWeight(i64),
    #[error("lattice sum for weight {0} is not absolutely convergent")]
    NotAbsolutelyConvergent(i64),
    #[error("Q_{0} is undefined at the pair (1, 1)")]
    UndefinedAtTrivialPair(u32),
    #[error("z is outside the convergence region |q_tau| < |q_z| < 1")]
    OutsideConvergenceRegion,
    #[error("window {window} too small: must exceed {required}")]
    WindowTooSmall { window: u64, required: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid dimension l = {0}")]
    InvalidDimension(u32),
    #[error("automorphism {0} has no eigenvalue on this module")]
    UnknownAutomorphism(String),
    #[error("enumeration exceeds the state budget of {0}")]
    BudgetExceeded(u64),
    #[error("unsupported twist pair ({0}, {1})")]
    UnsupportedPair(String, String),
    #[error("matrix ({0} {1}; {2} {3}) does not have determinant 1")]
    NotUnimodular(i64, i64, i64, i64),
    #[error("right-hand side vanishes at sample {0}")]
    DegenerateSample(String),
    #[error("bad sample set: {0}")]
    BadSamples(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
