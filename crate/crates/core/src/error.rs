use thiserror::Error;

use crate::ring::RingTag;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: RingTag, found: RingTag },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("center cannot supply {needed} admissible elements")]
    CenterTooSmall { needed: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not an involution")]
    NotInvolution,
    #[error("construction requires characteristic other than 2")]
    CharTwo,
    #[error("construction requires characteristic 2")]
    NotCharTwo,
    #[error("element is not central")]
    NonCentralRoot,
    #[error("roots do not match the companion coefficients")]
    RootMismatch,
    #[error("roots are not pairwise distinct")]
    RepeatedRoot,
    #[error("polynomial does not annihilate the matrix")]
    AnnihilatorFails,
    #[error("polynomial value is not invertible")]
    NotInvertible,
    #[error("the field of three elements needs three factors")]
    Gf3Unsupported,
    #[error("over GF(2) the only nonsingular product of diagonalizable matrices is I")]
    Gf2NonsingularUnreachable,
    #[error("conjugator condition estimate {0:e} exceeds the limit")]
    IllConditioned(f64),
    #[error("operation not supported over {0}")]
    UnsupportedRing(RingTag),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("x must be nonzero")]
    ZeroX,
    #[error("no decomposition found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable kebab-case identifier used in CLI error payloads.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::RingMismatch { .. } => "ring-mismatch",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::Singular => "singular",
            Error::CenterTooSmall { .. } => "center-too-small",
            Error::NotNilpotent => "not-nilpotent",
            Error::NotInvolution => "not-involution",
            Error::CharTwo => "char-two",
            Error::NotCharTwo => "not-char-two",
            Error::NonCentralRoot => "non-central-root",
            Error::RootMismatch => "root-mismatch",
            Error::RepeatedRoot => "repeated-root",
            Error::AnnihilatorFails => "annihilator-fails",
            Error::NotInvertible => "not-invertible",
            Error::Gf3Unsupported => "gf3-unsupported",
            Error::Gf2NonsingularUnreachable => "gf2-nonsingular-unreachable",
            Error::IllConditioned(_) => "ill-conditioned",
            Error::UnsupportedRing(_) => "unsupported-ring",
            Error::TooLarge(_) => "too-large",
            Error::ZeroX => "zero-x",
            Error::NotFound(_) => "not-found",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
