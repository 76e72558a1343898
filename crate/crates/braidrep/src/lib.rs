//! Exact-arithmetic construction and analysis of braid group representations
//! coming from unitary braided vector spaces.
//!
//! All semantic computation happens over cyclotomic fields `Q(zeta_N)` with
//! arbitrary-precision rational coefficients; floating point is used for
//! display only.

pub mod bvs;
pub mod cli;
pub mod closure;
pub mod cyclo;
pub mod gaussian;
pub mod grouptype;

pub use bvs::{BraidWord, Bvs};
pub use cyclo::{CycMatrix, CycNum};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero in a cyclotomic field")]
    DivisionByZero,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size guard: {0} (pass the override flag to proceed)")]
    SizeGuard(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invariant `{name}` violated: {detail}")]
    Invariant { name: String, detail: String },
    #[error("construction self-check failed: {0}")]
    ConstructionCheckFailed(String),
    #[error("twist breaks the Yang-Baxter equation at triple {0:?}")]
    TwistBreaksYbe((usize, usize, usize)),
    #[error("Yang-Baxter equation fails at entry {0:?}")]
    YbeFails((usize, usize)),
    #[error("Yetter-Drinfeld axiom violated: {0}")]
    AxiomViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invariant(name: &str, detail: impl Into<String>) -> Self {
        Error::Invariant { name: name.to_string(), detail: detail.into() }
    }
}
