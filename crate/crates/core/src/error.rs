use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("pattern violation: {0}")]
    PatternViolation(String),

    #[error("degree vector must be nonzero")]
    ZeroVector,

    #[error("grading is not standard: {0}")]
    NonStandard(String),

    #[error("unsupported grading: {0}")]
    UnsupportedGrading(String),

    #[error("grading is not positive: {0}")]
    NotPositive(String),

    #[error("prime does not contain R_1: no directions, anchor theory undefined")]
    NoDirections,

    #[error("end undefined: ideal has no directions (the end of H^i is not defined when dir(b) is empty)")]
    EndUndefined,

    #[error("hypothesis fails: R_m is not nilpotent on the module, witness monomial of degree {witness:?}")]
    NotNilpotent { witness: Vec<i64> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("engine inconsistency: {0}")]
    Inconsistent(String),

    #[error("unknown {kind} '{name}'")]
    UnknownName { kind: &'static str, name: String },

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
