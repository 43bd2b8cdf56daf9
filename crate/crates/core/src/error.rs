use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("spec error: {0}")]
    Spec(String),
    #[error("insufficient horizon: position/value {position} cannot be certified with the realized generators")]
    InsufficientHorizon { position: String },
    #[error("density cap exceeded for a set of {size} elements")]
    DensityCap { size: usize },
    #[error("level {level} exceeds the level cap {cap}")]
    LevelCap { level: usize, cap: usize },
    #[error("level {0} is not saturated")]
    Unsaturated(usize),
    #[error("set is empty: {0}")]
    EmptySet(String),
    #[error("hypothesis violated for a = {a}: {reason}")]
    HypothesisViolated { a: String, reason: String },
    #[error("essential-hole component for a = {a} is empty (classification or depth failure)")]
    EmptyComponent { a: String },
    #[error("window too short: need {needed} bits, have {have}")]
    WindowTooShort { needed: usize, have: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("CRT system inconsistent")]
    CrtInconsistent,
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
