use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {0:?} is not weakly decreasing")]
    NonDominant(Vec<i64>),

    #[error("expected a weight of length {expected}, got length {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("weight {0:?} has a negative entry where a partition is required")]
    NegativeEntry(Vec<i64>),

    #[error("cannot parse weight {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("exterior power index {0} is outside 0..=20")]
    WedgeIndex(usize),

    #[error("illegal differential position: {0}")]
    IllegalOverride(String),

    #[error("inconsistent rank override: {0}")]
    InconsistentOverride(String),

    #[error("unknown override preset {0:?}")]
    UnknownPreset(String),

    #[error("override file: {0}")]
    OverrideFile(String),

    #[error("a surviving E-infinity term sits in total degree {degree}, outside 0..=4")]
    DegreeOutOfRange { degree: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
