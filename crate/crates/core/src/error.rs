use thiserror::Error;

use crate::algebra::BasisIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SvlieError {
    #[error("invalid index {index}: {reason}")]
    InvalidIndex { index: BasisIndex, reason: String },

    #[error("invalid algebra parameters: {0}")]
    InvalidParams(String),

    #[error("invalid window [{lo}, {hi}]: {reason}")]
    InvalidWindow { lo: i32, hi: i32, reason: String },

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("case error: {0}")]
    Case(String),

    #[error("deferred case: {0}")]
    DeferredCase(String),

    #[error("empty window")]
    EmptyWindow,

    #[error("{0}")]
    Parse(#[from] crate::literal::ParseDiagnostic),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = SvlieError> = std::result::Result<T, E>;
