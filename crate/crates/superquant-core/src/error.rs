//! Error type shared by the whole engine.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coordinate index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("torsion symmetry violation: {0}")]
    Torsion(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("construction undefined at superdimension {superdim}: {context}")]
    Superdimension { superdim: i64, context: String },
    #[error("critical density shift: gamma({s}) = 0 at (k, l) = ({k}, {l})")]
    Critical { k: u32, l: u32, s: i64 },
    #[error("matrix outside the supported Berezinian class: {0}")]
    UnsupportedBerezinian(String),
    #[error("unsupported exact power: {0}")]
    UnsupportedPower(String),
    #[error("density weight mismatch: expected {expected}, got {got}")]
    WeightMismatch { expected: String, got: String },
    #[error("non-homogeneous input where a parity-homogeneous value is required: {0}")]
    NonHomogeneous(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
