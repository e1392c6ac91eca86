use thiserror::Error;

use crate::circuit::QasmError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} is outside 1..=20")]
    QubitCount(usize),

    #[error("basis index {index} out of range for dimension {dim}")]
    BasisIndex { index: usize, dim: usize },

    #[error("qubit {qubit} out of range for a {n}-qubit register")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("control and target are both qubit {0}")]
    SameQubit(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("{name} = {value} is outside [0, {max}]")]
    StrategyDomain {
        name: &'static str,
        value: f64,
        max: &'static str,
    },

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("opponent count {0} is outside 0..=3")]
    OpponentCount(usize),

    #[error("payoff table: {0}")]
    PayoffTable(String),

    #[error("incomplete profile table: missing {0}")]
    IncompleteTable(String),

    #[error("strategy {0} is not in the analyzed strategy set")]
    UnknownStrategy(char),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error(transparent)]
    Qasm(#[from] QasmError),
}
