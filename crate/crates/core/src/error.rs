use thiserror::Error;

/// Errors produced by the decomposition, protocol and oracle layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state vector length {len} is not 2^{num_qubits}")]
    BadStateLength { num_qubits: usize, len: usize },

    #[error("matrix entry count {len} does not match {rows}x{cols}")]
    BadMatrixShape {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("non-finite amplitude at index {index}")]
    NonFinite { index: usize },

    #[error("qubit count must be at least 1")]
    NoQubits,

    #[error("{what}: expected {expected}, got {actual}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),

    #[error("{what} is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { what: &'static str, norm_sqr: f64 },

    #[error("zero-norm {0}")]
    ZeroNorm(&'static str),

    #[error("Bell index {0} out of range 1..=4")]
    BellIndexOutOfRange(u8),

    #[error("channel must contain at least one pair")]
    EmptyChannel,

    /// Pair indices are 1-based.
    #[error("teleportation criterion Y1*Y4 != Y2*Y3 fails for pair(s) {}", fmt_pairs(.pairs))]
    NotInvertible { pairs: Vec<usize> },

    #[error("N = {n} exceeds the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },
}

fn fmt_pairs(pairs: &[usize]) -> String {
    pairs
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
