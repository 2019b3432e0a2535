use thiserror::Error;

/// Errors raised by tensor construction and the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} entries for order {order} and dimension {dim}, got {actual}")]
    EntryCount {
        order: usize,
        dim: usize,
        expected: usize,
        actual: usize,
    },
    #[error("order and dimension must be at least 1 (got order {order}, dim {dim})")]
    EmptyShape { order: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("shape mismatch: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("tensor has a negative entry {value} at {index:?}")]
    NegativeEntry { index: Vec<usize>, value: f64 },
    #[error("tensor is not a Z-tensor: positive off-diagonal entry {value} at {index:?}")]
    NotZ { index: Vec<usize>, value: f64 },
    #[error("lower endpoint exceeds upper endpoint at {index:?}")]
    EndpointOrder { index: Vec<usize> },
    #[error("exhaustive check infeasible: dimension {dim} exceeds cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("tensor is weakly reducible; no positive Perron vector")]
    WeaklyReducible,
    #[error("zero vector")]
    ZeroVector,
    #[error("vector must be strictly positive for an upper Collatz-Wielandt bound")]
    NotPositive,
    #[error("tensor is outside the interval hull at {index:?}")]
    NotMember { index: Vec<usize> },
    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
