use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain must contain at least one element")]
    EmptyDomain,
    #[error("duplicate element label {label:?}")]
    DuplicateLabel { label: String },
    #[error("unknown element label {label:?}")]
    UnknownLabel { label: String },
    #[error("sequences must be non-empty")]
    EmptySequence,
    #[error("element index {index} out of range for domain of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("sequences belong to different domains")]
    DomainMismatch,
    #[error("expected equal lengths, got {left} and {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("repetition count must be at least 1")]
    ZeroRepeat,
    #[error("position {position} out of range for sequence of length {length}")]
    PositionOutOfRange { position: usize, length: usize },
    #[error("replication to {required} positions exceeds the cap of {cap}")]
    ReplicationCapExceeded { required: usize, cap: usize },
    #[error("comparison at length {required} exceeds the comparator's bound of {max}")]
    UnsupportedLength { required: usize, max: usize },
    #[error("invalid evaluator spec {spec:?}")]
    InvalidEvaluator { spec: String },
    #[error("discount factor {value} must satisfy 0 < delta < 1")]
    InvalidDiscount { value: String },
    #[error("invalid rational literal {text:?}")]
    InvalidRational { text: String },
    #[error("contradictory table entries for ({left:?}, {right:?})")]
    TableContradiction { left: String, right: String },
    #[error("table is missing an entry for ({left:?}, {right:?})")]
    TableIncomplete { left: String, right: String },
    #[error("unknown check id {id:?}")]
    UnknownCheck { id: String },
    #[error("invalid bound: {reason}")]
    InvalidBound { reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
