use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("point has {got} coordinates, ring has {expected} variables")]
    PointLength { expected: usize, got: usize },
    #[error("substitution has {got} images for {expected} variables")]
    ImageCount { expected: usize, got: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid size {size} for type {kind}")]
    InvalidSize { kind: String, size: usize },
    #[error("unsupported algebra: {0}")]
    Unsupported(String),
    #[error("vector has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("structure check failed: {0}")]
    Structure(String),
    #[error("pairing between centralizers of e and f is degenerate")]
    DegeneratePairing,
    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("shift order {order} exceeds degree {degree}")]
    ShiftOrder { order: u32, degree: u32 },
    #[error("{generators} generators in a ring with {arity} variables")]
    TooManyGenerators { generators: usize, arity: usize },
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("element is not a regular nilpotent")]
    NotRegularNilpotent,
    #[error("no regular point found after {0} attempts")]
    NoRegularPoint(usize),
    #[error("sample {0} does not lie in the nilpotent bicone")]
    NotInBicone(usize),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("cache: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
