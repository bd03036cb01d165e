use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid register: {0}")]
    InvalidRegister(String),
    #[error("wire {wire} out of range for a {num_wires}-wire register")]
    WireOutOfRange { wire: usize, num_wires: usize },
    #[error("wire {0} listed more than once")]
    DuplicateWire(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("register shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("operator is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("states are not orthonormal (max deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("invalid permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ambiguous decode: overlaps {best} and {runner_up} are within tolerance")]
    AmbiguousDecode { best: f64, runner_up: f64 },
    #[error("measurement states do not span the reachable subspace (total probability {0})")]
    IncompleteBasis(f64),
    #[error("protocol check failed: {0}")]
    ProtocolFailure(String),
    #[error("register too large for exhaustive scan: {0} wires")]
    TooLarge(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
