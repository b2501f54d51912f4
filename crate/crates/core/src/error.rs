use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("subspace containment violated (residual {residual:e})")]
    NotContained { residual: f64 },

    #[error("matrix is not orthogonal (deviation {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("matrix is not skew-symmetric (deviation {deviation:e})")]
    NotSkew { deviation: f64 },

    #[error("group closure exceeded cap of {cap} elements")]
    ClosureCap { cap: usize },

    #[error("operation requires a finite group")]
    NotFinite,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("zero direction vector")]
    ZeroVector,

    #[error("vertex subset is not a face of the polytope")]
    NotAFace,

    #[error("face not present in the lattice")]
    UnknownFace,

    #[error("group action does not preserve the vertex set: {0}")]
    ActionMismatch(String),

    #[error("descent to the section failed on every start (best residual {residual:e})")]
    DescentFailed { residual: f64 },

    #[error("section axioms not validated: {0}")]
    AxiomsFailed(String),

    #[error("fat Weyl group is not finite")]
    NonFiniteWeyl,

    #[error("face carries no exposing vector in the section")]
    NoExposingVector,

    #[error("point does not lie in the section (residual {residual:e})")]
    NotInSection { residual: f64 },

    #[error("unknown registry entry `{0}`")]
    UnknownEntry(String),

    #[error("entry `{0}` is disabled")]
    DisabledEntry(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
