use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order relation contains a cycle through `{0}`")]
    CycleDetected(String),

    #[error("not a lattice: `{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, &'static str),

    #[error("poset has no bottom or no top element")]
    NoBoundedElements,

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("map is not total: no image for `{0}`")]
    MapNotTotal(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("monomials or polynomials come from different variable sets")]
    VariableSetMismatch,

    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("ideal shape not recognized: {0}")]
    ShapeNotRecognized(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
