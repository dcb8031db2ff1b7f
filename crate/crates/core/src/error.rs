use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("cannot parse polynomial {input:?}: {reason}")]
    PolyParse { input: String, reason: String },

    #[error("ring map image of t{index} is not invertible in the target")]
    NotInvertible { index: usize },

    #[error("ring map supplies {given} images but the polynomial has {needed} variables")]
    RingMapArity { given: usize, needed: usize },

    #[error("diagram: {0}")]
    Diagram(String),

    #[error("unknown arc {0:?}")]
    UnknownArc(String),

    #[error("crossing {crossing:?}: under-strand arcs lie on different components")]
    UnderComponentMismatch { crossing: String },

    #[error("component {0} has no arcs")]
    EmptyComponent(usize),

    #[error("component index {index} out of range 1..={mu}")]
    ComponentOutOfRange { index: usize, mu: usize },

    #[error("cannot delete a component of a one-component diagram")]
    SingleComponent,

    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("presentation: {0}")]
    Presentation(String),

    #[error("alexander polynomial needs a one-variable presentation, got {0} variables")]
    NotOneVariable(usize),

    #[error("module spec: {0}")]
    ModuleSpec(String),

    #[error("dimension mismatch: presentation has {presentation} variables, module spec acts by {spec}")]
    DimensionMismatch { presentation: usize, spec: usize },

    #[error("count overflow while enumerating colorings")]
    CountOverflow,

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
