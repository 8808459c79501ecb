use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("relation is cyclic: `{0}` precedes itself after closure")]
    Cycle(String),
    #[error("relation is not transitive: {0} < {1} < {2} but not {0} < {2}")]
    NotTransitive(String, String, String),
    #[error("poset has {0} elements, at most {1} are supported")]
    TooLarge(usize, usize),
    #[error("element sets differ")]
    ElementMismatch,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("interval of `{0}` has its left endpoint after its right endpoint")]
    InvalidInterval(String),
    #[error("representation is not unit")]
    NotUnit,
    #[error("all trapezoids are degenerate segments; cannot rescale")]
    DegenerateScale,
    #[error("`{0:?}` is not an autonomous set")]
    NotAutonomous(Vec<String>),
    #[error("limit of {0} exceeded")]
    LimitExceeded(usize),
    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),
    #[error("corpus entry `{name}` failed validation: {msg}")]
    CorpusInvalid { name: String, msg: String },
    #[error("search budget exhausted")]
    Inconclusive,
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
