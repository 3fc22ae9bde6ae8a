use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("invalid Lie type: {0}")]
    InvalidLieType(String),

    #[error("elements belong to different root systems ({0} vs {1})")]
    MixedRootSystems(String, String),

    #[error("simple reflection index {index} out of range 1..={rank}")]
    LetterOutOfRange { index: usize, rank: usize },

    #[error("word ({0}) is not reduced")]
    NotReduced(String),

    #[error("diagram position {position} out of range 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("invalid Cauchon diagram: {0}")]
    InvalidDiagram(String),

    #[error("y = ({y}) is not below w = ({w}) in the Bruhat order")]
    NotBelow { y: String, w: String },

    #[error("invalid bicharacter: {0}")]
    InvalidBicharacter(String),

    #[error("root has nonzero coordinate at index {0} outside the bicharacter support")]
    OutsideSupport(usize),

    #[error("invalid relations lattice: {0}")]
    InvalidRelations(String),

    #[error("non-integral value where an integer is required: {0}")]
    NonIntegral(String),

    #[error("group too large for full enumeration: {order} > {limit}")]
    TooLarge { order: u128, limit: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn parse(line: usize, field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field: field.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
