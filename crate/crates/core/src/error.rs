use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("invalid symbol {0:?}")]
    BadSymbol(String),
    #[error("symbol {0:?} declared twice")]
    DuplicateSymbol(String),
    #[error("alphabet has more than 65536 symbols")]
    AlphabetTooLarge,
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("merge table is not total over the alphabet")]
    PartialMergeTable,
    #[error("label outside the alphabet of the merge table")]
    AlphabetMismatch,
    #[error("merge table is not associative: ({0}, {1}, {2})")]
    NonAssociative(String, String, String),
    #[error("merge mode requires a merge table")]
    MissingMergeTable,
    #[error("a code must be non-empty")]
    EmptyCode,
    #[error("figure {0} is the empty figure, which cannot belong to a code")]
    EmptyFigureInCode(usize),
    #[error("figure {0} has an empty domain")]
    EmptyDomain(usize),
    #[error("half-plane normal must be non-zero")]
    DegenerateNormal,
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid PCP instance: {0}")]
    InvalidPcp(String),
    #[error("not a PCP solution: {0}")]
    NotASolution(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
