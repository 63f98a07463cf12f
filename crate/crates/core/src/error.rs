use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unknown track `{0}`")]
    UnknownTrack(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("variable `{name}` used as {used} but declared {declared}")]
    SortMismatch {
        name: String,
        used: &'static str,
        declared: &'static str,
    },

    #[error("empty input word")]
    EmptyInput,

    #[error("origin graphs do not share input and output words")]
    WordMismatch,

    #[error("position {0} out of range")]
    PositionOutOfRange(usize),

    #[error("invalid origin graph: {0}")]
    InvalidGraph(String),

    #[error("invalid transducer: {0}")]
    InvalidTransducer(String),

    #[error("not interleavable: {0}")]
    NotInterleavable(String),

    #[error("k-traversal exceeded: no free {direction} label among {k} at position {position}")]
    TraversalExceeded {
        k: usize,
        position: usize,
        direction: &'static str,
    },

    #[error("{0}")]
    Unsupported(String),

    #[error("caps insufficient: {0}")]
    CapsInsufficient(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
