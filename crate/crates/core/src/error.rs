use thiserror::Error;

/// Errors raised by the engine. Every variant maps to a stable upper-case
/// code (see [`Error::code`]) that the command-line front end prints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero motive")]
    DivisionByZero,
    #[error("non-KLT input: log discrepancy {0} is not positive")]
    NonKlt(String),
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("unsupported dual graph shape: {0}")]
    BadShape(String),
    #[error("log discrepancy out of range: {0}")]
    DiscrepancyRange(String),
    #[error("intersection matrix is singular")]
    SingularMatrix,
    #[error("not log terminal: {0}")]
    NotLogTerminal(String),
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("action does not preserve the graph: {0}")]
    ActionMismatch(String),
    #[error("resolution is not G-normal: {0}")]
    NotGNormal(String),
    #[error("quotient graph has a multiple edge or loop at orbit {0}")]
    MultiEdge(String),
    #[error("expansion has a non-integral coefficient: {0}")]
    NonIntegral(String),
    #[error("degree {0} is not below 2")]
    DegreeTooLarge(String),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("numeric overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::NonKlt(_) => "NON_KLT",
            Error::NotATree(_) => "NOT_A_TREE",
            Error::BadShape(_) => "BAD_SHAPE",
            Error::DiscrepancyRange(_) => "DISCREPANCY_RANGE",
            Error::SingularMatrix => "SINGULAR_MATRIX",
            Error::NotLogTerminal(_) => "NOT_LOG_TERMINAL",
            Error::WrongShape(_) => "WRONG_SHAPE",
            Error::ActionMismatch(_) => "ACTION_MISMATCH",
            Error::NotGNormal(_) => "NOT_G_NORMAL",
            Error::MultiEdge(_) => "MULTI_EDGE",
            Error::NonIntegral(_) => "NON_INTEGRAL",
            Error::DegreeTooLarge(_) => "DEGREE_TOO_LARGE",
            Error::BoundExceeded(_) => "BOUND_EXCEEDED",
            Error::UnknownEntry(_) => "UNKNOWN_ENTRY",
            Error::MissingData(_) => "MISSING_DATA",
            Error::InvalidGraph(_) => "INVALID_GRAPH",
            Error::Overflow(_) => "OVERFLOW",
            Error::Parse(_) => "PARSE_ERROR",
        }
    }

    /// Parse errors are usage problems rather than domain failures.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
