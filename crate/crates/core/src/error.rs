use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("bad token `{token}` (expected `{prefix}<k>` or `{prefix}<k>^-1`)")]
    Token { token: String, prefix: char },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("need at least {min} strands, got {got}")]
    TooFewStrands { got: usize, min: usize },
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("{what} budget of {limit} exceeded")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid intersection table: {0}")]
    InvalidTable(String),
    #[error("invalid series descriptor: {0}")]
    InvalidSeries(String),
    #[error("index {index} out of range for a factorization of length {len}")]
    MoveOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
