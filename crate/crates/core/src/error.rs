use std::fmt;

use thiserror::Error;

/// A syntax error located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    /// Moves a single-line error onto `line`, shifting its column by `offset`.
    pub fn relocate(mut self, line: usize, offset: usize) -> Self {
        self.line = line;
        self.column += offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("words live over different alphabets")]
    AlphabetMismatch,
    #[error("words live in different modes ({0} vs {1})")]
    ModeMismatch(crate::word::Mode, crate::word::Mode),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("permutation degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("torus knot parameters ({0}, {1}) must both be at least 2 and coprime")]
    InvalidTorusKnot(i64, i64),
    #[error("degree {0} exceeds the search guard of {1}")]
    DegreeGuard(usize, usize),
    #[error("max_cosets must be at least 1")]
    ZeroCosetLimit,
    #[error("coset enumeration exceeded {0} cosets")]
    CosetLimit(usize),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
