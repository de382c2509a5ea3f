use thiserror::Error;

/// Errors raised by the algebra, linear algebra and path layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("letter {letter} outside alphabet 1..={d}")]
    LetterOutOfRange { letter: usize, d: usize },

    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,

    #[error("operation is undefined on the empty word")]
    EmptyWord,

    #[error("element is not homogeneous of level {level}")]
    NotHomogeneous { level: usize },

    #[error("word {0} is not a Lyndon word")]
    NotLyndon(String),

    #[error("level mismatch: (d={d1}, n={n1}) vs (d={d2}, n={n2})")]
    LevelMismatch { d1: usize, n1: usize, d2: usize, n2: usize },

    #[error("increment has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
