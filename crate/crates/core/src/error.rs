use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed word {0:?}")]
    Parse(String),

    #[error("letter {letter} at position {position} is outside the alphabet 1..={alphabet}")]
    LetterOutOfRange {
        letter: u32,
        position: usize,
        alphabet: u32,
    },

    #[error("{0:?} is not in dense-rank canonical form")]
    NonCanonicalPattern(Vec<u8>),

    #[error("letter map {0:?} is not a bijection on its alphabet")]
    NotABijection(Vec<u8>),

    #[error("pattern length {k} exceeds the supported cap of {cap}")]
    SizeCap { k: usize, cap: usize },

    #[error("search space of {alphabet}^{length} words exceeds the budget of {budget}")]
    BudgetExceeded {
        alphabet: usize,
        length: usize,
        budget: u64,
    },

    #[error("no word of length <= {n_max} over {d} letters contains every arrangement of length {k}")]
    NotFound { k: usize, d: usize, n_max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("denominator vanishes at t = 0; the function has no power series expansion")]
    NotExpandable,

    #[error("pole at t = {0}")]
    Pole(String),

    #[error("generating function evaluates to {0} at t = 1, not 1")]
    NotNormalized(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
