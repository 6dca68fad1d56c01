use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The cyclic permutation and orbit machinery are only defined on nonempty words.
    #[error("operation is undefined on the empty word")]
    EmptyWord,
    #[error("letter {letter} lies outside the alphabet [1, {n}]")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("direction {dir} lies outside [1, {n}]")]
    DirectionOutOfRange { dir: usize, n: usize },
    #[error("alphabet sizes differ ({left} vs {right})")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("polynomial flavors differ")]
    FlavorMismatch,
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("operation is not supported in {0} mode")]
    UnsupportedMode(&'static str),
    #[error("malformed input: {0}")]
    Parse(String),
}
