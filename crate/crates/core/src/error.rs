use thiserror::Error;

use crate::words::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is not valid in alphabet {alphabet}")]
    InvalidLetter { alphabet: Alphabet, letter: u32 },

    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: Alphabet, found: Alphabet },

    #[error("rule {rule} cannot be used on alphabet {alphabet}")]
    RuleMismatch { rule: &'static str, alphabet: Alphabet },

    #[error("tau is only defined on words not starting with b0, got {0}")]
    TauDomain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("weight {weight} exceeds the bound {bound}")]
    WeightAboveBound { weight: u32, bound: u32 },

    #[error("series has constant coefficient different from 1")]
    NotInvertible,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
