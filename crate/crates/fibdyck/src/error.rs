use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A word handed to a factorizer is not a concatenation of codewords of
    /// the requested class. Carries the class name and the failure position.
    #[error("word is not in {class}* (stuck at position {position})")]
    NotInClassStar { class: String, position: usize },

    /// Input lies outside the domain of a partial map.
    #[error("not in domain: {0}")]
    NotInDomain(String),

    /// Input is not the image of any domain element under the inverse being
    /// asked for.
    #[error("not in image: {0}")]
    NotInImage(String),

    /// Moebius inversion of a point-count sequence produced a non-integral
    /// orbit count at the given period.
    #[error("non-integral orbit count at period {0}")]
    NonIntegral(usize),

    /// A count that must be nonnegative came out negative at the given index.
    #[error("negative count at period {0}")]
    Negative(usize),

    /// The adjacency matrix does not describe an irreducible shift of finite
    /// type.
    #[error("adjacency matrix is not irreducible")]
    NotIrreducible,

    /// Orbit counts obtained by direct enumeration and by series expansion
    /// disagree where both are available.
    #[error("count consistency failure: {0}")]
    ConsistencyFailure(String),

    /// Invalid runtime configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Cache file could not be read or written.
    #[error("cache error: {0}")]
    Cache(String),

    /// Malformed textual input (word syntax, matrix syntax).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
