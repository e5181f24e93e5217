//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The input graph is not a simply-laced Dynkin diagram of finite type.
    #[error("invalid Cartan datum: {0}")]
    InvalidCartan(String),

    /// A weight was expected to lie in a Weyl orbit of a fundamental weight.
    #[error("not an extremal weight")]
    NotExtremal,

    /// The requested node must carry a minuscule fundamental weight.
    #[error("node {0} is not minuscule")]
    NotMinuscule(usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Evaluation of a rational function at a point where a denominator
    /// factor vanishes. The offending factors are listed.
    #[error("evaluation at pole, vanishing factors: {0}")]
    EvaluationAtPole(String),

    /// A set of parameters whose entries do not have the node's parity.
    #[error("set of parameters is not integral: {0}")]
    NonIntegralParams(String),

    #[error("height/level mismatch: {0}")]
    HeightLevelMismatch(String),

    /// Crystal generation exceeded the configured vertex cap.
    #[error("enumeration cap of {0} vertices exceeded")]
    EnumerationCap(usize),

    /// A graded character with identically zero numerator.
    #[error("zero module")]
    ZeroModule,

    /// Taylor expansion found no nonvanishing homogeneous component within
    /// the degree cap.
    #[error("no nonvanishing Taylor term up to degree {0}")]
    TaylorCapExceeded(u32),

    /// The multidegree oracle only accepts squarefree generators.
    #[error("oracle restricted to squarefree generators")]
    NotSquarefree,

    /// A denominator weight with non-positive height pairing.
    #[error("denominator weight must have positive height: {0}")]
    NonPositiveHeight(String),

    /// The brute-force enumeration window contains no term.
    #[error("window too small to contain any term")]
    WindowTooSmall,

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
