use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("position {0} is not a descent")]
    NotADescent(usize),
    #[error("support vector is not tight")]
    NotTight,
    #[error("negative scale factor")]
    NegativeScale,
    #[error("fans differ")]
    FrameMismatch,
    #[error("the two points do not span an edge")]
    NotAnEdge,
    #[error("weights must be positive")]
    NonpositiveWeight,
    #[error("function is not forcing dominant")]
    NotForcingDominant,
    #[error("not a deformed permutahedron")]
    NotDeformedPermutahedron,
    #[error("polytope is not caged")]
    NotCaged,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("inverse diagram is not centrally symmetric")]
    AsymmetricInverse,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
