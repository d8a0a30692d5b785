use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input has a loop; a loopless permutation is required")]
    LooplessRequired,
    #[error("input has a coloop; a coloopless permutation is required")]
    ColooplessRequired,
    #[error("precondition violated at position {index}: {reason}")]
    PreconditionViolated { index: usize, reason: String },
    #[error("position n-1 is a loop (black fixed point)")]
    BlackFixedPointAtPenultimate,
    #[error("position n-1 is a coloop (white fixed point)")]
    WhiteFixedPointAtPenultimate,
    #[error("position {0} is a coloop (white fixed point) blocking the map")]
    WhiteFixedPointBlocks(usize),
    #[error("graph admits no perfect orientation")]
    NotOrientable,
    #[error("basis family is not a matroid")]
    NotAMatroid,
    #[error("basis family is not a positroid")]
    NotAPositroid,
    #[error("intersection has a non-integral vertex")]
    NonIntegralVertex,
    #[error("Jacobian rank differs between random points ({0} vs {1})")]
    RankInstability(usize, usize),
    #[error("lambda is not generic: a minor vanishes")]
    NonGenericLambda,
    #[error("lambda is not in the row span of the matrix")]
    LambdaNotInRowSpan,
    #[error("polyhedron is not pointed or not bounded")]
    Unbounded,
    #[error("invalid Le-diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit reached: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
