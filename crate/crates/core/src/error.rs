use thiserror::Error;

use crate::cyclic::DifferenceCycle;
use crate::decompose::Rejection;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 3, got {0}")]
    InvalidModulus(u32),

    #[error("invalid gaps ({a}, {b}, {c}) for modulus {n}: gaps must be positive and sum to n")]
    InvalidGaps { a: u32, b: u32, c: u32, n: u32 },

    #[error("modulus mismatch: expected {expected}, found {found}")]
    ModulusMismatch { expected: u32, found: u32 },

    #[error("difference cycle {0} listed more than once")]
    DuplicateCycle(DifferenceCycle),

    #[error("vertex {0} is not a vertex of the complex")]
    UnknownVertex(u32),

    #[error("complex has no triangles")]
    EmptyComplex,

    #[error("edge {{{0}, {1}}} lies in {2} triangles; not a pseudomanifold")]
    NotPseudomanifold(u32, u32, usize),

    #[error("boundary vertex {vertex} meets {degree} boundary edges")]
    IrregularBoundary { vertex: u32, degree: usize },

    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),

    #[error("k = {0} is not eligible for the simplex decomposition (need k >= 5 and k = 1 or 5 mod 6)")]
    IneligibleK(u32),

    #[error("search refused: {cycles} difference cycles exceeds the limit of {limit}")]
    SearchGuard { cycles: usize, limit: usize },

    #[error("no partition found: search space exhausted")]
    NoPartitionFound,

    #[error("construction failed: {0}")]
    ConstructionFailure(String),

    #[error("partition rejected: {0}")]
    Rejected(Rejection),

    #[error("parse error: {0}")]
    Parse(String),
}
