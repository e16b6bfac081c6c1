//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by lattice, root-system, and toric computations.
///
/// `InvariantViolation` is reserved for situations where a mathematically
/// guaranteed property failed to hold at runtime; seeing one means either a
/// bug or an inconsistency between two computation routes, and callers are
/// expected to treat it as fatal rather than recoverable input trouble.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system: family {family} does not admit rank {rank} ({hint})")]
    InvalidRootSystem {
        family: char,
        rank: usize,
        hint: String,
    },

    #[error("simple-reflection index {index} out of range 1..={rank}")]
    ReflectionIndexOutOfRange { index: usize, rank: usize },

    #[error("weight has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("weight {weight} is not in the weight lattice P")]
    NotInWeightLattice { weight: String },

    #[error("weight {weight} is not dominant")]
    NotDominant { weight: String },

    #[error("coordinate {index} of {weight} is negative; not in the cone σ∨")]
    NegativeCoordinate { weight: String, index: usize },

    #[error("vector {vector} lies outside the span of the given basis")]
    OutsideSpan { vector: String },

    #[error("given vectors are not linearly independent")]
    NotLinearlyIndependent,

    #[error("sublattice is not contained in the superlattice (row {row} has non-integer coordinates)")]
    LatticeNotContained { row: usize },

    #[error("lattice ranks differ: sub has rank {sub}, sup has rank {sup}")]
    LatticeRankMismatch { sub: usize, sup: usize },

    #[error("orbit enumeration exceeded the configured cap of {cap} elements")]
    OrbitCapExceeded { cap: usize },

    #[error("fan resolution exceeded {cap} subdivisions; offending cone rays {cone}")]
    ResolutionCapExceeded { cap: usize, cone: String },

    #[error("weight table exceeded the height bound {bound}")]
    HeightBoundExceeded { bound: i64 },

    #[error("P is not contained in (1/{d})Q; pick a multiple of {suggested}")]
    OrbifoldDenominatorTooSmall { d: i64, suggested: i64 },

    #[error("face subset {j:?} is not contained in 1..={rank}")]
    InvalidFaceSubset { j: Vec<usize>, rank: usize },

    #[error(
        "Z(J) methods disagree for J={j:?}: lattice={lattice}, cosets={cosets}, table={table}"
    )]
    ZGroupDisagreement {
        j: Vec<usize>,
        lattice: String,
        cosets: String,
        table: String,
    },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}
