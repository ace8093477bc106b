use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the library.
///
/// Verdict-style operations (essentiality, e-exactness) return plain
/// booleans or reports; errors are reserved for malformed input, violated
/// preconditions and searches that ran out of candidate scalars.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix does not define a morphism: relator {relator} of the domain maps outside the relation span of the codomain")]
    NotAMorphism { relator: usize },

    #[error("module is infinite (free rank {free_rank}); exhaustive enumeration impossible")]
    InfiniteModule { free_rank: usize },

    #[error("index {index} out of range [{lo}, {hi}]")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("not e-split: p∘j differs from {scalar}·id")]
    NotESplit { scalar: BigInt },

    #[error("no scalar witness found up to bound {bound}")]
    WitnessNotFound { bound: BigInt },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("map is not monic")]
    NotMonic,

    #[error("extension search exhausted at bound {bound}{}", stage.map(|s| format!(" (stage {s})")).unwrap_or_default())]
    ProbeFailure { bound: BigInt, stage: Option<usize> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the zero ideal has no torsion functor")]
    ZeroIdeal,

    #[error("not a complex at degree {0}: consecutive differentials do not compose to zero")]
    NotAComplexAt(i64),

    #[error("resolution is not e-exact at position {0}")]
    NotEExactResolution(i64),

    #[error("zig-zag obstruction at degree {degree}: pullback fails within scalar cap {bound}")]
    ZigZagObstruction { degree: i64, bound: BigInt },
}

pub type Result<T> = std::result::Result<T, Error>;
