use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("map is not surjective onto a lattice (nontrivial invariant factor)")]
    NotSurjective,
    #[error("a direction was requested for the zero vector")]
    ZeroVector,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("weight lies outside the weight cone")]
    WeightOutsideCone,
    #[error("weight lies outside the box")]
    WeightOutsideBox,
    #[error("operation not available on this base: {0}")]
    UnsupportedBase(String),
    #[error("no degree map on this base")]
    NoDegreeMap,
    #[error("coefficient at {0} is empty")]
    EmptyCoefficient(String),
    #[error("zero function has no divisor")]
    ZeroFunction,
    #[error("divisor has non-integral coefficients")]
    NonIntegral,
    #[error("unknown prime divisor {0}")]
    UnknownPrime(String),
    #[error("coefficient at {0} does not have the common tailcone")]
    TailMismatch(String),
    #[error("fan is not contraction-free")]
    NotContractionFree,
    #[error("slices do not form a polyhedral complex at {0}")]
    NotAComplex(String),
    #[error("divisor is not Q-Cartier on a cell over {0}")]
    NotQCartier(String),
    #[error("function is not concave")]
    NotConcave,
    #[error("box is not full-dimensional")]
    BoxNotFullDimensional,
    #[error("marked points miss the support at {0}")]
    MarksMissingSupport(String),
    #[error("p-divisor is not proper")]
    NotProper,
    #[error("sublattice is not split")]
    NotSplit,
    #[error("class group has torsion")]
    TorsionCokernel,
    #[error("the two forms of the Cox coefficient disagree at {0}")]
    FormsDisagree(String),
    #[error("Minkowski decomposition does not sum to the slice")]
    SumMismatch,
    #[error("decomposition is not admissible")]
    NotAdmissible,
    #[error("the two upgrade routes disagree at {0}")]
    RoutesDisagree(String),
    #[error("base map does not determine the pullback of {0}")]
    IndeterminateBaseMap(String),
    #[error("the two constructions of the slice at {0} disagree")]
    SlicesDisagree(String),
    #[error("search bound exceeded")]
    SearchBoundExceeded,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
