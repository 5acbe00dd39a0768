//! Error types for the crate, grouped by subsystem.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("lattice basis is singular")]
    SingularBasis,
    #[error("box has lo > hi in some coordinate")]
    InvalidBox,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZonotopeError {
    #[error("generator {0} is the zero vector")]
    ZeroGenerator(usize),
    #[error("generators {0} and {1} are parallel; canonicalize the input first")]
    ParallelGenerators(usize, usize),
    #[error("generators do not span E^3")]
    EmptySpan,
    #[error("functional is orthogonal to generator {0}")]
    NonGenericFunctional(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeltError {
    #[error("Venkov check passed but the facet census matches no Fedorov type")]
    UnclassifiableWithVenkovPass,
    #[error("shift is not coplanar with the facet")]
    ShiftNotCoplanar,
    #[error("edge index {0} out of range for facet with {1} edges")]
    BadEdgeIndex(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("boundary resampling exhausted after {0} attempts at one sample slot")]
    BoundaryResampleExhausted(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WheelError {
    #[error("point is a vertex of a translate")]
    VertexContact,
    #[error("point lies on a facet outside the belt of some translate")]
    KGContact,
    #[error("dihedral angle sum {0} matches no half-integer grid value within tolerance")]
    NoHalfGridMatch(f64),
    #[error("failed to find {wanted} proper points after {attempts} attempts")]
    RejectionExhausted { wanted: usize, attempts: usize },
}
