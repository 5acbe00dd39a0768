//! Exact-arithmetic zonotope laboratory: belt structure, Fedorov
//! classification, multiple translative tilings and wheel analysis.

pub mod belt;
pub mod error;
pub mod evidence;
pub mod exact;
pub mod fixture;
pub mod plane;
pub mod tiling;
pub mod wheel;
pub mod zonotope;

pub use belt::{
    belt_decompose, belt_of, belts, check_corollary1, check_lemma5, check_venkov, classify_fedorov,
    facet_intersection, Belt, BeltDecomposition, FacetIntersection, FacetMeet, FedorovClass,
    VenkovReport,
};
pub use error::{BeltError, ExactError, TilingError, WheelError, ZonotopeError};
pub use exact::{Box3, LatticeBasis, Rat, Vec3};
pub use tiling::{
    canonical_tiling, count_cover, verify_k_fold, PeriodicMultiset, SamplePlan, TilingCertificate,
    Verdict,
};
pub use wheel::{
    check_eq10, check_lemma10, is_proper_point, locate_pieces, sample_proper_points, Piece,
    PieceKind, ProperPointReport, WheelPoint, WheelReport,
};
pub use zonotope::{
    build_zonotope, canonicalize, Containment, Facet, GeneratorSet, Location, Zonotope,
};
