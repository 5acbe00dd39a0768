//! Verification of k-fold translative tilings by periodic translate
//! multisets: exact covering counts, density checks and randomized exact
//! sampling over a fundamental domain.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::belt::FedorovClass;
use crate::error::TilingError;
use crate::exact::{lattice_points_in_box, Box3, LatticeBasis, Rat, Vec3};
use crate::zonotope::{build_zonotope, Containment, GeneratorSet, Zonotope};

/// A periodic multiset of translation vectors: `motif + lattice`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodicMultiset {
    pub motif: Vec<Vec3>,
    pub lattice: LatticeBasis,
}

impl PeriodicMultiset {
    pub fn lattice_only(lattice: LatticeBasis) -> Self {
        PeriodicMultiset {
            motif: vec![Vec3::zero()],
            lattice,
        }
    }

    /// Exact covering density of `zonotope + self`.
    pub fn density(&self, z: &Zonotope) -> Rat {
        Rat::from_int(self.motif.len() as i64) * z.volume() / self.lattice.det().abs()
    }

    /// Scales one lattice basis vector, multiplying the density by the
    /// reciprocal of the factor.
    pub fn with_scaled_vector(&self, axis: usize, scale: &Rat) -> Self {
        PeriodicMultiset {
            motif: self.motif.clone(),
            lattice: self
                .lattice
                .with_scaled_vector(axis, scale)
                .expect("nonzero scale keeps the basis nonsingular"),
        }
    }
}

/// Open and closed covering multiplicities of `x` under `zonotope + ms`,
/// in a single enumeration pass.
pub fn cover_counts(z: &Zonotope, ms: &PeriodicMultiset, x: &Vec3) -> (usize, usize) {
    let mut open = 0;
    let mut closed = 0;
    for m in &ms.motif {
        // x in m + lambda + P  iff  lambda in (x - m - P)
        let shifted = x - m;
        let lo = &shifted - &z.bbox().hi;
        let hi = &shifted - &z.bbox().lo;
        let bounds = Box3::new(lo, hi).expect("bbox is well formed");
        for lambda in lattice_points_in_box(&ms.lattice, &bounds) {
            match z.locate(&(&shifted - &lambda)) {
                crate::zonotope::Location::Interior => {
                    open += 1;
                    closed += 1;
                }
                crate::zonotope::Location::Boundary => closed += 1,
                crate::zonotope::Location::Outside => {}
            }
        }
    }
    (open, closed)
}

/// Number of translates `m + lambda` (m in the motif, lambda in the lattice)
/// whose copy of the zonotope contains `x`.
pub fn count_cover(z: &Zonotope, ms: &PeriodicMultiset, x: &Vec3, mode: Containment) -> usize {
    let (open, closed) = cover_counts(z, ms, x);
    match mode {
        Containment::Open => open,
        Containment::Closed => closed,
    }
}

/// Parameters of the randomized exact sampling pass.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SamplePlan {
    pub seed: u64,
    pub n_samples: usize,
    /// Denominator of the sampled rational coordinates; a large prime keeps
    /// accidental boundary hits rare.
    pub denominator: i64,
    /// Resample attempts allowed per slot when a sample lands on a boundary.
    pub max_resamples: usize,
    /// Stop after this many failing samples.
    pub max_failures: usize,
}

impl SamplePlan {
    pub fn new(seed: u64, n_samples: usize) -> Self {
        SamplePlan {
            seed,
            n_samples,
            denominator: 524_287,
            max_resamples: 100,
            max_failures: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Verified,
    DensityMismatch { expected: Rat, actual: Rat },
    CountMismatch,
}

/// A generic sample point whose covering count differed from the claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub point: Vec3,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TilingCertificate {
    pub claimed_k: usize,
    pub density: Rat,
    pub samples_tested: usize,
    pub failures: Vec<SampleFailure>,
    pub verdict: Verdict,
}

/// Checks whether `zonotope + ms` is a k-fold tiling of space.
///
/// The exact density must equal `k`; if it does, random points of a
/// fundamental domain (rational coordinates, exact arithmetic) are tested
/// for open and closed covering counts both equal to `k`. Samples on
/// translate boundaries (open and closed counts differ) are resampled.
pub fn verify_k_fold(
    z: &Zonotope,
    ms: &PeriodicMultiset,
    k: usize,
    plan: &SamplePlan,
) -> Result<TilingCertificate, TilingError> {
    let density = ms.density(z);
    if density != Rat::from_int(k as i64) {
        return Ok(TilingCertificate {
            claimed_k: k,
            density: density.clone(),
            samples_tested: 0,
            failures: Vec::new(),
            verdict: Verdict::DensityMismatch {
                expected: Rat::from_int(k as i64),
                actual: density,
            },
        });
    }

    // a reduced basis spans the same lattice but enumerates far fewer
    // candidate index triples per covering query
    let reduced = PeriodicMultiset {
        motif: ms.motif.clone(),
        lattice: ms.lattice.reduced(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let q = plan.denominator;
    let mut failures = Vec::new();
    let mut tested = 0;
    for _ in 0..plan.n_samples {
        // a generic point of the fundamental parallelepiped
        let mut sample = None;
        for _ in 0..plan.max_resamples {
            let c1 = Rat::new(rng.random_range(0..q), q);
            let c2 = Rat::new(rng.random_range(0..q), q);
            let c3 = Rat::new(rng.random_range(0..q), q);
            let x = ms.lattice.combination(&c1, &c2, &c3);
            let (open, closed) = cover_counts(z, &reduced, &x);
            if open == closed {
                sample = Some((x, closed));
                break;
            }
        }
        let (x, count) = match sample {
            Some(s) => s,
            None => return Err(TilingError::BoundaryResampleExhausted(plan.max_resamples)),
        };
        tested += 1;
        if count != k {
            failures.push(SampleFailure { point: x, count });
            if failures.len() >= plan.max_failures {
                break;
            }
        }
    }

    let verdict = if failures.is_empty() {
        Verdict::Verified
    } else {
        Verdict::CountMismatch
    };
    Ok(TilingCertificate {
        claimed_k: k,
        density,
        samples_tested: tested,
        failures,
        verdict,
    })
}

/// A reference one-fold lattice tiling for each parallelohedron type.
///
/// Returns `None` for the non-parallelohedron marker.
pub fn canonical_tiling(class: &FedorovClass) -> Option<(Zonotope, PeriodicMultiset)> {
    let (gens, basis): (&[[i64; 3]], [[i64; 3]; 3]) = match class {
        FedorovClass::Parallelepiped => (
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        ),
        FedorovClass::HexagonalPrism => (
            &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]],
            [[2, 1, 0], [-1, 1, 0], [0, 0, 1]],
        ),
        FedorovClass::RhombicDodecahedron => (
            &[[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]],
            [[2, 2, 0], [2, -2, 0], [2, 0, 2]],
        ),
        FedorovClass::ElongatedDodecahedron => (
            &[[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1], [0, 0, 1]],
            [[2, 2, 0], [2, -2, 0], [2, 0, 3]],
        ),
        FedorovClass::TruncatedOctahedron => (
            &[
                [1, 1, 0],
                [1, -1, 0],
                [1, 0, 1],
                [1, 0, -1],
                [0, 1, 1],
                [0, 1, -1],
            ],
            [[4, 0, 0], [0, 4, 0], [2, 2, 2]],
        ),
        FedorovClass::NotParallelohedron { .. } => return None,
    };
    let z = build_zonotope(GeneratorSet::from_ints(gens).expect("reference generators are valid"));
    let lat = LatticeBasis::new(
        Vec3::from_ints(basis[0][0], basis[0][1], basis[0][2]),
        Vec3::from_ints(basis[1][0], basis[1][1], basis[1][2]),
        Vec3::from_ints(basis[2][0], basis[2][1], basis[2][2]),
    )
    .expect("reference basis is nonsingular");
    Some((z, PeriodicMultiset::lattice_only(lat)))
}
