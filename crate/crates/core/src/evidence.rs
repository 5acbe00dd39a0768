//! Randomized evidence harness: random zonotopes against candidate lattices
//! of matching density, with the belt-size bounds checked on every verified
//! multiplicity.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::belt::{belts, classify_fedorov, FedorovClass};
use crate::exact::{LatticeBasis, Rat, Vec3};
use crate::tiling::{verify_k_fold, PeriodicMultiset, SamplePlan, Verdict};
use crate::zonotope::{build_zonotope, GeneratorSet, Zonotope};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvidenceConfig {
    pub seed: u64,
    /// Number of random zonotopes.
    pub trials: usize,
    /// Samples for the cheap first verification pass.
    pub screen_samples: usize,
    /// Samples for the confirmation pass of screened-in candidates.
    pub confirm_samples: usize,
    /// Multiplicities to try.
    pub max_k: usize,
}

impl EvidenceConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        EvidenceConfig {
            seed,
            trials,
            screen_samples: 24,
            confirm_samples: 160,
            max_k: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvidenceRow {
    pub trial: usize,
    pub generators: GeneratorSet,
    /// Largest belt facet count 2m over all belts.
    pub max_belt: usize,
    /// Multiplicities for which some candidate lattice verified.
    pub verified_ks: Vec<usize>,
    pub class: FedorovClass,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvidenceSummary {
    pub config: EvidenceConfig,
    pub rows: Vec<EvidenceRow>,
    /// Belt-bound violations among verified rows; the theorems predict none.
    pub violations: Vec<String>,
    pub verified_pairs: usize,
}

/// Largest admissible belt facet count for a verified k-fold tile.
pub fn belt_bound(k: usize) -> Option<usize> {
    match k {
        1..=4 => Some(6),
        5 => Some(10),
        6 => Some(14),
        _ => None,
    }
}

/// A random generator set: 3 to 7 nonzero pairwise non-parallel integer
/// vectors with coordinates in [-3, 3], spanning space.
pub fn random_generator_set(rng: &mut ChaCha8Rng) -> GeneratorSet {
    loop {
        let n = rng.random_range(3..=7);
        let gens: Vec<Vec3> = (0..n)
            .map(|_| {
                Vec3::from_ints(
                    rng.random_range(-3..=3),
                    rng.random_range(-3..=3),
                    rng.random_range(-3..=3),
                )
            })
            .collect();
        if let Ok(set) = GeneratorSet::new(gens) {
            return set;
        }
    }
}

/// A random unimodular integer basis built from shear moves on the identity.
pub fn random_unimodular(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    let mut m = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..6 {
        let i = rng.random_range(0..3);
        let mut j = rng.random_range(0..3);
        while j == i {
            j = rng.random_range(0..3);
        }
        let c: i64 = if rng.random_range(0..2) == 0 { 1 } else { -1 };
        let row_j = m[j];
        for (col, entry) in m[i].iter_mut().enumerate() {
            *entry += c * row_j[col];
        }
    }
    m
}

/// Candidate lattice with |det| = vol/k: a random unimodular basis with its
/// first vector scaled to match the density constraint.
pub fn candidate_lattice(rng: &mut ChaCha8Rng, volume: &Rat, k: usize) -> LatticeBasis {
    let m = random_unimodular(rng);
    let rows: Vec<Vec3> = m
        .iter()
        .map(|r| Vec3::from_ints(r[0], r[1], r[2]))
        .collect();
    let basis = LatticeBasis::new(rows[0].clone(), rows[1].clone(), rows[2].clone())
        .expect("unimodular basis is nonsingular");
    let scale = volume / &Rat::from_int(k as i64);
    basis
        .with_scaled_vector(0, &scale)
        .expect("volume is positive")
}

fn try_verify(
    z: &Zonotope,
    ms: &PeriodicMultiset,
    k: usize,
    seed: u64,
    config: &EvidenceConfig,
) -> bool {
    let mut screen = SamplePlan::new(seed, config.screen_samples);
    screen.max_failures = 1;
    match verify_k_fold(z, ms, k, &screen) {
        Ok(cert) if cert.verdict == Verdict::Verified => {}
        _ => return false,
    }
    // candidates surviving the cheap screen get a deeper pass
    let confirm = SamplePlan::new(seed ^ 0x9e37_79b9_7f4a_7c15, config.confirm_samples);
    matches!(
        verify_k_fold(z, ms, k, &confirm),
        Ok(cert) if cert.verdict == Verdict::Verified
    )
}

/// Runs the harness and collects belt-bound violations (expected: none).
pub fn run_evidence(config: &EvidenceConfig) -> EvidenceSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::with_capacity(config.trials);
    let mut violations = Vec::new();
    let mut verified_pairs = 0;
    for trial in 0..config.trials {
        let gens = random_generator_set(&mut rng);
        let z = build_zonotope(gens.clone());
        let max_belt = belts(&z)
            .iter()
            .map(|b| b.facets.len())
            .max()
            .expect("at least three belts");
        let class = classify_fedorov(&z).unwrap_or(FedorovClass::NotParallelohedron {
            witness: usize::MAX,
        });
        let mut verified_ks = Vec::new();
        for k in 1..=config.max_k {
            let lattice = candidate_lattice(&mut rng, z.volume(), k);
            let ms = PeriodicMultiset::lattice_only(lattice);
            let sample_seed = rng.random_range(0..u64::MAX);
            if try_verify(&z, &ms, k, sample_seed, config) {
                verified_ks.push(k);
                verified_pairs += 1;
                if let Some(bound) = belt_bound(k) {
                    if max_belt > bound {
                        violations.push(format!(
                            "trial {trial}: verified k={k} but max belt {max_belt} > {bound}"
                        ));
                    }
                }
            }
        }
        rows.push(EvidenceRow {
            trial,
            generators: gens,
            max_belt,
            verified_ks,
            class,
        });
    }
    EvidenceSummary {
        config: config.clone(),
        rows,
        violations,
        verified_pairs,
    }
}
