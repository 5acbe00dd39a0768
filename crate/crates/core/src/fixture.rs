//! JSON fixture format for zonotopes and tilings, with content hashing.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::belt::FedorovClass;
use crate::error::ZonotopeError;
use crate::exact::{LatticeBasis, Vec3};
use crate::tiling::{canonical_tiling, PeriodicMultiset};
use crate::zonotope::{build_zonotope, GeneratorSet, Zonotope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Canonical,
    Derived,
    Random,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZonotopeSpec {
    /// Validated at the serde boundary: nonzero, pairwise non-parallel,
    /// spanning generators.
    pub generators: GeneratorSet,
}

/// Versioned input format: a zonotope, optionally with a claimed tiling.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub zonotope: ZonotopeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub motif: Option<Vec<Vec3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeBasis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("fixture JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error(transparent)]
    Zonotope(#[from] ZonotopeError),
    #[error("fixture has no tiling section (motif/lattice/k)")]
    MissingTiling,
}

impl Fixture {
    pub fn from_json(text: &str) -> Result<Fixture, FixtureError> {
        let f: Fixture = serde_json::from_str(text)?;
        if f.schema != 1 {
            return Err(FixtureError::Schema(f.schema));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serialization is infallible")
    }

    pub fn build_zonotope(&self) -> Zonotope {
        build_zonotope(self.zonotope.generators.clone())
    }

    /// The tiling multiset, if the fixture carries one. The motif defaults
    /// to the single zero vector.
    pub fn multiset(&self) -> Result<PeriodicMultiset, FixtureError> {
        let lattice = self.lattice.clone().ok_or(FixtureError::MissingTiling)?;
        let motif = self.motif.clone().unwrap_or_else(|| vec![Vec3::zero()]);
        Ok(PeriodicMultiset { motif, lattice })
    }

    pub fn claimed_k(&self) -> Result<usize, FixtureError> {
        self.k.ok_or(FixtureError::MissingTiling)
    }

    /// SHA-256 of the serialized fixture, for binding reports to inputs.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("fixture serialization is infallible");
        let digest = Sha256::digest(&bytes);
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The reference one-fold tiling fixture for a parallelohedron type.
    pub fn canonical(class: &FedorovClass) -> Option<Fixture> {
        let (z, ms) = canonical_tiling(class)?;
        let name = match class {
            FedorovClass::Parallelepiped => "parallelepiped",
            FedorovClass::HexagonalPrism => "hexagonal-prism",
            FedorovClass::RhombicDodecahedron => "rhombic-dodecahedron",
            FedorovClass::ElongatedDodecahedron => "elongated-dodecahedron",
            FedorovClass::TruncatedOctahedron => "truncated-octahedron",
            FedorovClass::NotParallelohedron { .. } => return None,
        };
        Some(Fixture {
            schema: 1,
            name: Some(name.to_string()),
            provenance: Some(Provenance::Canonical),
            zonotope: ZonotopeSpec {
                generators: z.generator_set().clone(),
            },
            motif: Some(ms.motif.clone()),
            lattice: Some(ms.lattice.clone()),
            k: Some(1),
        })
    }
}
