//! Lattices, axis-aligned rational boxes and exact lattice point enumeration.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::rat::Rat;
use super::vec3::{det3, Vec3};
use crate::error::ExactError;

/// Basis of a full-rank lattice in E^3, columns `b1, b2, b3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[Vec3; 3]", into = "[Vec3; 3]")]
pub struct LatticeBasis {
    b1: Vec3,
    b2: Vec3,
    b3: Vec3,
}

impl LatticeBasis {
    pub fn new(b1: Vec3, b2: Vec3, b3: Vec3) -> Result<Self, ExactError> {
        if det3(&b1, &b2, &b3).is_zero() {
            return Err(ExactError::SingularBasis);
        }
        Ok(LatticeBasis { b1, b2, b3 })
    }

    /// The integer lattice Z^3.
    pub fn unit() -> Self {
        LatticeBasis::new(
            Vec3::from_ints(1, 0, 0),
            Vec3::from_ints(0, 1, 0),
            Vec3::from_ints(0, 0, 1),
        )
        .expect("unit basis is nonsingular")
    }

    pub fn basis(&self) -> [&Vec3; 3] {
        [&self.b1, &self.b2, &self.b3]
    }

    pub fn det(&self) -> Rat {
        det3(&self.b1, &self.b2, &self.b3)
    }

    /// The lattice point `i*b1 + j*b2 + k*b3`.
    pub fn point(&self, i: i64, j: i64, k: i64) -> Vec3 {
        self.combination(&Rat::from_int(i), &Rat::from_int(j), &Rat::from_int(k))
    }

    pub fn combination(&self, c1: &Rat, c2: &Rat, c3: &Rat) -> Vec3 {
        self.b1.scaled(c1) + self.b2.scaled(c2) + self.b3.scaled(c3)
    }

    /// Exact basis coordinates of `v`, by Cramer's rule.
    pub fn coords(&self, v: &Vec3) -> (Rat, Rat, Rat) {
        let d = self.det();
        (
            det3(v, &self.b2, &self.b3) / &d,
            det3(&self.b1, v, &self.b3) / &d,
            det3(&self.b1, &self.b2, v) / &d,
        )
    }

    /// A reduced basis of the same lattice: repeated integer shear moves
    /// shorten the vectors until no pairwise move helps. Keeps enumeration
    /// index ranges small for skewed bases.
    pub fn reduced(&self) -> LatticeBasis {
        let mut b = [self.b1.clone(), self.b2.clone(), self.b3.clone()];
        let half = Rat::new(1, 2);
        loop {
            let mut changed = false;
            b.sort_by_key(|x| x.norm2());
            for i in 0..3 {
                for j in 0..3 {
                    if i == j {
                        continue;
                    }
                    // nearest-integer multiple of b_j to subtract from b_i
                    let q = (&(&b[i].dot(&b[j]) / &b[j].norm2()) + &half).floor_int();
                    let candidate = &b[i] - &b[j].scaled(&Rat::from_bigint(q));
                    if candidate.norm2() < b[i].norm2() {
                        b[i] = candidate;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let [b1, b2, b3] = b;
        LatticeBasis::new(b1, b2, b3).expect("shear moves preserve the lattice rank")
    }

    /// Replaces one basis vector by a scaled copy.
    pub fn with_scaled_vector(&self, axis: usize, scale: &Rat) -> Result<Self, ExactError> {
        if scale.is_zero() {
            return Err(ExactError::SingularBasis);
        }
        let mut b = [self.b1.clone(), self.b2.clone(), self.b3.clone()];
        b[axis] = b[axis].scaled(scale);
        let [b1, b2, b3] = b;
        LatticeBasis::new(b1, b2, b3)
    }
}

impl TryFrom<[Vec3; 3]> for LatticeBasis {
    type Error = ExactError;
    fn try_from(v: [Vec3; 3]) -> Result<Self, Self::Error> {
        let [b1, b2, b3] = v;
        LatticeBasis::new(b1, b2, b3)
    }
}

impl From<LatticeBasis> for [Vec3; 3] {
    fn from(l: LatticeBasis) -> [Vec3; 3] {
        [l.b1, l.b2, l.b3]
    }
}

/// Axis-aligned box with rational corners, `lo <= hi` componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Box3 {
    pub lo: Vec3,
    pub hi: Vec3,
}

impl Box3 {
    pub fn new(lo: Vec3, hi: Vec3) -> Result<Self, ExactError> {
        if lo.x > hi.x || lo.y > hi.y || lo.z > hi.z {
            return Err(ExactError::InvalidBox);
        }
        Ok(Box3 { lo, hi })
    }

    /// Smallest box containing all points. Panics on an empty iterator.
    pub fn hull<'a>(points: impl IntoIterator<Item = &'a Vec3>) -> Box3 {
        let mut it = points.into_iter();
        let first = it.next().expect("hull of empty point set");
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in it {
            for axis in 0..3 {
                if p.coord(axis) < lo.coord(axis) {
                    set_coord(&mut lo, axis, p.coord(axis).clone());
                }
                if p.coord(axis) > hi.coord(axis) {
                    set_coord(&mut hi, axis, p.coord(axis).clone());
                }
            }
        }
        Box3 { lo, hi }
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        self.lo.x <= p.x
            && p.x <= self.hi.x
            && self.lo.y <= p.y
            && p.y <= self.hi.y
            && self.lo.z <= p.z
            && p.z <= self.hi.z
    }

    pub fn corners(&self) -> Vec<Vec3> {
        let mut out = Vec::with_capacity(8);
        for x in [&self.lo.x, &self.hi.x] {
            for y in [&self.lo.y, &self.hi.y] {
                for z in [&self.lo.z, &self.hi.z] {
                    out.push(Vec3::new(x.clone(), y.clone(), z.clone()));
                }
            }
        }
        out
    }
}

fn set_coord(v: &mut Vec3, axis: usize, value: Rat) {
    match axis {
        0 => v.x = value,
        1 => v.y = value,
        _ => v.z = value,
    }
}

/// All lattice points inside `bounds` (closed), without duplicates.
///
/// Index ranges come from the exact preimage of the box corners under the
/// basis, so no point can be missed to rounding.
pub fn lattice_points_in_box(lattice: &LatticeBasis, bounds: &Box3) -> Vec<Vec3> {
    let mut lo = [i64::MAX; 3];
    let mut hi = [i64::MIN; 3];
    for corner in bounds.corners() {
        let (c1, c2, c3) = lattice.coords(&corner);
        for (axis, c) in [c1, c2, c3].iter().enumerate() {
            let f = c
                .floor_int()
                .to_i64()
                .expect("lattice index out of i64 range");
            let g = c
                .ceil_int()
                .to_i64()
                .expect("lattice index out of i64 range");
            lo[axis] = lo[axis].min(f);
            hi[axis] = hi[axis].max(g);
        }
    }
    let mut out = Vec::new();
    let [b1, b2, b3] = lattice.basis();
    let mut pi = lattice.point(lo[0], lo[1], lo[2]);
    for _ in lo[0]..=hi[0] {
        let mut pj = pi.clone();
        for _ in lo[1]..=hi[1] {
            let mut pk = pj.clone();
            for _ in lo[2]..=hi[2] {
                if bounds.contains(&pk) {
                    out.push(pk.clone());
                }
                pk = &pk + b3;
            }
            pj = &pj + b2;
        }
        pi = &pi + b1;
    }
    out
}
