//! Exact rational scalars, vectors, lattices and boxes.

mod lattice;
mod rat;
mod vec3;

pub use lattice::{lattice_points_in_box, Box3, LatticeBasis};
pub use rat::Rat;
pub use vec3::{det3, parallel, Vec3};
