//! Zonotope construction from generator sets: facet enumeration, vertex and
//! half-space representations, exact membership and volume.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::ZonotopeError;
use crate::exact::{det3, parallel, Box3, Rat, Vec3};
use crate::plane::{poly_contains, zonogon_vertices, Chart, Vec2};

/// Ordered set of pairwise non-parallel generators spanning E^3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec3>", into = "Vec<Vec3>")]
pub struct GeneratorSet {
    gens: Vec<Vec3>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<Vec3>) -> Result<Self, ZonotopeError> {
        for (i, g) in gens.iter().enumerate() {
            if g.is_zero() {
                return Err(ZonotopeError::ZeroGenerator(i));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if parallel(&gens[i], &gens[j]).expect("nonzero checked") {
                    return Err(ZonotopeError::ParallelGenerators(i, j));
                }
            }
        }
        if !spans_space(&gens) {
            return Err(ZonotopeError::EmptySpan);
        }
        Ok(GeneratorSet { gens })
    }

    pub fn from_ints(gens: &[[i64; 3]]) -> Result<Self, ZonotopeError> {
        GeneratorSet::new(
            gens.iter()
                .map(|g| Vec3::from_ints(g[0], g[1], g[2]))
                .collect(),
        )
    }

    pub fn gens(&self) -> &[Vec3] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

impl TryFrom<Vec<Vec3>> for GeneratorSet {
    type Error = ZonotopeError;
    fn try_from(v: Vec<Vec3>) -> Result<Self, Self::Error> {
        GeneratorSet::new(v)
    }
}

impl From<GeneratorSet> for Vec<Vec3> {
    fn from(g: GeneratorSet) -> Vec<Vec3> {
        g.gens
    }
}

fn spans_space(gens: &[Vec3]) -> bool {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            for k in j + 1..gens.len() {
                if !det3(&gens[i], &gens[j], &gens[k]).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Merges parallel raw generators into a valid generator set.
///
/// Same-direction vectors are summed; vectors opposite to the canonical
/// (lexicographically positive) direction of their line are flipped, with
/// the flips accumulated in the returned offset so that
/// `zonotope(raw) = zonotope(result) + offset`.
pub fn canonicalize(raw: &[Vec3]) -> Result<(GeneratorSet, Vec3), ZonotopeError> {
    let mut merged: Vec<Vec3> = Vec::new();
    let mut offset = Vec3::zero();
    for (i, v) in raw.iter().enumerate() {
        if v.is_zero() {
            return Err(ZonotopeError::ZeroGenerator(i));
        }
        // segment [0,1]v equals [0,1](-v) + v, so a flip is a translation
        let aligned = if v.dot(&v.lex_canonical()).is_positive() {
            v.clone()
        } else {
            offset = &offset + v;
            -v
        };
        match merged.iter_mut().find(|m| m.cross(&aligned).is_zero()) {
            Some(m) => *m = &*m + &aligned,
            None => merged.push(aligned),
        }
    }
    let gens = GeneratorSet::new(merged)?;
    Ok((gens, offset))
}

/// Closed vs open membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Closed,
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Outside,
    Boundary,
    Interior,
}

/// One facet of a zonotope.
#[derive(Clone, Debug)]
pub struct Facet {
    /// Primitive integer outward normal.
    pub normal: Vec3,
    /// Indices of the generators lying in the facet plane.
    pub coplanar: Vec<usize>,
    /// Sum of the generators with positive dot against the normal; a vertex
    /// of the facet polygon.
    pub base_translation: Vec3,
    /// Polygon vertices, counterclockwise as seen from outside.
    pub vertices: Vec<Vec3>,
    /// Cyclic edge vectors, each equal to some `+-u_i`.
    pub edge_vectors: Vec<Vec3>,
    chart: Chart,
    verts2: Vec<Vec2>,
}

impl Facet {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn verts2(&self) -> &[Vec2] {
        &self.verts2
    }

    /// Membership of a point already known (or not) to lie in the plane.
    pub fn contains_point(&self, p: &Vec3, strict: bool) -> bool {
        if !(p - &self.vertices[0]).dot(&self.normal).is_zero() {
            return false;
        }
        poly_contains(&self.verts2, &self.chart.to2(p), strict)
    }

    /// Center of the (centrally symmetric) facet polygon.
    pub fn center(&self) -> Vec3 {
        let half = Rat::new(1, 2);
        (&self.vertices[0] + &self.vertices[self.vertices.len() / 2]).scaled(&half)
    }
}

#[derive(Clone, Debug)]
pub struct HalfSpace {
    pub normal: Vec3,
    pub offset: Rat,
}

/// A zonotope with all derived structure populated at construction.
#[derive(Clone, Debug)]
pub struct Zonotope {
    gens: GeneratorSet,
    center: Vec3,
    facets: Vec<Facet>,
    halfspaces: Vec<HalfSpace>,
    volume: Rat,
    vertices: Vec<Vec3>,
    bbox: Box3,
}

/// Reduces a rational vector to the primitive integer vector on the same
/// line, with lexicographically positive sign.
pub fn primitive_normal(v: &Vec3) -> Vec3 {
    assert!(!v.is_zero());
    let lcm_den = v
        .coord(0)
        .denom()
        .lcm(v.coord(1).denom())
        .lcm(v.coord(2).denom());
    let ints: Vec<BigInt> = (0..3)
        .map(|i| v.coord(i).numer() * (&lcm_den / v.coord(i).denom()))
        .collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    debug_assert!(!g.is_zero());
    let reduced = Vec3::new(
        Rat::from_bigint(&ints[0] / &g),
        Rat::from_bigint(&ints[1] / &g),
        Rat::from_bigint(&ints[2] / &g),
    );
    reduced.lex_canonical()
}

/// Builds the zonotope spanned by `[0,1]`-combinations of the generators.
pub fn build_zonotope(gens: GeneratorSet) -> Zonotope {
    let u = gens.gens();
    let half = Rat::new(1, 2);
    let center = u.iter().fold(Vec3::zero(), |acc, g| acc + g).scaled(&half);

    // normal classes from pairwise cross products, deduplicated exactly
    let mut normals: Vec<Vec3> = Vec::new();
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let n = primitive_normal(&u[i].cross(&u[j]));
            if !normals.contains(&n) {
                normals.push(n);
            }
        }
    }
    normals.sort();

    let mut facets = Vec::new();
    let mut halfspaces = Vec::new();
    for n in &normals {
        let coplanar: Vec<usize> = (0..u.len()).filter(|&i| n.dot(&u[i]).is_zero()).collect();
        debug_assert!(coplanar.len() >= 2);
        let offset: Rat = u.iter().map(|g| n.dot(g).abs()).sum::<Rat>() * &half;
        halfspaces.push(HalfSpace {
            normal: n.clone(),
            offset,
        });
        for outward in [n.clone(), -n] {
            let base = u
                .iter()
                .filter(|g| outward.dot(g).is_positive())
                .fold(Vec3::zero(), |acc, g| acc + g);
            let cop_gens: Vec<Vec3> = coplanar.iter().map(|&i| u[i].clone()).collect();
            let chart = Chart::new(base.clone(), cop_gens[0].clone(), &outward);
            let vertices = zonogon_vertices(&base, &cop_gens, &chart);
            let verts2: Vec<Vec2> = vertices.iter().map(|p| chart.to2(p)).collect();
            let edge_vectors: Vec<Vec3> = (0..vertices.len())
                .map(|t| &vertices[(t + 1) % vertices.len()] - &vertices[t])
                .collect();
            facets.push(Facet {
                normal: outward,
                coplanar: coplanar.clone(),
                base_translation: base,
                vertices,
                edge_vectors,
                chart,
                verts2,
            });
        }
    }

    let mut volume = Rat::zero();
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            for k in j + 1..u.len() {
                volume = volume + det3(&u[i], &u[j], &u[k]).abs();
            }
        }
    }

    let mut vertices: Vec<Vec3> = facets
        .iter()
        .flat_map(|f| f.vertices.iter().cloned())
        .collect();
    vertices.sort();
    vertices.dedup();
    let bbox = Box3::hull(vertices.iter());

    Zonotope {
        gens,
        center,
        facets,
        halfspaces,
        volume,
        vertices,
        bbox,
    }
}

impl Zonotope {
    pub fn gens(&self) -> &[Vec3] {
        self.gens.gens()
    }

    pub fn generator_set(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn center(&self) -> &Vec3 {
        &self.center
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn volume(&self) -> &Rat {
        &self.volume
    }

    /// The complete vertex set, sorted lexicographically.
    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn bbox(&self) -> &Box3 {
        &self.bbox
    }

    pub fn is_vertex(&self, p: &Vec3) -> bool {
        self.vertices.binary_search(p).is_ok()
    }

    /// Exact slab classification of a point.
    pub fn locate(&self, x: &Vec3) -> Location {
        let d = x - &self.center;
        let mut on_boundary = false;
        for hs in &self.halfspaces {
            let s = hs.normal.dot(&d).abs();
            if s > hs.offset {
                return Location::Outside;
            }
            if s == hs.offset {
                on_boundary = true;
            }
        }
        if on_boundary {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    pub fn contains(&self, x: &Vec3, mode: Containment) -> bool {
        match (self.locate(x), mode) {
            (Location::Outside, _) => false,
            (Location::Boundary, Containment::Closed) => true,
            (Location::Boundary, Containment::Open) => false,
            (Location::Interior, _) => true,
        }
    }

    /// Indices of the facets whose closed polygon contains `x`.
    pub fn facets_containing(&self, x: &Vec3) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains_point(x, false))
            .map(|(i, _)| i)
            .collect()
    }

    /// The unique vertex maximizing `c . x` for a generic functional.
    pub fn support_vertex(&self, c: &Vec3) -> Result<Vec3, ZonotopeError> {
        let mut acc = Vec3::zero();
        for (i, g) in self.gens().iter().enumerate() {
            match c.dot(g).signum() {
                0 => return Err(ZonotopeError::NonGenericFunctional(i)),
                1 => acc = acc + g,
                _ => {}
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Vec3;

    fn cube() -> Zonotope {
        build_zonotope(GeneratorSet::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap())
    }

    fn rhombic_dodecahedron() -> Zonotope {
        build_zonotope(
            GeneratorSet::from_ints(&[[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]]).unwrap(),
        )
    }

    fn truncated_octahedron() -> Zonotope {
        build_zonotope(
            GeneratorSet::from_ints(&[
                [1, 1, 0],
                [1, -1, 0],
                [1, 0, 1],
                [1, 0, -1],
                [0, 1, 1],
                [0, 1, -1],
            ])
            .unwrap(),
        )
    }

    #[test]
    fn generator_set_validation() {
        assert!(matches!(
            GeneratorSet::from_ints(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]),
            Err(ZonotopeError::ZeroGenerator(0))
        ));
        assert!(matches!(
            GeneratorSet::from_ints(&[[1, 0, 0], [0, 1, 0], [-2, 0, 0]]),
            Err(ZonotopeError::ParallelGenerators(0, 2))
        ));
        assert!(matches!(
            GeneratorSet::from_ints(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]),
            Err(ZonotopeError::EmptySpan)
        ));
    }

    #[test]
    fn canonicalize_merges_and_flips() {
        let raw = vec![
            Vec3::from_ints(1, 0, 0),
            Vec3::from_ints(-2, 0, 0),
            Vec3::from_ints(0, 1, 0),
            Vec3::from_ints(0, 0, 1),
        ];
        let (gens, offset) = canonicalize(&raw).unwrap();
        assert_eq!(offset, Vec3::from_ints(-2, 0, 0));
        assert_eq!(
            gens.gens(),
            &[
                Vec3::from_ints(3, 0, 0),
                Vec3::from_ints(0, 1, 0),
                Vec3::from_ints(0, 0, 1)
            ]
        );
    }

    #[test]
    fn cube_structure() {
        let z = cube();
        assert_eq!(z.facets().len(), 6);
        assert_eq!(z.vertices().len(), 8);
        assert_eq!(*z.volume(), Rat::from_int(1));
        assert_eq!(
            *z.center(),
            Vec3::new(Rat::new(1, 2), Rat::new(1, 2), Rat::new(1, 2))
        );
        for f in z.facets() {
            assert_eq!(f.vertices.len(), 4);
        }
    }

    #[test]
    fn rhombic_dodecahedron_structure() {
        let z = rhombic_dodecahedron();
        assert_eq!(z.facets().len(), 12);
        assert_eq!(z.vertices().len(), 14);
        assert_eq!(*z.volume(), Rat::from_int(16));
    }

    #[test]
    fn truncated_octahedron_structure() {
        let z = truncated_octahedron();
        assert_eq!(z.facets().len(), 14);
        assert_eq!(z.vertices().len(), 24);
        assert_eq!(*z.volume(), Rat::from_int(32));
        let hexes = z.facets().iter().filter(|f| f.vertices.len() == 6).count();
        let quads = z.facets().iter().filter(|f| f.vertices.len() == 4).count();
        assert_eq!((hexes, quads), (8, 6));
    }

    #[test]
    fn vertices_are_subset_sums() {
        // brute-force oracle over all 0/1 coefficient vectors
        for z in [cube(), rhombic_dodecahedron(), truncated_octahedron()] {
            let w = z.gens().len();
            let mut sums: Vec<Vec3> = (0u32..1 << w)
                .map(|mask| {
                    (0..w)
                        .filter(|i| mask >> i & 1 == 1)
                        .fold(Vec3::zero(), |acc, i| acc + &z.gens()[i])
                })
                .collect();
            sums.sort();
            sums.dedup();
            for v in z.vertices() {
                assert!(
                    sums.binary_search(v).is_ok(),
                    "vertex {v:?} not a subset sum"
                );
            }
        }
    }

    #[test]
    fn locate_and_contains() {
        let z = cube();
        let half = Rat::new(1, 2);
        assert_eq!(z.locate(z.center()), Location::Interior);
        assert_eq!(
            z.locate(&Vec3::new(half.clone(), half.clone(), Rat::zero())),
            Location::Boundary
        );
        assert_eq!(z.locate(&Vec3::from_ints(2, 0, 0)), Location::Outside);
        assert!(z.contains(&Vec3::from_ints(0, 0, 0), Containment::Closed));
        assert!(!z.contains(&Vec3::from_ints(0, 0, 0), Containment::Open));
    }

    #[test]
    fn facet_membership_and_center() {
        let z = cube();
        let p = Vec3::new(Rat::new(1, 2), Rat::new(1, 2), Rat::zero());
        let facets = z.facets_containing(&p);
        assert_eq!(facets.len(), 1);
        assert_eq!(z.facets()[facets[0]].center(), p);
        // an edge midpoint lies in two facets, a vertex in three
        let e = Vec3::new(Rat::new(1, 2), Rat::zero(), Rat::zero());
        assert_eq!(z.facets_containing(&e).len(), 2);
        assert_eq!(z.facets_containing(&Vec3::zero()).len(), 3);
    }

    #[test]
    fn support_vertices() {
        let z = cube();
        assert_eq!(
            z.support_vertex(&Vec3::from_ints(1, 2, 3)).unwrap(),
            Vec3::from_ints(1, 1, 1)
        );
        assert_eq!(
            z.support_vertex(&Vec3::from_ints(-1, 2, -3)).unwrap(),
            Vec3::from_ints(0, 1, 0)
        );
        assert!(matches!(
            z.support_vertex(&Vec3::from_ints(1, 0, 0)),
            Err(ZonotopeError::NonGenericFunctional(1))
        ));
    }

    #[test]
    fn facet_normals_are_primitive_and_outward() {
        let z = rhombic_dodecahedron();
        for f in z.facets() {
            // outward: center strictly on the negative side of the facet plane
            assert!((z.center() - &f.vertices[0]).dot(&f.normal).is_negative());
            // facet polygon is ccw seen from outside and closed under edges
            let total = f.edge_vectors.iter().fold(Vec3::zero(), |acc, e| acc + e);
            assert!(total.is_zero());
        }
    }
}
