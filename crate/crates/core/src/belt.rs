//! Belt structure of a zonotope: belt enumeration, the per-facet edge/zonogon
//! decomposition, the Venkov four-or-six criterion, the Fedorov five-type
//! classifier, and exact facet self-intersection under coplanar shifts.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::BeltError;
use crate::exact::{Rat, Vec3};
use crate::plane::{clip_segment, convex_clip, signed_area2, zonogon_vertices, Vec2};
use crate::zonotope::{Containment, Facet, Zonotope};

/// Full-circle angular order of nonzero 2D vectors, ascending
/// counterclockwise starting from the positive x-axis.
fn angle_cmp(u: &Vec2, v: &Vec2) -> Ordering {
    fn half(v: &Vec2) -> u8 {
        if v.y.signum() > 0 || (v.y.is_zero() && v.x.signum() > 0) {
            0
        } else {
            1
        }
    }
    half(u)
        .cmp(&half(v))
        .then_with(|| Rat::zero().cmp(&u.cross(v)))
}

/// The belt determined by one generator direction.
#[derive(Clone, Debug)]
pub struct Belt {
    /// Index of the generator parallel to the belt edge.
    pub edge_gen: usize,
    /// Facet indices, cyclically ordered clockwise as seen from the positive
    /// generator direction; the first entry is the canonical starting facet.
    pub facets: Vec<usize>,
    /// Facets of the zonotope not in the belt.
    pub complement: Vec<usize>,
}

impl Belt {
    /// Half the facet count.
    pub fn m(&self) -> usize {
        self.facets.len() / 2
    }
}

/// In-plane frame for the plane orthogonal to `u`, right-handed with
/// respect to `+u` so that ccw in frame coordinates is ccw seen from `+u`.
fn projection_frame(u: &Vec3) -> (Vec3, Vec3) {
    let axes = [
        Vec3::from_ints(1, 0, 0),
        Vec3::from_ints(0, 1, 0),
        Vec3::from_ints(0, 0, 1),
    ];
    let a = axes
        .iter()
        .map(|e| u.cross(e))
        .find(|v| !v.is_zero())
        .expect("nonzero vector has a non-parallel axis");
    let b = u.cross(&a);
    (a, b)
}

/// One belt per generator direction.
pub fn belts(z: &Zonotope) -> Vec<Belt> {
    (0..z.gens().len()).map(|g| belt_of(z, g)).collect()
}

/// The belt of generator `edge_gen`.
pub fn belt_of(z: &Zonotope, edge_gen: usize) -> Belt {
    let u = &z.gens()[edge_gen];
    let (a, b) = projection_frame(u);
    let mut members: Vec<usize> = z
        .facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.coplanar.contains(&edge_gen))
        .map(|(i, _)| i)
        .collect();
    // ascending ccw angle of the projected outer normals
    members.sort_by(|&i, &j| {
        let ni = Vec2::new(z.facets()[i].normal.dot(&a), z.facets()[i].normal.dot(&b));
        let nj = Vec2::new(z.facets()[j].normal.dot(&a), z.facets()[j].normal.dot(&b));
        angle_cmp(&ni, &nj)
    });
    // clockwise cycle starting from the smallest canonical angle
    let mut facets = vec![members[0]];
    facets.extend(members[1..].iter().rev());
    let complement = (0..z.facets().len())
        .filter(|i| !facets.contains(i))
        .collect();
    Belt {
        edge_gen,
        facets,
        complement,
    }
}

/// Decomposition data for one belt facet: the edge translate, the residual
/// zonogon generators and their sum.
#[derive(Clone, Debug)]
pub struct BeltFacetDecomp {
    /// Facet index in the zonotope.
    pub facet: usize,
    /// Start point of the belt edge in this facet; the edge runs to
    /// `edge_start + u`.
    pub edge_start: Vec3,
    /// Generator indices of the residual zonogon.
    pub r_indices: Vec<usize>,
    /// The residual zonogon generators, oriented so their sum steps to the
    /// next edge translate.
    pub r_gens: Vec<Vec3>,
    /// Sum of `r_gens`.
    pub g_sum: Vec3,
}

#[derive(Clone, Debug)]
pub struct BeltDecomposition {
    pub edge_gen: usize,
    pub per_facet: Vec<BeltFacetDecomp>,
}

impl BeltDecomposition {
    pub fn m(&self) -> usize {
        self.per_facet.len() / 2
    }

    /// Vertices of the residual zonogon of facet position `i`, based at the
    /// origin.
    pub fn r_vertices(&self, z: &Zonotope, i: usize) -> Vec<Vec3> {
        let d = &self.per_facet[i];
        let chart = z.facets()[d.facet].chart();
        if d.r_gens.is_empty() {
            return vec![Vec3::zero()];
        }
        zonogon_vertices(&Vec3::zero(), &d.r_gens, chart)
    }

    /// Vertices of the full facet zonogon (residual generators plus the belt
    /// edge generator), based at the origin.
    pub fn q_vertices(&self, z: &Zonotope, i: usize) -> Vec<Vec3> {
        let d = &self.per_facet[i];
        let chart = z.facets()[d.facet].chart();
        let mut gens = d.r_gens.clone();
        gens.push(z.gens()[self.edge_gen].clone());
        zonogon_vertices(&Vec3::zero(), &gens, chart)
    }
}

/// Start points of the two edges of `facet` parallel to `u` (each runs from
/// its start to `start + u`).
fn u_edge_starts(facet: &Facet, u: &Vec3) -> Vec<Vec3> {
    let n = facet.vertices.len();
    let mut out = Vec::with_capacity(2);
    for t in 0..n {
        let e = &facet.edge_vectors[t];
        if e == u {
            out.push(facet.vertices[t].clone());
        } else if *e == -u {
            out.push(facet.vertices[(t + 1) % n].clone());
        }
    }
    out
}

fn facet_has_u_edge(facet: &Facet, u: &Vec3, start: &Vec3) -> bool {
    u_edge_starts(facet, u).contains(start)
}

/// Computes the edge translates and residual zonogons of every belt facet.
pub fn belt_decompose(z: &Zonotope, belt: &Belt) -> BeltDecomposition {
    let u = &z.gens()[belt.edge_gen];
    let n = belt.facets.len();
    let f1 = &z.facets()[belt.facets[0]];
    let starts1 = u_edge_starts(f1, u);
    assert_eq!(starts1.len(), 2, "belt facet must have two belt edges");
    let f2 = &z.facets()[belt.facets[1]];
    // the edge shared with the next facet in the cycle is G_2, the other G_1
    let (g1, _g2) = if facet_has_u_edge(f2, u, &starts1[1]) {
        (starts1[0].clone(), starts1[1].clone())
    } else {
        debug_assert!(facet_has_u_edge(f2, u, &starts1[0]));
        (starts1[1].clone(), starts1[0].clone())
    };

    let mut per_facet = Vec::with_capacity(n);
    let mut cur = g1;
    for pos in 0..n {
        let fi = &z.facets()[belt.facets[pos]];
        let starts = u_edge_starts(fi, u);
        assert!(starts.contains(&cur), "belt cycle lost the running edge");
        let next = starts
            .into_iter()
            .find(|s| *s != cur)
            .expect("facet has two distinct belt edges");
        let g_sum = &next - &cur;

        let mut r_indices: Vec<usize> = fi
            .coplanar
            .iter()
            .copied()
            .filter(|&j| j != belt.edge_gen)
            .collect();
        // clockwise (from outside) angular order within the facet plane
        r_indices.sort_by(|&i, &j| {
            let di = fi.chart().dir2(&z.gens()[i]);
            let dj = fi.chart().dir2(&z.gens()[j]);
            angle_cmp(&dj, &di)
        });
        let mut r_gens = Vec::with_capacity(r_indices.len());
        for &j in &r_indices {
            let d = &z.gens()[j];
            let plus = fi.contains_point(&(&cur + d), false);
            debug_assert!(plus || fi.contains_point(&(&cur - d), false));
            r_gens.push(if plus { d.clone() } else { -d });
        }
        let total = r_gens.iter().fold(Vec3::zero(), |acc, g| acc + g);
        assert_eq!(total, g_sum, "residual generators must sum to the step");

        per_facet.push(BeltFacetDecomp {
            facet: belt.facets[pos],
            edge_start: cur.clone(),
            r_indices,
            r_gens,
            g_sum,
        });
        cur = next;
    }

    BeltDecomposition {
        edge_gen: belt.edge_gen,
        per_facet,
    }
}

/// Per-belt facet counts for the Venkov criterion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BeltSize {
    pub generator: usize,
    pub facet_count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VenkovReport {
    pub ok: bool,
    pub belts: Vec<BeltSize>,
    /// Generator index of the first belt with more than six facets.
    pub witness: Option<usize>,
}

/// True iff every belt has four or six facets.
pub fn check_venkov(z: &Zonotope) -> VenkovReport {
    let sizes: Vec<BeltSize> = belts(z)
        .iter()
        .map(|b| BeltSize {
            generator: b.edge_gen,
            facet_count: b.facets.len(),
        })
        .collect();
    let witness = sizes
        .iter()
        .find(|s| s.facet_count != 4 && s.facet_count != 6)
        .map(|s| s.generator);
    VenkovReport {
        ok: witness.is_none(),
        belts: sizes,
        witness,
    }
}

/// The five three-dimensional parallelohedron types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum FedorovClass {
    Parallelepiped,
    HexagonalPrism,
    RhombicDodecahedron,
    ElongatedDodecahedron,
    TruncatedOctahedron,
    NotParallelohedron {
        /// Generator index of the offending belt.
        witness: usize,
    },
}

/// Classifies a zonotope by the Venkov criterion and its facet census.
pub fn classify_fedorov(z: &Zonotope) -> Result<FedorovClass, BeltError> {
    let venkov = check_venkov(z);
    if let Some(witness) = venkov.witness {
        return Ok(FedorovClass::NotParallelohedron { witness });
    }
    let mut quads = 0usize;
    let mut hexes = 0usize;
    for f in z.facets() {
        match f.vertices.len() {
            4 => quads += 1,
            6 => hexes += 1,
            _ => return Err(BeltError::UnclassifiableWithVenkovPass),
        }
    }
    match (quads, hexes) {
        (6, 0) => Ok(FedorovClass::Parallelepiped),
        (6, 2) => Ok(FedorovClass::HexagonalPrism),
        (12, 0) => Ok(FedorovClass::RhombicDodecahedron),
        (8, 4) => Ok(FedorovClass::ElongatedDodecahedron),
        (6, 8) => Ok(FedorovClass::TruncatedOctahedron),
        _ => Err(BeltError::UnclassifiableWithVenkovPass),
    }
}

/// Checks that the first belt facet plus each residual zonogon stays inside
/// the zonotope (vertex-wise, closed membership).
pub fn check_lemma5(z: &Zonotope, decomp: &BeltDecomposition) -> bool {
    let m = decomp.m();
    let f1 = &z.facets()[decomp.per_facet[0].facet];
    for i in 1..m {
        for r in decomp.r_vertices(z, i) {
            for v in &f1.vertices {
                if !z.contains(&(v + &r), Containment::Closed) {
                    return false;
                }
            }
        }
    }
    true
}

/// The open-membership refinement for belts with at least six facets: the
/// facet midpoint plus each nonzero residual vertex is strictly interior.
pub fn check_corollary1(z: &Zonotope, decomp: &BeltDecomposition) -> bool {
    let m = decomp.m();
    if m < 3 {
        return true;
    }
    let mid = z.facets()[decomp.per_facet[0].facet].center();
    for i in 1..m {
        for r in decomp.r_vertices(z, i) {
            if r.is_zero() {
                continue;
            }
            if !z.contains(&(&mid + &r), Containment::Open) {
                return false;
            }
        }
    }
    true
}

/// Result of intersecting a facet with a coplanar translate of itself.
#[derive(Clone, Debug)]
pub enum FacetMeet {
    /// Disjoint.
    Empty,
    /// Nonempty intersection that misses (or only touches) the base edge.
    PolygonOnly(Vec<Vec3>),
    /// Intersection together with the base-edge data.
    WithBase(Box<FacetIntersection>),
}

#[derive(Clone, Debug)]
pub struct FacetIntersection {
    /// Intersection polygon, ccw as seen from outside the facet.
    pub polygon: Vec<Vec3>,
    /// Endpoints of the clipped base edge, in clockwise edge orientation.
    pub base_edge: (Vec3, Vec3),
    /// Edge-direction indices of the partially present directions
    /// (1-based, in the clockwise edge enumeration; 0 when not applicable).
    pub s: usize,
    pub t: usize,
    pub alpha: Rat,
    pub beta: Rat,
    /// Translation vector carrying the base edge to its opposite edge.
    pub translation: Vec3,
    /// Whether the `s < t` prefix/suffix form was recovered.
    pub lemma_form: bool,
}

/// Exact intersection of a facet polygon with its translate by `shift`,
/// with the clipped base edge and translation vector recovered when the
/// base edge survives.
///
/// `base_edge` indexes an edge of the facet polygon in its ccw vertex order;
/// the edge enumeration used for the direction indices runs clockwise from
/// that edge.
pub fn facet_intersection(
    facet: &Facet,
    base_edge: usize,
    shift: &Vec3,
) -> Result<FacetMeet, BeltError> {
    let n = facet.vertices.len();
    if base_edge >= n {
        return Err(BeltError::BadEdgeIndex(base_edge, n));
    }
    if !shift.dot(&facet.normal).is_zero() {
        return Err(BeltError::ShiftNotCoplanar);
    }
    let chart = facet.chart();
    let poly = facet.verts2();
    let shift2 = chart.dir2(shift);
    let moved: Vec<Vec2> = poly.iter().map(|p| p + &shift2).collect();
    let q2 = convex_clip(poly, &moved);
    if q2.is_empty() {
        return Ok(FacetMeet::Empty);
    }
    let to3 = |pts: &[Vec2]| pts.iter().map(|p| chart.to3(p)).collect::<Vec<Vec3>>();
    if q2.len() < 3 || signed_area2(&q2).is_zero() {
        return Ok(FacetMeet::PolygonOnly(to3(&q2)));
    }

    // clockwise edge enumeration starting at the base edge
    let cw_vertex = |j: usize| &poly[(base_edge + 1 + n - (j % n)) % n];
    let k = n / 2 - 1;
    let edge_dir = |j: usize| cw_vertex(j + 1) - cw_vertex(j);

    // clip the base edge against the intersection
    let (a2, b2) = match clip_segment(cw_vertex(0), cw_vertex(1), &q2) {
        Some(seg) => seg,
        None => return Ok(FacetMeet::PolygonOnly(to3(&q2))),
    };

    // locate the clipped base edge among the cw edges of the intersection
    let mut q_cw: Vec<Vec2> = q2.iter().rev().cloned().collect();
    let len = q_cw.len();
    debug_assert_eq!(len % 2, 0, "intersection of cs polygons must be cs");
    let idx = match (0..len).find(|&i| q_cw[i] == a2 && q_cw[(i + 1) % len] == b2) {
        Some(i) => i,
        None => return Ok(FacetMeet::PolygonOnly(to3(&q2))),
    };
    q_cw.rotate_left(idx);
    let r = len / 2;
    let g2 = &q_cw[(r + 1) % len] - &q_cw[0];
    debug_assert_eq!(&q_cw[1] + &g2, q_cw[r].clone());

    // match the cw edges between the base edge and its opposite to the
    // facet's own edge directions, in ascending index order
    let mut coeffs: Vec<(usize, Rat)> = Vec::new();
    let mut next_j = 1usize;
    let mut consistent = true;
    for e in 1..r {
        let ev = &q_cw[(e + 1) % len] - &q_cw[e];
        let mut matched = false;
        while next_j <= k {
            let uj = edge_dir(next_j);
            if ev.cross(&uj).is_zero() && ev.dot(&uj).is_positive() {
                let c = if !uj.x.is_zero() {
                    &ev.x / &uj.x
                } else {
                    &ev.y / &uj.y
                };
                coeffs.push((next_j, c));
                next_j += 1;
                matched = true;
                break;
            }
            next_j += 1;
        }
        if !matched {
            consistent = false;
            break;
        }
    }

    let (mut s, mut t) = (0usize, 0usize);
    let mut alpha = Rat::zero();
    let mut beta = Rat::zero();
    let mut lemma_form = false;
    if consistent {
        let full: Vec<usize> = coeffs
            .iter()
            .filter(|(_, c)| c.is_one())
            .map(|&(j, _)| j)
            .collect();
        let partial: Vec<usize> = coeffs
            .iter()
            .filter(|(_, c)| !c.is_one())
            .map(|&(j, _)| j)
            .collect();
        let coeff_of = |j: usize| {
            coeffs
                .iter()
                .find(|&&(i, _)| i == j)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero)
        };
        'outer: for cand_s in 1..=k {
            for cand_t in (cand_s..=k).rev() {
                let pattern_ok = (1..=k).all(|j| {
                    let in_full = full.contains(&j);
                    let in_partial = partial.contains(&j);
                    if j < cand_s || j > cand_t {
                        in_full
                    } else if j == cand_s || j == cand_t {
                        !in_full
                    } else {
                        !in_full && !in_partial
                    }
                }) && partial.iter().all(|&j| j == cand_s || j == cand_t);
                if pattern_ok {
                    s = cand_s;
                    t = cand_t;
                    alpha = coeff_of(cand_s);
                    beta = coeff_of(cand_t);
                    lemma_form = cand_s < cand_t;
                    break 'outer;
                }
            }
        }
    }

    Ok(FacetMeet::WithBase(Box::new(FacetIntersection {
        polygon: to3(&q2),
        base_edge: (chart.to3(&a2), chart.to3(&b2)),
        s,
        t,
        alpha,
        beta,
        translation: chart.dir3(&g2),
        lemma_form,
    })))
}
