//! Wheel analysis at points on edge translates of a tiling: piece location
//! and E/F classification, the angle sum and its half-integer grid value,
//! the interior count, the balance identity, proper-point conditions and
//! the interior-count lower bound.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::belt::{belt_decompose, belt_of, facet_intersection, BeltDecomposition, FacetMeet};
use crate::error::WheelError;
use crate::exact::{lattice_points_in_box, Box3, Rat, Vec3};
use crate::plane::{Chart, Vec2};
use crate::tiling::{count_cover, PeriodicMultiset};
use crate::zonotope::{Containment, Location, Zonotope};

/// Angle tolerance relative to a full turn.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A point on an edge translate of the tiling, tagged with the belt edge
/// generator whose direction the host edge follows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WheelPoint {
    pub v: Vec3,
    /// Translation vector of the translate whose edge hosts `v`.
    pub host_translate: Vec3,
    /// Generator index of the belt whose edges are analyzed.
    pub edge_gen: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceKind {
    EType,
    FType,
}

/// One translate incident to the wheel point through its belt boundary.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Piece {
    pub translate: Vec3,
    pub kind: PieceKind,
    /// Interior dihedral angle at the shared edge for E-type; pi for F-type.
    pub dihedral_angle: f64,
    /// Belt facet indices of the reference body containing `v - translate`
    /// (two for E-type, one for F-type).
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WheelReport {
    pub point: Vec3,
    pub edge_gen: usize,
    /// Half the facet count of the belt.
    pub m: usize,
    pub pieces: Vec<Piece>,
    pub varpi: f64,
    /// Number of F-type pieces.
    pub ell: usize,
    /// Number of translates containing the point in their interior.
    pub phi: usize,
    pub kappa: Option<i64>,
    /// Exact grid value `kappa*(m-1)/2 + ell/2` when kappa is set.
    pub grid: Option<Rat>,
    pub tau_balance: bool,
}

/// Translation vectors of all translates whose closed body contains `x`.
fn incident_translates(z: &Zonotope, ms: &PeriodicMultiset, x: &Vec3) -> Vec<Vec3> {
    let mut out = Vec::new();
    for m in &ms.motif {
        let shifted = x - m;
        let lo = &shifted - &z.bbox().hi;
        let hi = &shifted - &z.bbox().lo;
        let bounds = Box3::new(lo, hi).expect("bbox is well formed");
        for lambda in lattice_points_in_box(&ms.lattice, &bounds) {
            let t = m + &lambda;
            if z.contains(&(x - &t), Containment::Closed) {
                out.push(t);
            }
        }
    }
    out.sort();
    out
}

/// True iff `q` lies on a facet translate outside the belt of `edge_gen`
/// (or on a vertex translate) for some body of the multiset.
fn in_kg(z: &Zonotope, ms: &PeriodicMultiset, belt_facets: &[usize], q: &Vec3) -> bool {
    for t in incident_translates(z, ms, q) {
        let p = q - &t;
        if z.locate(&p) != Location::Boundary {
            continue;
        }
        if z.is_vertex(&p) {
            return true;
        }
        if z.facets_containing(&p)
            .iter()
            .any(|f| !belt_facets.contains(f))
        {
            return true;
        }
    }
    false
}

fn dihedral_angle(z: &Zonotope, f1: usize, f2: usize) -> f64 {
    let n1 = z.facets()[f1].normal.to_f64();
    let n2 = z.facets()[f2].normal.to_f64();
    let dot = n1[0] * n2[0] + n1[1] * n2[1] + n1[2] * n2[2];
    let l1 = (n1[0] * n1[0] + n1[1] * n1[1] + n1[2] * n1[2]).sqrt();
    let l2 = (n2[0] * n2[0] + n2[1] * n2[1] + n2[2] * n2[2]).sqrt();
    std::f64::consts::PI - (dot / (l1 * l2)).clamp(-1.0, 1.0).acos()
}

/// All translates whose belt boundary contains the wheel point, classified.
pub fn locate_pieces(
    z: &Zonotope,
    ms: &PeriodicMultiset,
    wp: &WheelPoint,
) -> Result<Vec<Piece>, WheelError> {
    let belt = belt_of(z, wp.edge_gen);
    let mut pieces = Vec::new();
    for t in incident_translates(z, ms, &wp.v) {
        let p = &wp.v - &t;
        if z.locate(&p) != Location::Boundary {
            continue;
        }
        if z.is_vertex(&p) {
            return Err(WheelError::VertexContact);
        }
        let fids = z.facets_containing(&p);
        if fids.iter().any(|f| !belt.facets.contains(f)) {
            return Err(WheelError::KGContact);
        }
        match fids.len() {
            1 => pieces.push(Piece {
                translate: t,
                kind: PieceKind::FType,
                dihedral_angle: std::f64::consts::PI,
                facets: fids,
            }),
            2 => {
                let angle = dihedral_angle(z, fids[0], fids[1]);
                pieces.push(Piece {
                    translate: t,
                    kind: PieceKind::EType,
                    dihedral_angle: angle,
                    facets: fids,
                });
            }
            _ => unreachable!("three facets meet only at a vertex"),
        }
    }
    Ok(pieces)
}

/// Angle sum of the pieces in full turns.
pub fn varpi(pieces: &[Piece]) -> f64 {
    pieces.iter().map(|p| p.dihedral_angle).sum::<f64>() / (2.0 * std::f64::consts::PI)
}

/// Snaps an angle sum to the grid `kappa*(m-1)/2 + ell/2`, `kappa >= 1`.
pub fn snap(varpi: f64, m: usize, ell: usize, tol: f64) -> Result<(i64, Rat), WheelError> {
    let base = ell as f64 / 2.0;
    let step = (m as f64 - 1.0) / 2.0;
    let kappa = ((varpi - base) / step).round() as i64;
    let fits = kappa >= 1 && (varpi - (base + kappa as f64 * step)).abs() <= tol;
    if !fits {
        return Err(WheelError::NoHalfGridMatch(varpi));
    }
    let grid = Rat::new(ell as i64, 2) + Rat::from_int(kappa) * Rat::new(m as i64 - 1, 2);
    Ok((kappa, grid))
}

/// Number of translates containing `v` in their interior.
pub fn phi(z: &Zonotope, ms: &PeriodicMultiset, v: &Vec3) -> usize {
    count_cover(z, ms, v, Containment::Open)
}

/// Full wheel analysis of one point, checking the balance identity
/// `snap(varpi) + phi = k` against the verified multiplicity `k`.
pub fn check_eq10(
    z: &Zonotope,
    ms: &PeriodicMultiset,
    k: usize,
    wp: &WheelPoint,
    tol: f64,
) -> Result<WheelReport, WheelError> {
    let belt = belt_of(z, wp.edge_gen);
    let m = belt.m();
    let pieces = locate_pieces(z, ms, wp)?;
    let w = varpi(&pieces);
    let ell = pieces.iter().filter(|p| p.kind == PieceKind::FType).count();
    let (kappa, grid) = snap(w, m, ell, tol)?;
    let ph = phi(z, ms, &wp.v);
    let tau_balance = &grid + &Rat::from_int(ph as i64) == Rat::from_int(k as i64);
    Ok(WheelReport {
        point: wp.v.clone(),
        edge_gen: wp.edge_gen,
        m,
        pieces,
        varpi: w,
        ell,
        phi: ph,
        kappa: Some(kappa),
        grid: Some(grid),
        tau_balance,
    })
}

/// A failed proper-point condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ProperFailure {
    /// Condition 1: the point itself touches a vertex or off-belt facet.
    PointInKg,
    /// Condition 2: no valid edge point for an F-type incidence.
    NoCleanEdgePoint { translate: Vec3 },
    /// Condition 3: a coplanar facet-pair intersection has its translated
    /// point on an off-belt boundary.
    CorrespondingPointInKg { translate: Vec3 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProperPointReport {
    pub proper: bool,
    pub failures: Vec<ProperFailure>,
}

/// Parameter interval of the segment `a + t*d`, `t` in `[0,1]`, inside a
/// ccw convex polygon; degenerate (single-point) intervals are kept.
fn clip_param(a: &Vec2, d: &Vec2, poly: &[Vec2]) -> Option<(Rat, Rat)> {
    let mut t_lo = Rat::zero();
    let mut t_hi = Rat::one();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        let edge = q - p;
        let num = edge.cross(&(a - p));
        let den = edge.cross(d);
        match den.signum() {
            0 => {
                if num.signum() < 0 {
                    return None;
                }
            }
            s => {
                let t = -num / &den;
                if s > 0 {
                    if t > t_lo {
                        t_lo = t;
                    }
                } else if t < t_hi {
                    t_hi = t;
                }
            }
        }
    }
    if t_lo > t_hi {
        return None;
    }
    Some((t_lo, t_hi))
}

fn decomp_position(decomp: &BeltDecomposition, fid: usize) -> usize {
    decomp
        .per_facet
        .iter()
        .position(|d| d.facet == fid)
        .expect("piece facet belongs to the belt")
}

/// Checks the three proper-point conditions at `wp`.
pub fn is_proper_point(z: &Zonotope, ms: &PeriodicMultiset, wp: &WheelPoint) -> ProperPointReport {
    let belt = belt_of(z, wp.edge_gen);
    let decomp = belt_decompose(z, &belt);
    let u = &z.gens()[wp.edge_gen];
    let mut failures = Vec::new();

    // condition 1: the point avoids vertex and off-belt facet translates
    let pieces = match locate_pieces(z, ms, wp) {
        Ok(p) => p,
        Err(_) => {
            return ProperPointReport {
                proper: false,
                failures: vec![ProperFailure::PointInKg],
            }
        }
    };

    // condition 2: every F-type incidence admits an edge point whose pair of
    // corresponding points stays clear of vertex/off-belt translates
    for piece in pieces.iter().filter(|p| p.kind == PieceKind::FType) {
        let pos = decomp_position(&decomp, piece.facets[0]);
        let d = &decomp.per_facet[pos];
        let facet = &z.facets()[d.facet];
        let chart = Chart::new(Vec3::zero(), u.clone(), &facet.normal);
        let r_poly: Vec<Vec2> = decomp
            .r_vertices(z, pos)
            .iter()
            .map(|p| chart.to2(p))
            .collect();
        // v - (s_i + x + c*u) must lie in the residual zonogon
        let w = &wp.v - &piece.translate - &d.edge_start;
        let a2 = chart.to2(&w);
        let d2 = chart.dir2(&-u);
        let interval = if r_poly.len() >= 3 {
            clip_param(&a2, &d2, &r_poly)
        } else {
            // the residual zonogon is a single segment from 0 to g_i
            let g2 = chart.dir2(&d.g_sum);
            let den = d2.cross(&g2);
            if den.is_zero() {
                None
            } else {
                let c = -(a2.cross(&g2)) / &den;
                let p = &a2 + &d2.scaled(&c);
                let t = if !g2.x.is_zero() {
                    &p.x / &g2.x
                } else {
                    &p.y / &g2.y
                };
                let on_edge = !c.is_negative() && c <= Rat::one();
                if on_edge && !t.is_negative() && t <= Rat::one() {
                    Some((c.clone(), c))
                } else {
                    None
                }
            }
        };
        let mut found = false;
        {
            if let Some((lo, hi)) = interval {
                let span = &hi - &lo;
                let mut candidates = vec![&lo + &(&span * &Rat::new(1, 2))];
                for num in [1i64, 3, 2, 5] {
                    candidates.push(&lo + &(&span * &Rat::new(num, 7)));
                }
                candidates.push(lo.clone());
                candidates.push(hi.clone());
                for c in candidates {
                    let v_star = &piece.translate + &d.edge_start + &u.scaled(&c);
                    let v_star_star = &v_star + &d.g_sum;
                    if !in_kg(z, ms, &belt.facets, &v_star)
                        && !in_kg(z, ms, &belt.facets, &v_star_star)
                    {
                        found = true;
                        break;
                    }
                }
            }
        }
        if !found {
            failures.push(ProperFailure::NoCleanEdgePoint {
                translate: piece.translate.clone(),
            });
        }
    }

    // condition 3: coplanar facet pairs among the located pieces
    for host in pieces.iter().filter(|p| p.kind == PieceKind::EType) {
        let p_local = &wp.v - &host.translate;
        for &fid in &host.facets {
            let facet = &z.facets()[fid];
            // the edge of this facet through the wheel point
            let base_edge = (0..facet.vertices.len()).find(|&t| {
                let e = &facet.edge_vectors[t];
                if !(e == u || *e == -u) {
                    return false;
                }
                let rel = &p_local - &facet.vertices[t];
                rel.cross(e).is_zero() && {
                    let num = rel.dot(e);
                    !num.is_negative() && num <= e.norm2()
                }
            });
            let base_edge = match base_edge {
                Some(t) => t,
                None => continue,
            };
            let plane_val = facet.normal.dot(&(&facet.vertices[0] + &host.translate));
            for other in &pieces {
                for &fid2 in &other.facets {
                    if other.translate == host.translate && fid2 == fid {
                        continue;
                    }
                    let facet2 = &z.facets()[fid2];
                    if !facet.normal.cross(&facet2.normal).is_zero() {
                        continue;
                    }
                    if facet.normal.dot(&(&facet2.vertices[0] + &other.translate)) != plane_val {
                        continue;
                    }
                    // coplanar belt facets are translates of one another
                    let delta =
                        &(facet2.center() + &other.translate) - &(facet.center() + &host.translate);
                    let meet = facet_intersection(facet, base_edge, &delta)
                        .expect("shift lies in the facet plane");
                    if let FacetMeet::WithBase(fx) = meet {
                        // does the surviving base edge contain the point?
                        let (a, b) = (&fx.base_edge.0, &fx.base_edge.1);
                        let seg = b - a;
                        let rel = &p_local - a;
                        let on_edge = rel.cross(&seg).is_zero() && {
                            let num = rel.dot(&seg);
                            !num.is_negative() && num <= seg.norm2()
                        };
                        if on_edge && in_kg(z, ms, &belt.facets, &(&wp.v + &fx.translation)) {
                            failures.push(ProperFailure::CorrespondingPointInKg {
                                translate: other.translate.clone(),
                            });
                        }
                    }
                }
            }
        }
    }

    ProperPointReport {
        proper: failures.is_empty(),
        failures,
    }
}

/// Interior-count lower bound at a proper point of a belt with `2m` facets.
pub fn lemma10_bound(m: usize) -> usize {
    m.saturating_sub(2) / 2
}

pub fn check_lemma10(z: &Zonotope, ms: &PeriodicMultiset, wp: &WheelPoint) -> bool {
    let m = belt_of(z, wp.edge_gen).m();
    phi(z, ms, &wp.v) >= lemma10_bound(m)
}

/// Rejection-samples `n` proper points on random edge translates of the
/// belt of `edge_gen`, deterministically from the seed.
pub fn sample_proper_points(
    z: &Zonotope,
    ms: &PeriodicMultiset,
    edge_gen: usize,
    n: usize,
    seed: u64,
) -> Result<Vec<WheelPoint>, WheelError> {
    let belt = belt_of(z, edge_gen);
    let decomp = belt_decompose(z, &belt);
    let u = &z.gens()[edge_gen];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = 524_287i64;
    let max_attempts = 100 * n;
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n && attempts < max_attempts {
        attempts += 1;
        let m_idx = rng.random_range(0..ms.motif.len());
        let lam = ms.lattice.point(
            rng.random_range(-1..=1),
            rng.random_range(-1..=1),
            rng.random_range(-1..=1),
        );
        let host = &ms.motif[m_idx] + &lam;
        let pos = rng.random_range(0..decomp.per_facet.len());
        let t = Rat::new(rng.random_range(1..q), q);
        let v = &host + &decomp.per_facet[pos].edge_start + &u.scaled(&t);
        let wp = WheelPoint {
            v,
            host_translate: host,
            edge_gen,
        };
        if is_proper_point(z, ms, &wp).proper {
            out.push(wp);
        }
    }
    if out.len() < n {
        return Err(WheelError::RejectionExhausted {
            wanted: n,
            attempts,
        });
    }
    Ok(out)
}
