//! Exact 2D support geometry for facet polygons.
//!
//! Facets live in affine planes of E^3; all polygon work (membership,
//! clipping, zonogon walks) happens in exact 2D chart coordinates. This
//! module is plumbing for the facet machinery, not a standalone polygon
//! library.

use std::ops::{Add, Neg, Sub};

use crate::exact::{Rat, Vec3};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Vec2 {
    pub x: Rat,
    pub y: Rat,
}

impl Vec2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Vec2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2::new(Rat::from_int(x), Rat::from_int(y))
    }

    pub fn zero() -> Self {
        Vec2::from_ints(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, other: &Vec2) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vec2) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scaled(&self, s: &Rat) -> Vec2 {
        Vec2::new(&self.x * s, &self.y * s)
    }
}

macro_rules! impl_vec2_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Vec2> for &Vec2 {
            type Output = Vec2;
            fn $method(self, rhs: &Vec2) -> Vec2 {
                Vec2::new((&self.x).$method(&rhs.x), (&self.y).$method(&rhs.y))
            }
        }
        impl $trait<Vec2> for Vec2 {
            type Output = Vec2;
            fn $method(self, rhs: Vec2) -> Vec2 {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_vec2_binop!(Add, add);
impl_vec2_binop!(Sub, sub);

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

/// Affine chart of a plane in E^3.
///
/// `a` and `b = normal x a` are orthogonal in-plane directions, so the chart
/// is exactly invertible on its plane.
#[derive(Clone, Debug)]
pub struct Chart {
    pub origin: Vec3,
    pub a: Vec3,
    pub b: Vec3,
    aa: Rat,
    bb: Rat,
}

impl Chart {
    /// `a` must be a nonzero vector in the plane, `normal` a nonzero vector
    /// orthogonal to it.
    pub fn new(origin: Vec3, a: Vec3, normal: &Vec3) -> Chart {
        debug_assert!(!a.is_zero() && !normal.is_zero());
        debug_assert!(a.dot(normal).is_zero());
        let b = normal.cross(&a);
        let aa = a.norm2();
        let bb = b.norm2();
        Chart {
            origin,
            a,
            b,
            aa,
            bb,
        }
    }

    /// Chart coordinates of a point on the plane.
    pub fn to2(&self, p: &Vec3) -> Vec2 {
        let d = p - &self.origin;
        Vec2::new(d.dot(&self.a), d.dot(&self.b))
    }

    /// Chart coordinates of an in-plane direction vector.
    pub fn dir2(&self, v: &Vec3) -> Vec2 {
        Vec2::new(v.dot(&self.a), v.dot(&self.b))
    }

    /// Inverse of [`Chart::to2`].
    pub fn to3(&self, q: &Vec2) -> Vec3 {
        &self.origin + self.a.scaled(&(&q.x / &self.aa)) + self.b.scaled(&(&q.y / &self.bb))
    }

    pub fn dir3(&self, v: &Vec2) -> Vec3 {
        self.a.scaled(&(&v.x / &self.aa)) + self.b.scaled(&(&v.y / &self.bb))
    }
}

/// Twice the signed area of a polygon (positive for ccw).
pub fn signed_area2(poly: &[Vec2]) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        acc = acc + poly[i].cross(&poly[j]);
    }
    acc
}

/// Membership in a ccw convex polygon.
pub fn poly_contains(poly: &[Vec2], p: &Vec2, strict: bool) -> bool {
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let edge = &poly[j] - &poly[i];
        let s = edge.cross(&(p - &poly[i])).signum();
        if s < 0 || (strict && s == 0) {
            return false;
        }
    }
    true
}

fn line_intersection(p: &Vec2, q: &Vec2, a: &Vec2, b: &Vec2) -> Vec2 {
    // intersection of segment pq's line with line ab
    let d = q - p;
    let e = b - a;
    let denom = d.cross(&e);
    debug_assert!(!denom.is_zero());
    let t = (a - p).cross(&e) / denom;
    p + &d.scaled(&t)
}

/// Exact Sutherland-Hodgman clip of a ccw convex `subject` by a ccw convex
/// `clip` polygon. The result is ccw; collinear duplicates are removed.
pub fn convex_clip(subject: &[Vec2], clip: &[Vec2]) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = subject.to_vec();
    for i in 0..clip.len() {
        if out.is_empty() {
            break;
        }
        let a = &clip[i];
        let b = &clip[(i + 1) % clip.len()];
        let edge = b - a;
        let inside = |p: &Vec2| edge.cross(&(p - a)).signum() >= 0;
        let input = std::mem::take(&mut out);
        for k in 0..input.len() {
            let cur = &input[k];
            let nxt = &input[(k + 1) % input.len()];
            let cur_in = inside(cur);
            let nxt_in = inside(nxt);
            if cur_in {
                out.push(cur.clone());
            }
            if cur_in != nxt_in {
                out.push(line_intersection(cur, nxt, a, b));
            }
        }
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
    }
    strip_collinear(out)
}

fn strip_collinear(poly: Vec<Vec2>) -> Vec<Vec2> {
    if poly.len() < 3 {
        return poly;
    }
    let n = poly.len();
    let mut keep = Vec::with_capacity(n);
    for i in 0..n {
        let prev = &poly[(i + n - 1) % n];
        let cur = &poly[i];
        let next = &poly[(i + 1) % n];
        if !(cur - prev).cross(&(next - cur)).is_zero() {
            keep.push(cur.clone());
        }
    }
    keep
}

/// Clips the segment `a..b` against a ccw convex polygon. Returns the
/// surviving parameter interval endpoints, or `None` if the intersection is
/// empty or a single point.
pub fn clip_segment(a: &Vec2, b: &Vec2, poly: &[Vec2]) -> Option<(Vec2, Vec2)> {
    let d = b - a;
    let mut t_lo = Rat::zero();
    let mut t_hi = Rat::one();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        let edge = q - p;
        // inside: edge x (x - p) >= 0
        let num = edge.cross(&(a - p));
        let den = edge.cross(&d);
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
    if t_lo >= t_hi {
        return None;
    }
    Some((a + &d.scaled(&t_lo), a + &d.scaled(&t_hi)))
}

/// Boundary chain of the zonogon `base + sum x_j gens[j]`, ccw in chart
/// coordinates, returned as 3D vertices. `gens` must be pairwise
/// non-parallel in-plane vectors.
pub fn zonogon_vertices(base: &Vec3, gens: &[Vec3], chart: &Chart) -> Vec<Vec3> {
    assert!(!gens.is_empty());
    let mut oriented: Vec<Vec3> = Vec::with_capacity(gens.len());
    let mut start = base.clone();
    for g in gens {
        let g2 = chart.dir2(g);
        let upper = g2.y.signum() > 0 || (g2.y.is_zero() && g2.x.signum() > 0);
        if upper {
            oriented.push(g.clone());
        } else {
            start = &start + g;
            oriented.push(-g);
        }
    }
    // ascending angle within the upper half plane
    oriented.sort_by(|u, v| {
        let (u2, v2) = (chart.dir2(u), chart.dir2(v));
        Rat::zero().cmp(&u2.cross(&v2))
    });
    let mut verts = Vec::with_capacity(2 * oriented.len());
    let mut p = start.clone();
    verts.push(p.clone());
    for g in &oriented {
        p = &p + g;
        verts.push(p.clone());
    }
    for g in oriented.iter().take(oriented.len() - 1) {
        p = &p - g;
        verts.push(p.clone());
    }
    verts
}
