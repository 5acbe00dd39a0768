//! Exact rational 3-vectors and the primitive predicates built on them.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use super::rat::Rat;
use crate::error::ExactError;

/// Point or vector in E^3 with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vec3 {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl Vec3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(Rat::from_int(x), Rat::from_int(y), Rat::from_int(z))
    }

    pub fn zero() -> Self {
        Vec3::from_ints(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &Vec3) -> Rat {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3::new(
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    pub fn scaled(&self, s: &Rat) -> Vec3 {
        Vec3::new(&self.x * s, &self.y * s, &self.z * s)
    }

    pub fn coord(&self, axis: usize) -> &Rat {
        match axis {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("axis out of range"),
        }
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }

    /// Lexicographically positive representative of the line through `self`.
    /// The first nonzero coordinate becomes positive.
    pub fn lex_canonical(&self) -> Vec3 {
        let sign = if !self.x.is_zero() {
            self.x.signum()
        } else if !self.y.is_zero() {
            self.y.signum()
        } else {
            self.z.signum()
        };
        if sign < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

macro_rules! impl_vec_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Vec3> for &Vec3 {
            type Output = Vec3;
            fn $method(self, rhs: &Vec3) -> Vec3 {
                Vec3::new(
                    (&self.x).$method(&rhs.x),
                    (&self.y).$method(&rhs.y),
                    (&self.z).$method(&rhs.z),
                )
            }
        }
        impl $trait<Vec3> for Vec3 {
            type Output = Vec3;
            fn $method(self, rhs: Vec3) -> Vec3 {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Vec3> for Vec3 {
            type Output = Vec3;
            fn $method(self, rhs: &Vec3) -> Vec3 {
                (&self).$method(rhs)
            }
        }
        impl $trait<Vec3> for &Vec3 {
            type Output = Vec3;
            fn $method(self, rhs: Vec3) -> Vec3 {
                self.$method(&rhs)
            }
        }
    };
}

impl_vec_binop!(Add, add);
impl_vec_binop!(Sub, sub);

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        -&self
    }
}

impl Serialize for Vec3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string(), self.z.to_string()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Vec3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coords: [String; 3] = Deserialize::deserialize(deserializer)?;
        let parse = |s: &str| Rat::from_str(s).map_err(serde::de::Error::custom);
        Ok(Vec3::new(
            parse(&coords[0])?,
            parse(&coords[1])?,
            parse(&coords[2])?,
        ))
    }
}

/// Exact signed determinant of the 3x3 matrix with rows `a`, `b`, `c`.
pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Rat {
    a.dot(&b.cross(c))
}

/// True iff two nonzero vectors span the same line.
pub fn parallel(a: &Vec3, b: &Vec3) -> Result<bool, ExactError> {
    if a.is_zero() || b.is_zero() {
        return Err(ExactError::ZeroVector);
    }
    Ok(a.cross(b).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det3_examples() {
        let e1 = Vec3::from_ints(1, 0, 0);
        let e2 = Vec3::from_ints(0, 1, 0);
        let e3 = Vec3::from_ints(0, 0, 1);
        assert_eq!(det3(&e1, &e2, &e3), Rat::from_int(1));

        // cofactor expansion by hand:
        // |  1  1  1 |
        // |  1 -1  1 |  = 1*(-1-1) - 1*(1+1) + 1*(1-1) = -4
        // | -1  1  1 |
        let a = Vec3::from_ints(1, 1, 1);
        let b = Vec3::from_ints(1, -1, 1);
        let c = Vec3::from_ints(-1, 1, 1);
        assert_eq!(det3(&a, &b, &c), Rat::from_int(-4));

        let dep = Vec3::from_ints(2, 0, 0);
        assert_eq!(det3(&e1, &dep, &e3), Rat::zero());
    }

    #[test]
    fn parallel_examples() {
        let e1 = Vec3::from_ints(1, 0, 0);
        let e2 = Vec3::from_ints(0, 1, 0);
        assert!(parallel(&e1, &Vec3::from_ints(2, 0, 0)).unwrap());
        assert!(!parallel(&e1, &e2).unwrap());
        assert!(parallel(&Vec3::from_ints(2, 4, 6), &Vec3::from_ints(1, 2, 3)).unwrap());
        assert!(parallel(&e1, &Vec3::zero()).is_err());
    }

    #[test]
    fn vec3_serde_as_string_triples() {
        let v = Vec3::new(Rat::new(1, 2), Rat::from_int(-3), Rat::zero());
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["1/2","-3","0"]"#);
        let back: Vec3 = serde_json::from_str(&json).unwrap();
        assert_eq!(v, back);
    }
}
