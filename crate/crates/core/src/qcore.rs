//! Value algebra for unordered pairs of points in the plane.
//!
//! A 2-valued function takes values in the space of unordered pairs
//! `[[p1]] + [[p2]]`. [`QPoint`] stores the two points in the order they were
//! given; every operation here is insensitive to that order.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Default tolerance used when counting the support of a pair.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-9;

/// A point (or vector) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Unit vector at angle `theta`.
    pub fn polar(theta: f64) -> Self {
        Vec2::new(theta.cos(), theta.sin())
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Rotation by `angle` counter-clockwise.
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(v: [f64; 2]) -> Self {
        Vec2::new(v[0], v[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(self * v.x, self * v.y)
    }
}

/// Unordered pair of planar points, the value of a 2-valued function.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QPoint {
    pub p1: Vec2,
    pub p2: Vec2,
}

impl QPoint {
    pub const fn new(p1: Vec2, p2: Vec2) -> Self {
        QPoint { p1, p2 }
    }

    /// The doubled point `2[[p]]`.
    pub const fn doubled(p: Vec2) -> Self {
        QPoint { p1: p, p2: p }
    }

    /// The doubled origin `2[[0]]`.
    pub const fn zero() -> Self {
        QPoint::doubled(Vec2::ZERO)
    }

    /// Both points scaled by `s` (range dilation).
    pub fn scale(self, s: f64) -> Self {
        QPoint::new(s * self.p1, s * self.p2)
    }

    /// Both points rotated by `angle`.
    pub fn rotate(self, angle: f64) -> Self {
        QPoint::new(self.p1.rotate(angle), self.p2.rotate(angle))
    }

    pub fn swapped(self) -> Self {
        QPoint::new(self.p2, self.p1)
    }

    /// Distance in the pairing metric; see [`pair_distance`].
    pub fn distance(&self, other: &QPoint) -> f64 {
        pair_distance(self, other)
    }
}

/// Almgren's metric on unordered pairs: the smaller of the two root-sum-square
/// displacements over both ways of pairing the points.
pub fn pair_distance(p: &QPoint, q: &QPoint) -> f64 {
    let direct = (p.p1 - q.p1).norm_sq() + (p.p2 - q.p2).norm_sq();
    let crossed = (p.p1 - q.p2).norm_sq() + (p.p2 - q.p1).norm_sq();
    direct.min(crossed).sqrt()
}

/// Average of the two values.
pub fn eta(p: &QPoint) -> Vec2 {
    0.5 * (p.p1 + p.p2)
}

/// Squared distance to the doubled origin, `|p1|^2 + |p2|^2`.
pub fn dist_to_zero_sq(p: &QPoint) -> f64 {
    p.p1.norm_sq() + p.p2.norm_sq()
}

/// Cardinality of the support: 1 when the two points agree within `tol`.
pub fn support_card(p: &QPoint, tol: f64) -> u8 {
    if (p.p1 - p.p2).norm() <= tol {
        1
    } else {
        2
    }
}
