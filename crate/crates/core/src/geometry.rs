//! Segment and angle primitives.
//!
//! Crossings are *interior* crossings only: two segments that merely touch at an
//! endpoint, or that overlap along a common line, do not cross. The crossing
//! angle of a non-crossing pair is defined to be a right angle, so that it never
//! lowers a minimum.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Relative tolerance applied to orientation tests on non-integer input.
pub const ORIENT_REL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Unit vector in the same direction; the zero vector maps to itself.
    pub fn normalized(self) -> Point {
        let len = self.norm();
        if len > 0.0 {
            Point::new(self.x / len, self.y / len)
        } else {
            self
        }
    }

    /// Rotates counter-clockwise about the origin.
    pub fn rotated(self, radians: f64) -> Point {
        let (s, c) = radians.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An angle in radians.
///
/// Crossing angles live in `(0, π/2]`, slopes in `[-π/2, π/2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const RIGHT: Angle = Angle(FRAC_PI_2);

    pub const fn from_radians(radians: f64) -> Self {
        Angle(radians)
    }

    pub fn from_degrees(degrees: f64) -> Self {
        Angle(degrees.to_radians())
    }

    pub const fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn is_right(self) -> bool {
        self.0 == FRAC_PI_2
    }

    pub fn total_cmp(&self, other: &Angle) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }

    pub fn min(self, other: Angle) -> Angle {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}°", self.degrees())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("segment endpoints coincide at {0}")]
    ZeroLength(Point),
    #[error("non-finite coordinate in {0}")]
    NonFinite(Point),
}

/// A closed straight-line segment with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeometryError> {
        for p in [a, b] {
            if !p.is_finite() {
                return Err(GeometryError::NonFinite(p));
            }
        }
        if a == b {
            return Err(GeometryError::ZeroLength(a));
        }
        Ok(Self { a, b })
    }

    /// Builds a segment from endpoints already known to be distinct and finite
    /// (e.g. taken from a validated drawing).
    pub(crate) fn new_unchecked(a: Point, b: Point) -> Self {
        debug_assert!(a != b, "zero-length segment at {a}");
        Self { a, b }
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn direction(&self) -> Point {
        self.b - self.a
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn reversed(&self) -> Segment {
        Segment { a: self.b, b: self.a }
    }
}

fn is_integral(v: f64) -> bool {
    v.fract() == 0.0
}

/// Sign of the orientation of `c` relative to the directed line `a -> b`:
/// `1` for counter-clockwise, `-1` for clockwise, `0` for collinear.
///
/// All-integer input is decided with a zero tolerance; otherwise values within
/// [`ORIENT_REL_EPS`] of the magnitude of the two products count as collinear.
pub fn orientation(a: Point, b: Point, c: Point) -> i8 {
    let lhs = (b.x - a.x) * (c.y - a.y);
    let rhs = (b.y - a.y) * (c.x - a.x);
    let det = lhs - rhs;
    let exact = [a.x, a.y, b.x, b.y, c.x, c.y].into_iter().all(is_integral);
    let eps = if exact {
        0.0
    } else {
        ORIENT_REL_EPS * (lhs.abs() + rhs.abs())
    };
    if det > eps {
        1
    } else if det < -eps {
        -1
    } else {
        0
    }
}

/// Returns the crossing point when the open interiors of the two segments meet
/// in exactly one point. Endpoint contact and collinear overlap yield `None`.
pub fn interior_intersection(s1: &Segment, s2: &Segment) -> Option<Point> {
    let o1 = orientation(s1.a, s1.b, s2.a);
    let o2 = orientation(s1.a, s1.b, s2.b);
    if o1 == 0 || o2 == 0 || o1 == o2 {
        return None;
    }
    let o3 = orientation(s2.a, s2.b, s1.a);
    let o4 = orientation(s2.a, s2.b, s1.b);
    if o3 == 0 || o4 == 0 || o3 == o4 {
        return None;
    }
    // Signed distances (times |s2|) of s1's endpoints to the line of s2.
    let d2 = s2.direction();
    let da = d2.cross(s1.a - s2.a);
    let db = d2.cross(s1.b - s2.a);
    let t = da / (da - db);
    Some(s1.a + s1.direction() * t)
}

/// Whether the two segments cross in their interiors.
pub fn segments_cross(s1: &Segment, s2: &Segment) -> bool {
    let o1 = orientation(s1.a, s1.b, s2.a);
    let o2 = orientation(s1.a, s1.b, s2.b);
    if o1 == 0 || o2 == 0 || o1 == o2 {
        return false;
    }
    let o3 = orientation(s2.a, s2.b, s1.a);
    let o4 = orientation(s2.a, s2.b, s1.b);
    o3 != 0 && o4 != 0 && o3 != o4
}

/// Acute (or right) angle between the supporting lines of two direction vectors.
pub fn line_angle(u: Point, v: Point) -> Angle {
    Angle(u.cross(v).abs().atan2(u.dot(v).abs()))
}

/// The crossing angle of a pair of segments: the acute angle between them if
/// they cross in their interiors, otherwise exactly `π/2`.
pub fn crossing_angle_pair(s1: &Segment, s2: &Segment) -> Angle {
    if segments_cross(s1, s2) {
        line_angle(s1.direction(), s2.direction())
    } else {
        Angle::RIGHT
    }
}

/// `arctan(Δy/Δx)`, or `-π/2` for a vertical segment. Independent of endpoint order.
pub fn slope(s: &Segment) -> Angle {
    let d = s.direction();
    if d.x != 0.0 {
        Angle((d.y / d.x).atan())
    } else {
        Angle(-FRAC_PI_2)
    }
}

/// Smallest angle between two lines given by their slopes.
pub fn slope_difference(s1: Angle, s2: Angle) -> Angle {
    let diff = (s1.0 - s2.0).abs();
    Angle(diff.min(PI - diff))
}

/// Whether `p` lies in the open interior of `s`.
pub fn point_in_interior(p: Point, s: &Segment) -> bool {
    if p == s.a || p == s.b {
        return false;
    }
    if orientation(s.a, s.b, p) != 0 {
        return false;
    }
    let d = s.direction();
    let t = (p - s.a).dot(d);
    t > 0.0 && t < d.dot(d)
}
