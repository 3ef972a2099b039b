//! Planar primitives: points, normalized lines, circles (point-circles
//! included), reflections and tangency predicates.
//!
//! All lengths are plain `f64` multiples of a base unit. Predicates take an
//! explicit [`Tolerance`]; a residual `x` measured against a natural scale
//! `s` is accepted when `|x| <= max(eps_abs, eps_rel * s)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Absolute and relative comparison tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps_abs: f64, eps_rel: f64) -> Result<Self> {
        let valid = |e: f64| e.is_finite() && e > 0.0;
        if !valid(eps_abs) || !valid(eps_rel) {
            return Err(Error::domain(format!(
                "tolerances must be positive and finite (eps_abs={eps_abs}, eps_rel={eps_rel})"
            )));
        }
        Ok(Tolerance { eps_abs, eps_rel })
    }

    /// Same value for both tolerances.
    pub fn uniform(eps: f64) -> Result<Self> {
        Self::new(eps, eps)
    }

    /// Accepted deviation for a quantity of magnitude `scale`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.eps_abs.max(self.eps_rel * scale.abs())
    }

    pub fn admits(&self, residual: f64, scale: f64) -> bool {
        residual.abs() <= self.bound(scale)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_abs: Self::DEFAULT_EPS,
            eps_rel: Self::DEFAULT_EPS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(&self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Rotation by a quarter turn counter-clockwise.
    pub fn perp(&self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn distance(&self, other: Point) -> f64 {
        (*self - other).norm()
    }

    pub fn midpoint(&self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Point `self + t (other - self)`.
    pub fn lerp(&self, other: Point, t: f64) -> Point {
        *self + (other - *self) * t
    }

    pub fn approx_eq(&self, other: Point, tol: &Tolerance) -> bool {
        let scale = self.norm().max(other.norm());
        tol.admits(self.distance(other), scale)
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

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The locus `a·x + b·y + c = 0`, kept with `a² + b² = 1` and a canonical
/// sign (`a > 0`, or `a = 0` and `b > 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

impl Line {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::domain("line coefficients must be finite"));
        }
        let norm = a.hypot(b);
        if norm == 0.0 {
            return Err(Error::degenerate("line normal (a, b) is zero"));
        }
        let sign = if a < 0.0 || (a == 0.0 && b < 0.0) {
            -1.0
        } else {
            1.0
        };
        let s = sign / norm;
        Ok(Line {
            a: a * s,
            b: b * s,
            c: c * s,
        })
    }

    /// Line `x = value`.
    pub fn vertical(x: f64) -> Line {
        Line {
            a: 1.0,
            b: 0.0,
            c: -x,
        }
    }

    /// Line `y = value`.
    pub fn horizontal(y: f64) -> Line {
        Line {
            a: 0.0,
            b: 1.0,
            c: -y,
        }
    }

    pub fn through(p: Point, q: Point) -> Result<Line> {
        let dir = q - p;
        if dir.norm() == 0.0 {
            return Err(Error::degenerate(format!(
                "line through coincident points {p}"
            )));
        }
        Self::through_with_direction(p, dir)
    }

    pub fn through_with_direction(p: Point, dir: Point) -> Result<Line> {
        let normal = dir.perp();
        Line::new(normal.x, normal.y, -normal.dot(p))
    }

    pub fn through_with_normal(p: Point, normal: Point) -> Result<Line> {
        Line::new(normal.x, normal.y, -normal.dot(p))
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn normal(&self) -> Point {
        Point::new(self.a, self.b)
    }

    /// Unit direction vector, the normal rotated clockwise.
    pub fn direction(&self) -> Point {
        Point::new(self.b, -self.a)
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.signed_distance(p).abs()
    }

    /// Orthogonal projection of `p` on the line.
    pub fn foot(&self, p: Point) -> Point {
        p - self.normal() * self.signed_distance(p)
    }

    /// Some point on the line (the foot of the origin).
    pub fn anchor(&self) -> Point {
        self.foot(Point::ORIGIN)
    }

    pub fn contains(&self, p: Point, tol: &Tolerance) -> bool {
        tol.admits(self.signed_distance(p), p.norm())
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y + {} = 0", self.a, self.b, self.c)
    }
}

/// A circle; radius 0 is a legal point-circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    /// Panics on a negative or non-finite radius; use [`Circle::try_new`] for
    /// unchecked input.
    pub fn new(center: Point, radius: f64) -> Circle {
        Self::try_new(center, radius).expect("invalid circle")
    }

    pub fn try_new(center: Point, radius: f64) -> Result<Circle> {
        if !center.is_finite() {
            return Err(Error::domain("circle center must be finite"));
        }
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::domain(format!(
                "circle radius must be finite and nonnegative, got {radius}"
            )));
        }
        Ok(Circle { center, radius })
    }

    pub fn point(p: Point) -> Circle {
        Circle::new(p, 0.0)
    }

    pub fn is_point(&self) -> bool {
        self.radius == 0.0
    }

    /// Center distance minus the sum of radii.
    pub fn external_tangency_residual(&self, other: &Circle) -> f64 {
        self.center.distance(other.center) - (self.radius + other.radius)
    }

    /// Distance from the center to `line` minus the radius.
    pub fn line_tangency_residual(&self, line: &Line) -> f64 {
        line.distance(self.center) - self.radius
    }

    pub fn reflect(&self, m: &Line) -> Circle {
        Circle::new(reflect_point(self.center, m), self.radius)
    }

    pub fn approx_eq(&self, other: &Circle, tol: &Tolerance) -> bool {
        let scale = self.radius.max(other.radius).max(1.0);
        self.center.approx_eq(other.center, tol) && tol.admits(self.radius - other.radius, scale)
    }
}

/// Length `2√(rs)` of the external common tangent segment between the
/// contact points of two externally touching circles of radii `r`, `s`.
pub fn external_tangent_chord(r: f64, s: f64) -> Result<f64> {
    if !(r.is_finite() && s.is_finite()) || r < 0.0 || s < 0.0 {
        return Err(Error::domain(format!(
            "radii must be nonnegative and finite, got r={r}, s={s}"
        )));
    }
    Ok(2.0 * (r * s).sqrt())
}

pub fn reflect_point(p: Point, m: &Line) -> Point {
    p - m.normal() * (2.0 * m.signed_distance(p))
}

pub fn perpendicular_bisector(p: Point, q: Point, tol: &Tolerance) -> Result<Line> {
    let dir = q - p;
    if dir.norm() <= tol.eps_abs {
        return Err(Error::degenerate(format!(
            "perpendicular bisector of coincident points {p} and {q}"
        )));
    }
    Line::through_with_normal(p.midpoint(q), dir)
}

/// Intersection point, or `None` when the lines are parallel within
/// `eps_abs` (the determinant of unit normals is `sin` of the angle).
pub fn line_line_intersection(u: &Line, v: &Line, tol: &Tolerance) -> Option<Point> {
    let det = u.a * v.b - v.a * u.b;
    if det.abs() <= tol.eps_abs {
        return None;
    }
    let x = (u.b * v.c - v.b * u.c) / det;
    let y = (v.a * u.c - u.a * v.c) / det;
    Some(Point::new(x, y))
}

pub fn circles_externally_tangent(c1: &Circle, c2: &Circle, tol: &Tolerance) -> bool {
    tol.admits(c1.external_tangency_residual(c2), c1.radius + c2.radius)
}

/// Foot of tangency when `line` touches `c`, otherwise `None`.
pub fn line_tangent_to_circle(line: &Line, c: &Circle, tol: &Tolerance) -> Option<Point> {
    if tol.admits(c.line_tangency_residual(line), c.radius) {
        Some(line.foot(c.center))
    } else {
        None
    }
}

/// The line through the contact point of two externally touching proper
/// circles, perpendicular to their center line.
pub fn internal_common_tangent_at_contact(
    c1: &Circle,
    c2: &Circle,
    tol: &Tolerance,
) -> Result<Line> {
    if c1.radius <= 0.0 || c2.radius <= 0.0 {
        return Err(Error::precondition(
            "internal common tangent needs two proper circles",
        ));
    }
    if !circles_externally_tangent(c1, c2, tol) {
        return Err(Error::precondition(format!(
            "circles are not externally tangent (residual {:e})",
            c1.external_tangency_residual(c2)
        )));
    }
    let contact = contact_point(c1, c2);
    Line::through_with_normal(contact, c2.center - c1.center)
}

/// Point dividing the center segment in the ratio `r₁ : r₂`; the contact
/// point for externally touching circles.
pub fn contact_point(c1: &Circle, c2: &Circle) -> Point {
    let total = c1.radius + c2.radius;
    if total == 0.0 {
        return c1.center;
    }
    c1.center.lerp(c2.center, c1.radius / total)
}

/// Contact points of the two tangents from `p` to `c`. The first contact is
/// on the counter-clockwise side of the ray from the center towards `p`.
pub fn tangent_contact_from_external_point(
    p: Point,
    c: &Circle,
    tol: &Tolerance,
) -> Result<(Point, Point)> {
    let offset = p - c.center;
    let dist = offset.norm();
    if dist <= c.radius + tol.eps_abs {
        return Err(Error::domain(format!(
            "point {p} is not strictly outside the circle (distance {dist}, radius {})",
            c.radius
        )));
    }
    let u = offset * (1.0 / dist);
    let cos = c.radius / dist;
    let sin = (1.0 - cos * cos).max(0.0).sqrt();
    let along = c.center + u * (c.radius * cos);
    let across = u.perp() * (c.radius * sin);
    Ok((along + across, along - across))
}

/// Axis-aligned rectangle `[min.x, max.x] × [min.y, max.y]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    /// The chord of `line` inside the rectangle, if any.
    pub fn clip_line(&self, line: &Line) -> Option<(Point, Point)> {
        let origin = line.anchor();
        let dir = line.direction();
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for (o, d, min, max) in [
            (origin.x, dir.x, self.min.x, self.max.x),
            (origin.y, dir.y, self.min.y, self.max.y),
        ] {
            if d == 0.0 {
                if o < min || o > max {
                    return None;
                }
                continue;
            }
            let (t0, t1) = ((min - o) / d, (max - o) / d);
            lo = lo.max(t0.min(t1));
            hi = hi.min(t0.max(t1));
        }
        if lo > hi {
            return None;
        }
        Some((origin + dir * lo, origin + dir * hi))
    }
}
