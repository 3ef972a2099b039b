//! The tangent-circle figure `CT(n)`.
//!
//! Two perpendicular lines `k` and `l` meet at `A`. A circle `Γ` of radius
//! `r` touches `k` at `K`, and two circles `Δ₁`, `Δ₂` (radii `d₂ ≤ d₁`) touch
//! `k` on the side of `Γ`, touch `l` from the same side, and touch `Γ`
//! externally. The parameter is
//!
//! ```text
//! n = τ·|AK| / (2r) + 1/2,   τ = +1 iff K and Δ₁ lie on the same side of l.
//! ```
//!
//! Figures are built in a fixed frame: `A = (0, 0)`, `k` is the x-axis, `l`
//! the y-axis, every circle sits above `k`, and `Δᵢ` lies on the `x > 0` side
//! of `l`, so `Δᵢ` has center `(dᵢ, dᵢ)` and `Γ` has center `(τ·|AK|, r)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::{
    self, line_line_intersection, line_tangent_to_circle, Circle, Line, Point, Tolerance,
};
use crate::{Error, Result};

/// Parameter of `CT(n)`: a nonnegative real or the sentinel `0̄` for the
/// figure whose `Γ` has shrunk to a point `K ≠ A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CtParam {
    Real(f64),
    ZeroBar,
}

impl CtParam {
    pub fn real(value: f64) -> Result<CtParam> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::domain(format!(
                "CT parameter must be a finite nonnegative real or 0̄, got {value}"
            )));
        }
        Ok(CtParam::Real(value))
    }

    /// Numeric value; `0̄` counts as 0.
    pub fn value(&self) -> f64 {
        match *self {
            CtParam::Real(v) => v,
            CtParam::ZeroBar => 0.0,
        }
    }

    pub fn is_zero_bar(&self) -> bool {
        matches!(self, CtParam::ZeroBar)
    }
}

impl fmt::Display for CtParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CtParam::Real(v) => write!(f, "{v}"),
            CtParam::ZeroBar => f.write_str("0\u{304}"),
        }
    }
}

/// Division with `a / 0 = 0` for every `a`.
pub fn safe_div(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        a / b
    }
}

fn check_radius(r: f64, what: &str) -> Result<()> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::domain(format!(
            "{what} must be positive and finite, got {r}"
        )));
    }
    Ok(())
}

/// `(d₁, d₂) = ((√(2n) + 1)² r, (√(2n) − 1)² r)`.
pub fn radii_from_n(n: CtParam, r: f64) -> Result<(f64, f64)> {
    let CtParam::Real(n) = n else {
        return Err(Error::domain(
            "the radii of Δ₁, Δ₂ are not determined by r when n = 0̄",
        ));
    };
    CtParam::real(n)?;
    check_radius(r, "radius r")?;
    let s = (2.0 * n).sqrt();
    Ok(((s + 1.0).powi(2) * r, (s - 1.0).powi(2) * r))
}

/// `|AK| = √(d₁ d₂)`.
pub fn ak_length(d1: f64, d2: f64) -> Result<f64> {
    if !(d1.is_finite() && d2.is_finite()) || d1 < 0.0 || d2 < 0.0 {
        return Err(Error::domain(format!(
            "radii must be nonnegative and finite, got d1={d1}, d2={d2}"
        )));
    }
    Ok((d1 * d2).sqrt())
}

/// Which of the two circles touching `k`, `Δ₁` and `Δ₂` is meant: `Low` for
/// `0 ≤ n ≤ 1/2`, `High` for `n > 1/2` or `n = 0̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Low,
    High,
}

/// Radius `r` of `Γ` from `d₁ ≥ d₂ ≥ 0`: `√r = (√d₁ ± √d₂) / 2`.
pub fn gamma_radius_from_radii(d1: f64, d2: f64, branch: Branch) -> Result<f64> {
    ak_length(d1, d2)?;
    if d2 > d1 {
        return Err(Error::domain(format!(
            "expected d2 <= d1, got d1={d1}, d2={d2}"
        )));
    }
    let (a1, a2) = (d1.sqrt(), d2.sqrt());
    let root = match branch {
        Branch::Low => 0.5 * (a1 + a2),
        Branch::High => 0.5 * (a1 - a2),
    };
    Ok(root * root)
}

/// Residuals of every tangency in a [`CtFigure`]; each is a signed
/// distance minus the expected distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangencyResiduals {
    pub gamma_k: f64,
    pub gamma_delta1: f64,
    pub gamma_delta2: f64,
    pub delta1_k: f64,
    pub delta1_l: f64,
    pub delta2_k: f64,
    pub delta2_l: f64,
}

impl TangencyResiduals {
    pub fn max_abs(&self) -> f64 {
        [
            self.gamma_k,
            self.gamma_delta1,
            self.gamma_delta2,
            self.delta1_k,
            self.delta1_l,
            self.delta2_k,
            self.delta2_l,
        ]
        .into_iter()
        .fold(0.0, |m, x| m.max(x.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CtFigure {
    /// `A`, the intersection of `k` and `l`.
    pub origin: Point,
    pub k: Line,
    pub l: Line,
    pub gamma: Circle,
    /// `K`, where `Γ` touches `k`.
    pub gamma_foot: Point,
    pub delta1: Circle,
    pub delta2: Circle,
    /// `D₁`, where `Δ₁` touches `k`.
    pub delta1_foot: Point,
    /// `D₂`, where `Δ₂` touches `k`.
    pub delta2_foot: Point,
    pub tau: i8,
    pub n: CtParam,
}

impl CtFigure {
    /// Build `CT(n)`. For real `n`, `length` is the radius `r` of `Γ`; for
    /// `0̄` it is the placement length `|AK|`.
    pub fn build(length: f64, n: CtParam) -> Result<CtFigure> {
        match n {
            CtParam::Real(value) => {
                let n = CtParam::real(value)?;
                check_radius(length, "radius r")?;
                let r = length;
                let (d1, d2) = radii_from_n(n, r)?;
                let tau: i8 = if 2.0 * value - 1.0 >= 0.0 { 1 } else { -1 };
                let kx = (2.0 * value - 1.0) * r;
                let delta2 = if d2 == 0.0 {
                    Circle::point(Point::ORIGIN)
                } else {
                    Circle::new(Point::new(d2, d2), d2)
                };
                Ok(Self::in_frame(
                    Circle::new(Point::new(kx, r), r),
                    Circle::new(Point::new(d1, d1), d1),
                    delta2,
                    tau,
                    n,
                ))
            }
            CtParam::ZeroBar => {
                check_radius(length, "placement length |AK|")?;
                let delta = Circle::new(Point::new(length, length), length);
                Ok(Self::in_frame(
                    Circle::point(Point::new(length, 0.0)),
                    delta,
                    delta,
                    1,
                    CtParam::ZeroBar,
                ))
            }
        }
    }

    fn in_frame(gamma: Circle, delta1: Circle, delta2: Circle, tau: i8, n: CtParam) -> CtFigure {
        CtFigure {
            origin: Point::ORIGIN,
            k: Line::horizontal(0.0),
            l: Line::vertical(0.0),
            gamma,
            gamma_foot: Point::new(gamma.center.x, 0.0),
            delta1,
            delta2,
            delta1_foot: Point::new(delta1.center.x, 0.0),
            delta2_foot: Point::new(delta2.center.x, 0.0),
            tau,
            n,
        }
    }

    pub fn r(&self) -> f64 {
        self.gamma.radius
    }

    pub fn d1(&self) -> f64 {
        self.delta1.radius
    }

    pub fn d2(&self) -> f64 {
        self.delta2.radius
    }

    /// Measured `|AK|`.
    pub fn ak(&self) -> f64 {
        self.origin.distance(self.gamma_foot)
    }

    /// `τ` read off the geometry; `+1` when `K` lies on `l`.
    pub fn measured_tau(&self) -> i8 {
        let sk = self.l.signed_distance(self.gamma_foot);
        let sd = self.l.signed_distance(self.delta1.center);
        if sk * sd >= 0.0 {
            1
        } else {
            -1
        }
    }

    /// The parameter recovered from the geometry; a point-circle `Γ` gives `0̄`.
    pub fn measured_param(&self) -> CtParam {
        if self.gamma.is_point() {
            return CtParam::ZeroBar;
        }
        let n = f64::from(self.measured_tau()) * self.ak() / (2.0 * self.r()) + 0.5;
        CtParam::Real(n.max(0.0))
    }

    pub fn residuals(&self) -> TangencyResiduals {
        TangencyResiduals {
            gamma_k: self.gamma.line_tangency_residual(&self.k),
            gamma_delta1: self.gamma.external_tangency_residual(&self.delta1),
            gamma_delta2: self.gamma.external_tangency_residual(&self.delta2),
            delta1_k: self.delta1.line_tangency_residual(&self.k),
            delta1_l: self.delta1.line_tangency_residual(&self.l),
            delta2_k: self.delta2.line_tangency_residual(&self.k),
            delta2_l: self.delta2.line_tangency_residual(&self.l),
        }
    }

    /// Check every incidence and tangency of the figure.
    pub fn validate(&self, tol: &Tolerance) -> Result<()> {
        let scale = self.d1().max(1.0);
        let worst = self.residuals().max_abs();
        if worst > tol.bound(scale) {
            return Err(Error::precondition(format!("tangency residual {worst:e}")));
        }
        if self.d2() > self.d1() + tol.bound(scale) {
            return Err(Error::precondition("d2 exceeds d1"));
        }
        if line_tangent_to_circle(&self.k, &self.gamma, tol).is_none() {
            return Err(Error::precondition("Γ does not touch k"));
        }
        if let CtParam::Real(n) = self.n {
            let CtParam::Real(m) = self.measured_param() else {
                return Err(Error::precondition("Γ is a point but n is real"));
            };
            if !tol.admits(n - m, n) {
                return Err(Error::precondition(format!(
                    "parameter {n} but geometry gives {m}"
                )));
            }
        }
        Ok(())
    }

    /// Feet `E₁`, `E₂` on `k` of the internal common tangents of `Γ` with
    /// `Δ₁` and `Δ₂`.
    pub fn tangent_feet(&self, tol: &Tolerance) -> Result<TangentFeet> {
        let n = match self.n {
            CtParam::Real(n) if n > 0.0 => n,
            _ => {
                return Err(Error::domain(format!(
                    "internal tangent feet need n ≠ 0, 0̄ (got n = {})",
                    self.n
                )))
            }
        };
        let expected = 1.0 / (2.0 * n).sqrt();
        let foot = |delta: &Circle| -> Result<Point> {
            let t = geom::internal_common_tangent_at_contact(delta, &self.gamma, tol)?;
            line_line_intersection(&t, &self.k, tol)
                .ok_or_else(|| Error::degenerate("internal tangent is parallel to k"))
        };
        let e1 = foot(&self.delta1)?;
        let e1_check = DivisionCheck::measure(self.delta1_foot, e1, self.origin, expected);
        let (e2, e2_check) = if self.delta2.is_point() {
            (None, None)
        } else {
            let e2 = foot(&self.delta2)?;
            let mut check = DivisionCheck::measure(self.delta2_foot, e2, self.origin, expected);
            check.midpoint_residual =
                Some(self.delta2_foot.distance(e2) - e2.distance(self.gamma_foot));
            (Some(e2), Some(check))
        };
        Ok(TangentFeet {
            e1,
            e2,
            e1_check,
            e2_check,
        })
    }

    /// The figure `CT(n̄)` sharing `k`, `l`, `Δ₁`, `Δ₂`.
    pub fn companion(&self) -> CompanionPair {
        let gamma_bar = match self.n {
            CtParam::Real(0.0) => Circle::point(self.delta1_foot),
            CtParam::ZeroBar => self.delta1.reflect(&self.l),
            CtParam::Real(_) => {
                let candidates = circles_touching_axis_and_pair(&self.delta1, &self.delta2);
                let gap = |c: &Circle| {
                    c.center.distance(self.gamma.center) + (c.radius - self.gamma.radius).abs()
                };
                candidates
                    .into_iter()
                    .max_by(|a, b| gap(a).total_cmp(&gap(b)))
                    .unwrap_or(self.gamma)
            }
        };
        let mut companion =
            Self::in_frame(gamma_bar, self.delta1, self.delta2, 1, CtParam::ZeroBar);
        companion.tau = companion.measured_tau();
        companion.n = companion.measured_param();
        if let (CtParam::Real(n), CtParam::Real(m)) = (self.n, companion.n) {
            if n == 0.5 && (m - 0.5).abs() < 1e-12 {
                companion.n = CtParam::Real(0.5);
            }
        }
        CompanionPair {
            base: *self,
            companion,
        }
    }

    /// The congruent chain `Γ₁ = Γ, Γ₂, …, Γₙ` along `k`, ending at the
    /// circle touching `l`. Needs a positive integer `n`.
    pub fn chain(&self) -> Result<Vec<Circle>> {
        let count = match self.n {
            CtParam::Real(n) if n >= 1.0 && n.fract() == 0.0 => n as usize,
            _ => {
                return Err(Error::domain(format!(
                    "the chain needs a positive integer n, got {}",
                    self.n
                )))
            }
        };
        let r = self.r();
        Ok((0..count)
            .map(|i| Circle::new(self.gamma.center - Point::new(2.0 * r * i as f64, 0.0), r))
            .collect())
    }
}

/// Circles above the x-axis touching it and touching `c1`, `c2` externally,
/// where `c1`, `c2` touch the x-axis from above (point-circles on the axis
/// allowed). Needs distinct feet.
///
/// A circle of radius `ρ` at `(x, ρ)` touches `(u, d)` externally iff
/// `(x − u)² = 4ρd`, so with `t = √ρ` both conditions give
/// `u₁ + 2σ₁t√d₁ = u₂ + 2σ₂t√d₂` for signs `σᵢ = ±1`.
pub fn circles_touching_axis_and_pair(c1: &Circle, c2: &Circle) -> Vec<Circle> {
    let (u1, u2) = (c1.center.x, c2.center.x);
    let (a1, a2) = (c1.radius.sqrt(), c2.radius.sqrt());
    let mut out: Vec<Circle> = Vec::new();
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            let denom = 2.0 * (s2 * a2 - s1 * a1);
            if denom == 0.0 {
                continue;
            }
            let t = (u1 - u2) / denom;
            if !(t.is_finite() && t > 0.0) {
                continue;
            }
            let x = u1 + 2.0 * s1 * t * a1;
            let c = Circle::new(Point::new(x, t * t), t * t);
            let dup = out.iter().any(|o| {
                o.center.distance(c.center) + (o.radius - c.radius).abs()
                    <= 1e-12 * c.radius.max(1.0)
            });
            if !dup {
                out.push(c);
            }
        }
    }
    out
}

/// Measured ratio `|DE| / |EA|` against its expected value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivisionCheck {
    pub measured: f64,
    pub expected: f64,
    /// `E` lies strictly between `D` and `A`.
    pub internal: bool,
    /// `|D₂E₂| − |E₂K|`, only for the second foot.
    pub midpoint_residual: Option<f64>,
}

impl DivisionCheck {
    fn measure(d: Point, e: Point, a: Point, expected: f64) -> DivisionCheck {
        DivisionCheck {
            measured: d.distance(e) / e.distance(a),
            expected,
            internal: (e - d).dot(e - a) < 0.0,
            midpoint_residual: None,
        }
    }

    pub fn relative_error(&self) -> f64 {
        (self.measured - self.expected).abs() / self.expected.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentFeet {
    pub e1: Point,
    /// Absent when `Δ₂` is the point `A` (`n = 1/2`).
    pub e2: Option<Point>,
    pub e1_check: DivisionCheck,
    pub e2_check: Option<DivisionCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompanionPair {
    pub base: CtFigure,
    pub companion: CtFigure,
}

impl CompanionPair {
    pub fn gamma_bar(&self) -> Circle {
        self.companion.gamma
    }

    pub fn n_bar(&self) -> CtParam {
        self.companion.n
    }

    /// Both sides of `2n = 1 / (2n̄)` under `a / 0 = 0`.
    pub fn reciprocal_sides(&self) -> (f64, f64) {
        (
            2.0 * self.base.n.value(),
            safe_div(1.0, 2.0 * self.companion.n.value()),
        )
    }

    /// `2(r + r̄) − (d₁ + d₂)`.
    pub fn radius_sum_residual(&self) -> f64 {
        2.0 * (self.base.r() + self.companion.r()) - (self.base.d1() + self.base.d2())
    }
}

/// Largest circle inside both of two intersecting disks.
pub fn maximal_circle_in_lens(c1: &Circle, c2: &Circle) -> Option<Circle> {
    let axis = c2.center - c1.center;
    let dist = axis.norm();
    if dist == 0.0 {
        let c = if c1.radius <= c2.radius { c1 } else { c2 };
        return Some(*c);
    }
    let u = axis * (1.0 / dist);
    // Both disks restricted to the center line, measured from c1's center.
    let lo = (-c1.radius).max(dist - c2.radius);
    let hi = c1.radius.min(dist + c2.radius);
    if hi <= lo {
        return None;
    }
    Some(Circle::new(
        c1.center + u * (0.5 * (lo + hi)),
        0.5 * (hi - lo),
    ))
}

/// A chain of `n` congruent circles of radius `r` with the circles `Δ₁`, `Δ₂`
/// of `CT(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainFigure {
    pub figure: CtFigure,
    pub circles: Vec<Circle>,
    pub d1: f64,
}

pub fn toyoyoshi_chain(n: u32, r: f64) -> Result<ChainFigure> {
    if n < 1 {
        return Err(Error::domain("the chain needs at least one circle"));
    }
    let figure = CtFigure::build(r, CtParam::real(f64::from(n))?)?;
    let circles = figure.chain()?;
    Ok(ChainFigure {
        d1: figure.d1(),
        figure,
        circles,
    })
}

/// Common answer `r = d / 9` of the curvilinear-triangle incircle problems,
/// which reduce to `CT(2)` with `d = d₁`.
pub fn solve_problem_1_2(d: f64) -> Result<f64> {
    check_radius(d, "d")?;
    let (d1, _) = radii_from_n(CtParam::Real(2.0), 1.0)?;
    Ok(d / d1)
}

/// Radius of the congruent circles of an `n`-chain whose large circle has
/// radius `s`: `r = s / (√(2n) + 1)²`.
pub fn solve_problem_5(s: f64, n: u32) -> Result<f64> {
    check_radius(s, "s")?;
    if n == 0 {
        return Err(Error::domain("the chain needs at least one circle"));
    }
    let (d1, _) = radii_from_n(CtParam::Real(f64::from(n)), 1.0)?;
    Ok(s / d1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Problem3Refutation {
    pub d: f64,
    pub r: f64,
    /// `d / r` implied by the tangency equation.
    pub ratio: f64,
    /// `d / r` claimed by the tablet's answer.
    pub claimed: f64,
    pub consistent: bool,
}

/// Solve `d = 2√(rd) + √2·r + r` for `r` and compare with the claimed
/// `r = d / 9`.
pub fn refute_problem_3(d: f64) -> Result<Problem3Refutation> {
    check_radius(d, "d")?;
    // With t = √(r/d): (1 + √2) t² + 2t − 1 = 0, positive root.
    let (a, b, c) = (1.0 + std::f64::consts::SQRT_2, 2.0, -1.0);
    let disc = (b * b - 4.0 * a * c).sqrt();
    let t = 2.0 * c / (-b - disc);
    let ratio = 1.0 / (t * t);
    let claimed = 9.0;
    Ok(Problem3Refutation {
        d,
        r: d / ratio,
        ratio,
        claimed,
        consistent: Tolerance::default().admits(ratio - claimed, claimed),
    })
}
