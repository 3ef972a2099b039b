//! The generalized Haga fold and its parametrization by a tangent circle.
//!
//! A square `ABCD` of side `d` is folded so that `C` lands on a point `E` of
//! the line `DA`. The crease `m` is the perpendicular bisector of `CE`, `G`
//! is the image of `B`, and `F` is where `EG` meets `AB` (`F = B` when
//! `E = A`). Let `Δ` be the circle of radius `d` centered at `C`; the circle
//! `Γ` touching `DA` and `Δ` at the second tangent contact `T` from `E`
//! determines the fold, and its parameter `n` (signed by the side of `T`)
//! sorts the fold into seven cases.
//!
//! Frame: `A = (0, 0)`, `B = (d, 0)`, `C = (d, d)`, `D = (0, d)` and
//! `E = (0, e)`. Then `Γ` has radius `(d − e)² / d`, touches `DA` at
//! `K = (0, 2e − d)`, and `E` is the midpoint of `DK`.

use std::fmt;

use serde::Serialize;

use crate::check::Check;
use crate::ct::{CtFigure, CtParam};
use crate::geom::{
    self, line_line_intersection, perpendicular_bisector, reflect_point, Circle, Line, Point,
    Tolerance,
};
use crate::{Error, Result};

/// `ρ = (1 + √2)²`.
pub const RHO: f64 = 3.0 + 2.0 * std::f64::consts::SQRT_2;
/// `ρ⁻¹ = 3 − 2√2`.
pub const RHO_INV: f64 = 3.0 - 2.0 * std::f64::consts::SQRT_2;

/// Parameter of `H(n)`: any real except `−1/2`, or `0̄` for `E = D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HagaParam {
    Real(f64),
    ZeroBar,
}

impl HagaParam {
    pub fn value(&self) -> f64 {
        match *self {
            HagaParam::Real(v) => v,
            HagaParam::ZeroBar => 0.0,
        }
    }

    pub fn is_zero_bar(&self) -> bool {
        matches!(self, HagaParam::ZeroBar)
    }
}

impl fmt::Display for HagaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HagaParam::Real(v) => write!(f, "{v}"),
            HagaParam::ZeroBar => f.write_str("0\u{304}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseLabel {
    /// `D` between `E` and `A`, `|DE| > d`: `−2 < n < −1/2`.
    H1,
    /// `D` is the midpoint of `EA`: `n = −2`.
    H2,
    /// `D` between `E` and `A`, `|DE| < d`: `n < −2`.
    H3,
    /// `E = D`: `n = 0̄`.
    H4,
    /// `E` between `D` and `A`: `n > 0`.
    H5,
    /// `E = A`: `n = 0`.
    H6,
    /// `A` between `D` and `E`: `−1/2 < n < 0`.
    H7,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 7] = [
        CaseLabel::H1,
        CaseLabel::H2,
        CaseLabel::H3,
        CaseLabel::H4,
        CaseLabel::H5,
        CaseLabel::H6,
        CaseLabel::H7,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::H1 => "h1",
            CaseLabel::H2 => "h2",
            CaseLabel::H3 => "h3",
            CaseLabel::H4 => "h4",
            CaseLabel::H5 => "h5",
            CaseLabel::H6 => "h6",
            CaseLabel::H7 => "h7",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Circle `Γ` belonging to a fold, with its foot `K` on `DA` and its contact
/// `T` with `Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldCircle {
    pub gamma: Circle,
    pub foot: Point,
    pub contact: Point,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HagaFigure {
    /// Side length `d`, also the radius of `Δ`.
    pub side: f64,
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    /// Signed coordinate of `E` along `DA` (`A` at 0, `D` at `d`).
    pub e_coord: f64,
    pub e: Point,
    pub crease: Line,
    pub g: Point,
    pub f: Option<Point>,
    pub delta: Circle,
    /// `Γ(n)`; the point-circle `D` for `0̄`.
    pub gamma: Circle,
    /// `K`, the foot of `Γ` on `DA`.
    pub gamma_foot: Point,
    /// `T`, the contact of `Γ` and `Δ`; `D` for `0̄`.
    pub contact: Point,
    pub n: HagaParam,
    pub case: CaseLabel,
    pub crease_interior: bool,
}

fn check_side(d: f64) -> Result<()> {
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::domain(format!(
            "side length d must be positive and finite, got {d}"
        )));
    }
    Ok(())
}

/// `Γ`, `K` and `T` for the fold point `E = (0, e)`, `e ≠ d`.
pub fn gamma_from_e(d: f64, e: f64) -> Result<FoldCircle> {
    check_side(d)?;
    if !e.is_finite() {
        return Err(Error::domain("fold coordinate e must be finite"));
    }
    if e == d {
        return Err(Error::degenerate("E = D: Γ degenerates to the point D"));
    }
    let r = (d - e).powi(2) / d;
    let foot = Point::new(0.0, 2.0 * e - d);
    let gamma = Circle::new(Point::new(r, foot.y), r);
    let c = Point::new(d, d);
    let contact = c.lerp(gamma.center, d / (d + r));
    Ok(FoldCircle {
        gamma,
        foot,
        contact,
    })
}

/// Parameter of a proper `Γ` touching `DA` at `foot` and `Δ` at `contact`.
/// Unsigned part: `τ|AK| / (2r) + 1/2` with `τ = +1` iff `K` is on the
/// square's side of `AB`; negated when `T` lies outside `ABCD`; `T = B`
/// gives 0.
pub fn n_from_gamma(
    d: f64,
    gamma: &Circle,
    foot: Point,
    contact: Point,
    tol: &Tolerance,
) -> HagaParam {
    if gamma.is_point() {
        return HagaParam::ZeroBar;
    }
    let b = Point::new(d, 0.0);
    if contact.approx_eq(b, tol) {
        return HagaParam::Real(0.0);
    }
    let ab = Line::horizontal(0.0);
    let tau = if ab.signed_distance(foot) >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let magnitude = tau * foot.norm() / (2.0 * gamma.radius) + 0.5;
    let inside = (0.0..=d).contains(&contact.x) && (0.0..=d).contains(&contact.y);
    HagaParam::Real(if inside { magnitude } else { -magnitude })
}

/// Position `e` of `E` on `DA` producing `H(n)`.
///
/// With `q = √(d/r)`: for `n ≥ 0`, `n = (q − 1)² / 2` and `e = d − d/q`;
/// for `−1/2 < n < 0` the decreasing branch `n = −q(q/2 − 1) − 1/2` gives
/// `q ∈ (0, 1)` and `e = d − d/q < 0`; for `n < −1/2` the increasing branch
/// `n = −q(q/2 + 1) − 1/2` gives `e = d + d/q > d`.
pub fn e_from_n(d: f64, n: HagaParam) -> Result<f64> {
    check_side(d)?;
    let n = match n {
        HagaParam::ZeroBar => return Ok(d),
        HagaParam::Real(n) if !n.is_finite() => {
            return Err(Error::domain("parameter n must be finite"))
        }
        HagaParam::Real(-0.5) => {
            return Err(Error::domain(
                "n = -1/2 is not attained by any fold (it corresponds to the tangent of Δ parallel to DA)",
            ))
        }
        HagaParam::Real(n) => n,
    };
    let e = if n >= 0.0 {
        let q = 1.0 + (2.0 * n).sqrt();
        d - d / q
    } else if n > -0.5 {
        let q = 1.0 - (-2.0 * n).sqrt();
        d - d / q
    } else {
        let q = (-2.0 * n).sqrt() - 1.0;
        d + d / q
    };
    if !e.is_finite() {
        return Err(Error::domain(format!("no finite fold for n = {n}")));
    }
    Ok(e)
}

/// Case from the parameter ranges. The equality cases `n = −2`, `0̄` and
/// `n = 0` take priority over the open intervals; comparisons use `eps_abs`.
pub fn classify_param(n: HagaParam, tol: &Tolerance) -> CaseLabel {
    let n = match n {
        HagaParam::ZeroBar => return CaseLabel::H4,
        HagaParam::Real(n) => n,
    };
    let eps = tol.eps_abs;
    if (n + 2.0).abs() <= eps {
        CaseLabel::H2
    } else if n.abs() <= eps {
        CaseLabel::H6
    } else if n > 0.0 {
        CaseLabel::H5
    } else if n > -0.5 {
        CaseLabel::H7
    } else if n > -2.0 {
        CaseLabel::H1
    } else {
        CaseLabel::H3
    }
}

/// Case from the position of `E` relative to `D` and `A` alone.
pub fn classify_position(d: f64, e: f64, tol: &Tolerance) -> CaseLabel {
    let eq = |x: f64, y: f64| tol.admits(x - y, d);
    if eq(e, d) {
        CaseLabel::H4
    } else if eq(e, 0.0) {
        CaseLabel::H6
    } else if eq(e, 2.0 * d) {
        CaseLabel::H2
    } else if e < 0.0 {
        CaseLabel::H7
    } else if e < d {
        CaseLabel::H5
    } else if e < 2.0 * d {
        CaseLabel::H3
    } else {
        CaseLabel::H1
    }
}

pub fn classify_case(fig: &HagaFigure, tol: &Tolerance) -> CaseLabel {
    classify_param(fig.n, tol)
}

/// The crease crosses the open square in cases h3 to h6, and in h7 exactly
/// when `−ρ⁻¹ < n < 0`.
pub fn crease_rule(case: CaseLabel, n: HagaParam, tol: &Tolerance) -> bool {
    match case {
        CaseLabel::H1 | CaseLabel::H2 => false,
        CaseLabel::H3 | CaseLabel::H4 | CaseLabel::H5 | CaseLabel::H6 => true,
        CaseLabel::H7 => n.value() > -RHO_INV + tol.bound(RHO_INV),
    }
}

pub fn crease_passes_interior(fig: &HagaFigure, tol: &Tolerance) -> bool {
    crease_rule(fig.case, fig.n, tol)
}

/// Whether `line` meets the open square `(0, d)²`: some corner lies strictly
/// on each side.
pub fn crease_meets_open_square(line: &Line, d: f64, tol: &Tolerance) -> bool {
    let bound = tol.bound(d);
    let corners = [
        Point::new(0.0, 0.0),
        Point::new(d, 0.0),
        Point::new(d, d),
        Point::new(0.0, d),
    ];
    let s: Vec<f64> = corners.iter().map(|&p| line.signed_distance(p)).collect();
    s.iter().any(|&x| x > bound) && s.iter().any(|&x| x < -bound)
}

impl HagaFigure {
    /// Fold the square of side `d` so that `C` lands on `E = (0, e)`.
    pub fn from_e(d: f64, e: f64, tol: &Tolerance) -> Result<HagaFigure> {
        check_side(d)?;
        if !e.is_finite() {
            return Err(Error::domain("fold coordinate e must be finite"));
        }
        let (a, b, c, dp) = (
            Point::new(0.0, 0.0),
            Point::new(d, 0.0),
            Point::new(d, d),
            Point::new(0.0, d),
        );
        let ep = Point::new(0.0, e);
        let crease = perpendicular_bisector(c, ep, tol)?;
        let g = reflect_point(b, &crease);
        let at_a = tol.admits(e, d);
        let at_d = tol.admits(e - d, d);

        let f = if at_a {
            Some(b)
        } else if at_d {
            None
        } else {
            let eg = Line::through(ep, g)?;
            line_line_intersection(&eg, &Line::horizontal(0.0), tol)
        };

        let (gamma, gamma_foot, contact, n) = if at_d {
            (Circle::point(dp), dp, dp, HagaParam::ZeroBar)
        } else {
            let fc = gamma_from_e(d, e)?;
            let n = n_from_gamma(d, &fc.gamma, fc.foot, fc.contact, tol);
            (fc.gamma, fc.foot, fc.contact, n)
        };
        let case = classify_param(n, tol);
        Ok(HagaFigure {
            side: d,
            a,
            b,
            c,
            d: dp,
            e_coord: e,
            e: ep,
            crease,
            g,
            f,
            delta: Circle::new(c, d),
            gamma,
            gamma_foot,
            contact,
            n,
            case,
            crease_interior: crease_rule(case, n, tol),
        })
    }

    pub fn from_n(d: f64, n: HagaParam, tol: &Tolerance) -> Result<HagaFigure> {
        Self::from_e(d, e_from_n(d, n)?, tol)
    }

    pub fn r(&self) -> f64 {
        self.gamma.radius
    }

    /// The same configuration read as `CT(n)` with `k = DA`, `l = AB` and
    /// `Δ₁ = Δ`, in the `CT` frame (coordinates swapped, see
    /// [`ct_to_fold_frame`]). Only for `n ≥ 0` and `0̄`.
    pub fn as_ct(&self) -> Option<CtFigure> {
        match self.n {
            HagaParam::ZeroBar => CtFigure::build(self.side, CtParam::ZeroBar).ok(),
            HagaParam::Real(n) if n >= 0.0 => CtFigure::build(self.r(), CtParam::Real(n)).ok(),
            HagaParam::Real(_) => None,
        }
    }

    /// Largest distance from `E` to the second tangent contact from `E`
    /// on `Δ` and `T`; zero when `T` is that contact. For `0̄`, `E` lies on
    /// `Δ` and is its own tangent contact.
    pub fn contact_residual(&self, tol: &Tolerance) -> Option<f64> {
        let t = self.contact;
        if self.n.is_zero_bar() {
            return Some(self.e.distance(t));
        }
        let (p, q) = geom::tangent_contact_from_external_point(self.e, &self.delta, tol).ok()?;
        let far = |x: Point| x.distance(self.d);
        let other = if far(p) >= far(q) { p } else { q };
        Some(other.distance(t))
    }
}

/// Map a point of the `CT` frame (`k` = x-axis) to the fold frame
/// (`DA` = y-axis). The map swaps coordinates and is its own inverse.
pub fn ct_to_fold_frame(p: Point) -> Point {
    Point::new(p.y, p.x)
}

/// The fold with `E` the midpoint of `DA`: `F` divides `AB` as `2 : 1`,
/// `n = 1/2` and `d = 4r`.
pub fn midpoint_fold_check(d: f64, tol: &Tolerance) -> Result<Vec<Check>> {
    let fig = HagaFigure::from_e(d, 0.5 * d, tol)?;
    let f = fig.f.ok_or_else(|| Error::precondition("F missing"))?;
    Ok(vec![
        Check::close(
            "|AF| = 2d/3",
            fig.a.distance(f),
            2.0 * d / 3.0,
            tol.bound(d),
        ),
        Check::close(
            "|AF| : |FB| = 2",
            fig.a.distance(f) / f.distance(fig.b),
            2.0,
            tol.bound(2.0),
        ),
        Check::close("n = 1/2", fig.n.value(), 0.5, tol.bound(0.5)),
        Check::holds("case h5", fig.case == CaseLabel::H5),
        Check::close("d = 4r", 4.0 * fig.r(), d, tol.bound(d)),
    ])
}

/// Position of `E` in `(0, d)` that puts `F` at the midpoint of `AB`,
/// found by bisection on the folded geometry.
pub fn fold_with_f_at_midpoint(d: f64, tol: &Tolerance) -> Result<f64> {
    check_side(d)?;
    let gap = |e: f64| -> Result<f64> {
        let fig = HagaFigure::from_e(d, e, tol)?;
        let f = fig.f.ok_or_else(|| Error::precondition("F missing"))?;
        Ok(f.x - 0.5 * d)
    };
    let (mut lo, mut hi) = (0.5 * d, 0.95 * d);
    let (g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::precondition(
            "bisection bracket does not straddle the root",
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid)?.signum() == g_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The fold with `F` the midpoint of `AB`: `E` and `K` trisect `DA`,
/// `n = 2`, the companion circle is `Γ(1/8)` of radius `4d/9`, and the
/// internal common tangent of `Γ(1/8)` and `Δ` meets `DA` at `K`.
pub fn f_midpoint_fold_check(d: f64, tol: &Tolerance) -> Result<Vec<Check>> {
    let e = fold_with_f_at_midpoint(d, tol)?;
    let fig = HagaFigure::from_e(d, e, tol)?;
    let ct = fig
        .as_ct()
        .ok_or_else(|| Error::precondition("fold is not a CT figure"))?;
    let pair = ct.companion();
    let tangent = geom::internal_common_tangent_at_contact(&ct.delta1, &pair.gamma_bar(), tol)?;
    let foot = line_line_intersection(&tangent, &ct.k, tol)
        .map(ct_to_fold_frame)
        .ok_or_else(|| Error::degenerate("tangent parallel to DA"))?;
    Ok(vec![
        Check::close("e = 2d/3", e, 2.0 * d / 3.0, tol.bound(d)),
        Check::close("n = 2", fig.n.value(), 2.0, tol.bound(2.0)),
        Check::close(
            "|AK| = d/3",
            fig.gamma_foot.distance(fig.a),
            d / 3.0,
            tol.bound(d),
        ),
        Check::close("|DE| = d/3", fig.e.distance(fig.d), d / 3.0, tol.bound(d)),
        Check::close(
            "companion n = 1/8",
            pair.n_bar().value(),
            0.125,
            tol.bound(0.125),
        ),
        Check::close(
            "companion radius = 4d/9",
            pair.gamma_bar().radius,
            4.0 * d / 9.0,
            tol.bound(d),
        ),
        Check::close(
            "tangent foot = K",
            foot.distance(fig.gamma_foot),
            0.0,
            tol.bound(d),
        ),
    ])
}
