//! Machine-readable JSON reports.
//!
//! Every report has the keys `schema_version`, `command`, `input`,
//! `derived`, `checks` and `passed`, in that order. Numbers carry 17
//! significant digits so every `f64` round-trips exactly; non-finite values
//! become `null`. The sentinel `0̄` is the string `"zerobar"`.

use serde::ser::Serializer;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::check::{all_passed, Check};
use crate::ct::{self, Branch, CtFigure, CtParam};
use crate::geom::{Point, Tolerance};
use crate::haga::{self, CaseLabel, HagaFigure, HagaParam};
use crate::verify::{self, InvariantResult, VerifyConfig};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Spelling of `0̄` on the command line and in JSON.
pub const ZERO_BAR: &str = "zerobar";

/// `x` with 17 significant digits: positional for decimal exponents in
/// `-5..16`, scientific otherwise.
pub fn format_sig17(x: f64) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e')?;
    let exp: i32 = exp.parse().ok()?;
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if (0..16).contains(&exp) {
        let split = exp as usize + 1;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else if (-5..0).contains(&exp) {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        format!("{mantissa}e{exp}")
    };
    Some(format!("{sign}{body}"))
}

/// A JSON number written by [`format_sig17`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match format_sig17(self.0) {
            Some(text) => RawValue::from_string(text)
                .map_err(serde::ser::Error::custom)?
                .serialize(serializer),
            None => serializer.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JsonPoint {
    pub x: Num,
    pub y: Num,
}

impl From<Point> for JsonPoint {
    fn from(p: Point) -> Self {
        JsonPoint {
            x: Num(p.x),
            y: Num(p.y),
        }
    }
}

/// A figure parameter: a number, or `"zerobar"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum JsonParam {
    Real(Num),
    ZeroBar(&'static str),
}

impl From<CtParam> for JsonParam {
    fn from(n: CtParam) -> Self {
        match n {
            CtParam::Real(v) => JsonParam::Real(Num(v)),
            CtParam::ZeroBar => JsonParam::ZeroBar(ZERO_BAR),
        }
    }
}

impl From<HagaParam> for JsonParam {
    fn from(n: HagaParam) -> Self {
        match n {
            HagaParam::Real(v) => JsonParam::Real(Num(v)),
            HagaParam::ZeroBar => JsonParam::ZeroBar(ZERO_BAR),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsonCheck {
    pub name: String,
    pub passed: bool,
    pub measured: Num,
    pub expected: Num,
    pub residual: Num,
    pub tolerance: Num,
}

impl From<&Check> for JsonCheck {
    fn from(c: &Check) -> Self {
        JsonCheck {
            name: c.name.clone(),
            passed: c.passed,
            measured: Num(c.measured),
            expected: Num(c.expected),
            residual: Num(c.residual),
            tolerance: Num(c.tolerance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<I: Serialize, D: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    pub input: I,
    pub derived: D,
    pub checks: Vec<JsonCheck>,
    pub passed: bool,
}

impl<I: Serialize, D: Serialize> Report<I, D> {
    fn new(command: &'static str, input: I, derived: D, checks: &[Check]) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            input,
            derived,
            checks: checks.iter().map(JsonCheck::from).collect(),
            passed: all_passed(checks),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Ways to specify a `CT` figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CtRequest {
    /// Radius of `Γ` and a real parameter.
    FromN { r: f64, n: f64 },
    /// `CT(0̄)` placed at distance `ak` from `A`.
    ZeroBar { ak: f64 },
    /// Radii of `Δ₁`, `Δ₂` and the branch selecting `Γ`.
    FromRadii { d1: f64, d2: f64, branch: Branch },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CtInput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<JsonParam>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ak: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d1: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CtDerived {
    pub n: JsonParam,
    pub r: Num,
    pub d1: Num,
    pub d2: Num,
    pub ak: Num,
    pub tau: i8,
    pub k_contact: JsonPoint,
    pub d1_contact: JsonPoint,
    pub d2_contact: JsonPoint,
    pub e1: Option<JsonPoint>,
    pub e2: Option<JsonPoint>,
    pub n_bar: JsonParam,
    pub r_bar: Num,
    pub k_bar_contact: JsonPoint,
    pub max_tangency_residual: Num,
}

pub type CtReport = Report<CtInput, CtDerived>;

/// Build the figure a request describes.
pub fn ct_figure(req: &CtRequest) -> Result<CtFigure> {
    match *req {
        CtRequest::FromN { r, n } => CtFigure::build(r, CtParam::real(n)?),
        CtRequest::ZeroBar { ak } => CtFigure::build(ak, CtParam::ZeroBar),
        CtRequest::FromRadii { d1, d2, branch } => {
            let r = ct::gamma_radius_from_radii(d1, d2, branch)?;
            if r == 0.0 {
                // √r = (√d₁ − √d₂)/2 = 0 only for d₁ = d₂: the figure CT(0̄).
                return CtFigure::build(d1, CtParam::ZeroBar);
            }
            // d₁ = (√(2n) + 1)² r on both branches.
            let s = (d1 / r).sqrt() - 1.0;
            CtFigure::build(r, CtParam::real(0.5 * s * s)?)
        }
    }
}

pub fn ct_report(req: &CtRequest, tol: &Tolerance) -> Result<(CtFigure, CtReport)> {
    let fig = ct_figure(req)?;
    let pair = fig.companion();
    let feet = fig.tangent_feet(tol).ok();
    let scale = fig.d1().max(1.0);

    let mut checks = vec![Check::close(
        "tangency residuals",
        fig.residuals().max_abs(),
        0.0,
        tol.eps_abs * scale,
    )];
    match (fig.n, fig.measured_param()) {
        (CtParam::Real(n), CtParam::Real(m)) => {
            checks.push(Check::close("parameter from geometry", m, n, tol.bound(n)))
        }
        (a, b) => checks.push(Check::holds("parameter from geometry", a == b)),
    }
    let root = ct::ak_length(fig.d1(), fig.d2())?;
    checks.push(Check::close(
        "|AK| = sqrt(d1 d2)",
        fig.ak(),
        root,
        tol.bound(root),
    ));
    let (lhs, rhs) = pair.reciprocal_sides();
    checks.push(Check::close("2n = 1/(2 n_bar)", lhs, rhs, tol.bound(lhs)));
    checks.push(Check::close(
        "2(r + r_bar) = d1 + d2",
        2.0 * (fig.r() + pair.gamma_bar().radius),
        fig.d1() + fig.d2(),
        tol.bound(fig.d1() + fig.d2()),
    ));
    checks.push(Check::close(
        "|AK| = |AK_bar|",
        pair.companion.ak(),
        fig.ak(),
        tol.bound(fig.ak()),
    ));
    if let CtRequest::FromRadii { d1, d2, .. } = *req {
        checks.push(Check::close("d1 reproduced", fig.d1(), d1, tol.bound(d1)));
        checks.push(Check::close("d2 reproduced", fig.d2(), d2, tol.bound(d1)));
    }

    let input = match *req {
        CtRequest::FromN { r, n } => CtInput {
            r: Some(Num(r)),
            n: Some(JsonParam::Real(Num(n))),
            ak: None,
            d1: None,
            d2: None,
            branch: None,
        },
        CtRequest::ZeroBar { ak } => CtInput {
            r: None,
            n: Some(JsonParam::ZeroBar(ZERO_BAR)),
            ak: Some(Num(ak)),
            d1: None,
            d2: None,
            branch: None,
        },
        CtRequest::FromRadii { d1, d2, branch } => CtInput {
            r: None,
            n: None,
            ak: None,
            d1: Some(Num(d1)),
            d2: Some(Num(d2)),
            branch: Some(branch),
        },
    };
    let derived = CtDerived {
        n: fig.n.into(),
        r: Num(fig.r()),
        d1: Num(fig.d1()),
        d2: Num(fig.d2()),
        ak: Num(fig.ak()),
        tau: fig.tau,
        k_contact: fig.gamma_foot.into(),
        d1_contact: fig.delta1_foot.into(),
        d2_contact: fig.delta2_foot.into(),
        e1: feet.map(|f| f.e1.into()),
        e2: feet.and_then(|f| f.e2).map(Into::into),
        n_bar: pair.n_bar().into(),
        r_bar: Num(pair.gamma_bar().radius),
        k_bar_contact: pair.companion.gamma_foot.into(),
        max_tangency_residual: Num(fig.residuals().max_abs()),
    };
    Ok((fig, Report::new("ct", input, derived, &checks)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HagaRequest {
    FromE { d: f64, e: f64 },
    FromN { d: f64, n: HagaParam },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HagaInput {
    pub d: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<JsonParam>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HagaDerived {
    pub e: Num,
    pub n: JsonParam,
    pub case: CaseLabel,
    pub crease_interior: bool,
    pub r: Num,
    #[serde(rename = "E")]
    pub e_point: JsonPoint,
    #[serde(rename = "F")]
    pub f_point: Option<JsonPoint>,
    #[serde(rename = "G")]
    pub g_point: JsonPoint,
    #[serde(rename = "K")]
    pub k_point: JsonPoint,
    #[serde(rename = "T")]
    pub t_point: JsonPoint,
    pub gamma_center: JsonPoint,
}

pub type HagaReport = Report<HagaInput, HagaDerived>;

pub fn haga_report(req: &HagaRequest, tol: &Tolerance) -> Result<(HagaFigure, HagaReport)> {
    let (fig, input) = match *req {
        HagaRequest::FromE { d, e } => (
            HagaFigure::from_e(d, e, tol)?,
            HagaInput {
                d: Num(d),
                e: Some(Num(e)),
                n: None,
            },
        ),
        HagaRequest::FromN { d, n } => (
            HagaFigure::from_n(d, n, tol)?,
            HagaInput {
                d: Num(d),
                e: None,
                n: Some(n.into()),
            },
        ),
    };
    let d = fig.side;
    let mut checks = vec![
        Check::close("|GE| = d", fig.g.distance(fig.e), d, tol.bound(d)),
        Check::close(
            "reflection of C in m is E",
            crate::geom::reflect_point(fig.c, &fig.crease).distance(fig.e),
            0.0,
            tol.bound(d),
        ),
    ];
    if !fig.gamma.is_point() {
        checks.push(Check::close(
            "E is the midpoint of DK",
            fig.d.midpoint(fig.gamma_foot).distance(fig.e),
            0.0,
            tol.bound(d),
        ));
    }
    let back = haga::e_from_n(d, fig.n)?;
    checks.push(Check::close(
        "e recovered from n",
        back,
        fig.e_coord,
        tol.bound(fig.e_coord.abs().max(d)),
    ));
    checks.push(Check::holds(
        "case agrees with position of E",
        fig.case == haga::classify_position(d, fig.e_coord, tol),
    ));
    checks.push(Check::holds(
        "crease rule agrees with geometry",
        fig.crease_interior == haga::crease_meets_open_square(&fig.crease, d, tol),
    ));
    if let HagaParam::Real(n) = fig.n {
        checks.push(Check::holds("n != -1/2", n != -0.5));
    }
    let derived = HagaDerived {
        e: Num(fig.e_coord),
        n: fig.n.into(),
        case: fig.case,
        crease_interior: fig.crease_interior,
        r: Num(fig.r()),
        e_point: fig.e.into(),
        f_point: fig.f.map(Into::into),
        g_point: fig.g.into(),
        k_point: fig.gamma_foot.into(),
        t_point: fig.contact.into(),
        gamma_center: fig.gamma.center.into(),
    };
    Ok((fig, Report::new("haga", input, derived, &checks)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Problem {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "5")]
    Five,
}

impl Problem {
    pub fn from_id(id: u32) -> Result<Problem> {
        match id {
            1 => Ok(Problem::One),
            2 => Ok(Problem::Two),
            3 => Ok(Problem::Three),
            5 => Ok(Problem::Five),
            other => Err(Error::domain(format!(
                "unknown problem id {other} (expected 1, 2, 3 or 5)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemInput {
    pub id: Problem,
    pub d: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_n: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemDerived {
    pub r: Num,
    /// `d / r`.
    pub ratio: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_ratio: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
}

pub type ProblemReport = Report<ProblemInput, ProblemDerived>;

pub fn problems_report(
    problem: Problem,
    d: f64,
    chain_n: Option<u32>,
    tol: &Tolerance,
) -> Result<ProblemReport> {
    let input = ProblemInput {
        id: problem,
        d: Num(d),
        chain_n,
    };
    let (derived, checks) = match problem {
        Problem::One | Problem::Two => {
            let r = ct::solve_problem_1_2(d)?;
            let fig = CtFigure::build(r, CtParam::Real(2.0))?;
            let checks = vec![Check::close(
                "CT(2) with this r has d1 = d",
                fig.d1(),
                d,
                tol.bound(d),
            )];
            (
                ProblemDerived {
                    r: Num(r),
                    ratio: Num(d / r),
                    claimed_ratio: None,
                    consistent: None,
                },
                checks,
            )
        }
        Problem::Three => {
            let rep = ct::refute_problem_3(d)?;
            let residual =
                d - (2.0 * (rep.r * d).sqrt() + std::f64::consts::SQRT_2 * rep.r + rep.r);
            let checks = vec![
                Check::close("tangency equation", residual, 0.0, tol.bound(d)),
                Check::holds("claimed answer contradicts the geometry", !rep.consistent),
            ];
            (
                ProblemDerived {
                    r: Num(rep.r),
                    ratio: Num(rep.ratio),
                    claimed_ratio: Some(Num(rep.claimed)),
                    consistent: Some(rep.consistent),
                },
                checks,
            )
        }
        Problem::Five => {
            let n = chain_n.ok_or_else(|| Error::domain("problem 5 needs the chain length"))?;
            let r = ct::solve_problem_5(d, n)?;
            let chain = ct::toyoyoshi_chain(n, r)?;
            let last = chain.circles.last().map(|c| c.center.x).unwrap_or(f64::NAN);
            let checks = vec![
                Check::close("chain d1 = d", chain.d1, d, tol.bound(d)),
                Check::close("last chain circle touches l", last, r, tol.bound(r)),
            ];
            (
                ProblemDerived {
                    r: Num(r),
                    ratio: Num(d / r),
                    claimed_ratio: None,
                    consistent: None,
                },
                checks,
            )
        }
    };
    Ok(Report::new("problems", input, derived, &checks))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyInput {
    pub samples: usize,
    pub seed: u64,
    pub eps_abs: Num,
    pub eps_rel: Num,
    pub perturb: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsonInvariant {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    pub failures: usize,
    pub max_residual: Num,
    pub max_ratio: Num,
}

impl From<&InvariantResult> for JsonInvariant {
    fn from(r: &InvariantResult) -> Self {
        JsonInvariant {
            name: r.name.clone(),
            passed: r.passed,
            samples: r.samples,
            failures: r.failures,
            max_residual: Num(r.max_residual),
            max_ratio: Num(r.max_ratio),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyDerived {
    pub invariants: Vec<JsonInvariant>,
}

pub type VerifyReportJson = Report<VerifyInput, VerifyDerived>;

pub fn verify_report(cfg: &VerifyConfig) -> Result<VerifyReportJson> {
    let rep = verify::run(cfg)?;
    let input = VerifyInput {
        samples: cfg.samples,
        seed: cfg.seed,
        eps_abs: Num(cfg.tol.eps_abs),
        eps_rel: Num(cfg.tol.eps_rel),
        perturb: Num(cfg.perturb),
    };
    let derived = VerifyDerived {
        invariants: rep.invariants.iter().map(JsonInvariant::from).collect(),
    };
    let mut out = Report::new("verify", input, derived, &[]);
    out.passed = rep.passed;
    Ok(out)
}
