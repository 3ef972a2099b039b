//! `hagakit`: command-line front end for the geometry kernel.
//!
//! Exit codes: 0 success, 1 failed check, 2 usage error, 3 domain error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};
use hagakit::ct::Branch;
use hagakit::haga::HagaParam;
use hagakit::report::{self, CtRequest, HagaRequest, Problem};
use hagakit::svg::{self, RenderStyle};
use hagakit::verify::VerifyConfig;
use hagakit::Tolerance;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hagakit",
    version,
    about = "Tangent-circle figures and Haga folds"
)]
struct Cli {
    /// Absolute and relative tolerance for every check.
    #[arg(long, global = true, env = "HAGAKIT_EPS", value_parser = parse_eps)]
    eps: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a CT(n) figure from (r, n), (ak, zerobar) or (d1, d2, branch).
    Ct(CtArgs),
    /// Fold a square so that C lands on E and report the case.
    Haga(HagaArgs),
    /// Solve one of the classical tangent-circle problems.
    Problems(ProblemArgs),
    /// Run the seeded invariant sweep.
    Verify(VerifyArgs),
}

#[derive(Debug, clap::Args)]
#[command(allow_negative_numbers = true)]
struct CtArgs {
    /// Radius of Γ.
    #[arg(long)]
    r: Option<f64>,
    /// Parameter n, or `zerobar`.
    #[arg(long)]
    n: Option<Param>,
    /// Distance |AK| for `--n zerobar`.
    #[arg(long)]
    ak: Option<f64>,
    #[arg(long)]
    d1: Option<f64>,
    #[arg(long)]
    d2: Option<f64>,
    /// Which of the two Γ radii to take for (d1, d2).
    #[arg(long, value_enum)]
    branch: Option<BranchArg>,
    /// Write an SVG drawing to this path.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Also draw the companion circle.
    #[arg(long, requires = "svg", conflicts_with = "chain")]
    companion: bool,
    /// Draw the chain of n circles between Γ and l (integer n only).
    #[arg(long, requires = "svg")]
    chain: bool,
}

#[derive(Debug, clap::Args)]
#[command(allow_negative_numbers = true)]
struct HagaArgs {
    /// Side of the square.
    #[arg(long)]
    d: f64,
    /// Signed coordinate of E on line AD.
    #[arg(long, conflicts_with = "n", required_unless_present = "n")]
    e: Option<f64>,
    /// Parameter n, or `zerobar`.
    #[arg(long)]
    n: Option<Param>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
#[command(allow_negative_numbers = true)]
struct ProblemArgs {
    /// Problem number: 1, 2, 3 or 5.
    #[arg(long, value_parser = parse_problem)]
    id: Problem,
    /// Given length (side or large radius).
    #[arg(long)]
    d: f64,
    /// Number of chain circles (problem 5).
    #[arg(long)]
    chain_n: Option<u32>,
}

#[derive(Debug, clap::Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Shift every measured value by this relative amount (self-test).
    #[arg(long, default_value_t = 0.0)]
    perturb: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Param {
    Real(f64),
    ZeroBar,
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zerobar" | "0\u{304}" => Ok(Param::ZeroBar),
            _ => s
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Param::Real)
                .ok_or_else(|| format!("expected a finite number or `zerobar`, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum BranchArg {
    Low,
    High,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Low => Branch::Low,
            BranchArg::High => Branch::High,
        }
    }
}

fn parse_eps(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("tolerance must be a positive number, got `{s}`")),
    }
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse::<u32>()
        .ok()
        .and_then(|id| Problem::from_id(id).ok())
        .ok_or_else(|| format!("unknown problem `{s}` (expected 1, 2, 3 or 5)"))
}

enum Failure {
    Usage(clap::Error),
    Domain(String),
}

impl From<hagakit::Error> for Failure {
    fn from(e: hagakit::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn usage(kind: ErrorKind, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(Cli::command().error(kind, msg))
}

fn ct_request(a: &CtArgs) -> Result<CtRequest, Failure> {
    let conflict = |msg: &str| usage(ErrorKind::ArgumentConflict, msg);
    let missing = |msg: &str| usage(ErrorKind::MissingRequiredArgument, msg);
    let radii = a.d1.is_some() || a.d2.is_some() || a.branch.is_some();
    match (a.n, radii) {
        (Some(_), true) => Err(conflict("give either --n or --d1/--d2/--branch, not both")),
        (None, false) => Err(missing(
            "give --r and --n, --n zerobar and --ak, or --d1, --d2 and --branch",
        )),
        (None, true) => {
            if a.r.is_some() || a.ak.is_some() {
                return Err(conflict(
                    "--r and --ak do not combine with --d1/--d2/--branch",
                ));
            }
            match (a.d1, a.d2, a.branch) {
                (Some(d1), Some(d2), Some(b)) => Ok(CtRequest::FromRadii {
                    d1,
                    d2,
                    branch: b.into(),
                }),
                _ => Err(missing("--d1, --d2 and --branch go together")),
            }
        }
        (Some(Param::ZeroBar), false) => match (a.ak, a.r) {
            (Some(ak), None) => Ok(CtRequest::ZeroBar { ak }),
            (_, Some(_)) => Err(conflict(
                "CT(zerobar) has no circle radius; give --ak instead of --r",
            )),
            (None, None) => Err(missing("--n zerobar needs --ak")),
        },
        (Some(Param::Real(n)), false) => match (a.r, a.ak) {
            (Some(r), None) => Ok(CtRequest::FromN { r, n }),
            (_, Some(_)) => Err(conflict("--ak only applies to --n zerobar")),
            (None, None) => Err(missing("--n needs --r")),
        },
    }
}

fn write_svg(path: &Path, doc: &svg::SvgDocument) -> Result<(), Failure> {
    std::fs::write(path, doc.to_svg_string()).map_err(|e| {
        usage(
            ErrorKind::Io,
            format!("cannot write {}: {e}", path.display()),
        )
    })
}

/// Prints the report and returns whether its checks passed.
fn run(cli: Cli) -> Result<bool, Failure> {
    let tol = match cli.eps {
        Some(eps) => Tolerance::uniform(eps)?,
        None => Tolerance::default(),
    };
    let style = RenderStyle::default();
    let (json, passed) = match cli.command {
        Command::Ct(a) => {
            let req = ct_request(&a)?;
            let (fig, rep) = report::ct_report(&req, &tol)?;
            if let Some(path) = &a.svg {
                let doc = if a.chain {
                    svg::render_ct_chain(&fig, &style)?
                } else {
                    svg::render_ct(&fig, &style, a.companion)
                };
                write_svg(path, &doc)?;
            }
            (rep.to_json(), rep.passed)
        }
        Command::Haga(a) => {
            let req = match (a.e, a.n) {
                (Some(e), None) => HagaRequest::FromE { d: a.d, e },
                (None, Some(Param::Real(n))) => HagaRequest::FromN {
                    d: a.d,
                    n: HagaParam::Real(n),
                },
                (None, Some(Param::ZeroBar)) => HagaRequest::FromN {
                    d: a.d,
                    n: HagaParam::ZeroBar,
                },
                _ => {
                    return Err(usage(
                        ErrorKind::ArgumentConflict,
                        "give exactly one of --e and --n",
                    ))
                }
            };
            let (fig, rep) = report::haga_report(&req, &tol)?;
            if let Some(path) = &a.svg {
                write_svg(path, &svg::render_haga(&fig, &style))?;
            }
            (rep.to_json(), rep.passed)
        }
        Command::Problems(a) => {
            if a.id == Problem::Five && a.chain_n.is_none() {
                return Err(usage(
                    ErrorKind::MissingRequiredArgument,
                    "problem 5 needs --chain-n",
                ));
            }
            let rep = report::problems_report(a.id, a.d, a.chain_n, &tol)?;
            (rep.to_json(), rep.passed)
        }
        Command::Verify(a) => {
            let cfg = VerifyConfig {
                samples: a.samples as usize,
                seed: a.seed,
                tol,
                perturb: a.perturb,
            };
            let rep = report::verify_report(&cfg)?;
            (rep.to_json(), rep.passed)
        }
    };
    // A closed pipe downstream is not our failure.
    let _ = writeln!(std::io::stdout().lock(), "{json}");
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(Failure::Usage(e)) => {
            let _ = e.print();
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("hagakit: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
