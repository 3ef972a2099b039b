//! Tangent-circle figures and generalized Haga folds.
//!
//! The crate is organized bottom-up:
//!
//! - [`geom`]: points, normalized lines, circles, reflections and tangency
//!   predicates with explicit tolerances.
//! - [`ct`]: the figure `CT(n)` made of two perpendicular lines `k`, `l`, a
//!   circle `Γ` touching `k`, and two circles `Δ₁`, `Δ₂` touching `k`, `l` and
//!   `Γ`; its companion figure, the congruent chain, and the classic Wasan
//!   problem solvers built on it.
//! - [`haga`]: the generalized Haga fold of a square, its parametrization by
//!   the tangent circle `Γ(n)`, and the seven-way case classification.
//! - [`svg`]: deterministic SVG rendering of both figure families.
//! - [`report`] and [`verify`]: JSON reports and the seeded invariant sweep
//!   used by the command line front end.

mod check;
pub mod ct;
mod error;
pub mod geom;
pub mod haga;
pub mod report;
pub mod svg;
pub mod verify;

pub use check::{all_passed, Check};
pub use error::{Error, Result};
pub use geom::{Circle, Line, Point, Tolerance};
