use serde::Serialize;

/// One named comparison of a measured value against an expected one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `|measured − expected| <= tolerance`.
    pub fn close(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Check {
        let residual = (measured - expected).abs();
        Check {
            name: name.into(),
            measured,
            expected,
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }

    /// A boolean assertion, recorded as `1.0` / `0.0`.
    pub fn holds(name: impl Into<String>, ok: bool) -> Check {
        let measured = if ok { 1.0 } else { 0.0 };
        Check {
            name: name.into(),
            measured,
            expected: 1.0,
            residual: 1.0 - measured,
            tolerance: 0.0,
            passed: ok,
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
