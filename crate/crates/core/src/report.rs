//! Pass/fail records for numerical identities.

use serde::Serialize;

/// Default relative tolerance of the identity checks.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Absolute tolerance used when the reference value is exactly zero.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;

/// One verified identity: computed `lhs` against reference `rhs`.
///
/// `rel_err` is |lhs − rhs|/|rhs|, or |lhs − rhs| when rhs = 0; in that case
/// `tol` holds the absolute tolerance that was applied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
}

fn relative(lhs: f64, rhs: f64) -> f64 {
    let diff = (lhs - rhs).abs();
    if rhs == 0.0 {
        diff
    } else {
        diff / rhs.abs()
    }
}

impl CheckReport {
    /// lhs = rhs within `tol` relative (`DEFAULT_ABS_TOL` absolute if rhs = 0).
    pub fn equality(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::equality_abs(name, lhs, rhs, tol, DEFAULT_ABS_TOL)
    }

    /// lhs = rhs within `tol` relative, or `abs_tol` absolute when rhs = 0.
    pub fn equality_abs(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64, abs_tol: f64) -> Self {
        let rel_err = relative(lhs, rhs);
        let tol = if rhs == 0.0 { abs_tol } else { tol };
        CheckReport {
            name: name.into(),
            lhs,
            rhs,
            rel_err,
            tol,
            pass: rel_err <= tol,
        }
    }

    /// lhs ≥ rhs, up to `tol` relative slack. `rel_err` is the relative
    /// violation max(0, rhs − lhs)/|rhs|.
    pub fn at_least(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let gap = (rhs - lhs).max(0.0);
        let rel_err = if rhs == 0.0 { gap } else { gap / rhs.abs() };
        let rel_err = if lhs.is_nan() || rhs.is_nan() { f64::NAN } else { rel_err };
        CheckReport {
            name: name.into(),
            lhs,
            rhs,
            rel_err,
            tol,
            pass: rel_err <= tol,
        }
    }

    /// Discrete minimum `lhs` bounds the exact value `rhs` from above and is
    /// within `tol` of it. A violation of the bound beyond 1e−12 relative fails.
    pub fn from_above(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let mut report = Self::equality(name, lhs, rhs, tol);
        let slack = 1e-12 * rhs.abs().max(DEFAULT_ABS_TOL);
        report.pass = report.pass && lhs >= rhs - slack;
        report
    }

    /// Single JSON line with 17 significant digits.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Short human-readable line with 6 significant digits.
    pub fn summary_line(&self) -> String {
        format!(
            "{} {}: lhs={:.6e} rhs={:.6e} err={:.3e} tol={:.1e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.lhs,
            self.rhs,
            self.rel_err,
            self.tol
        )
    }
}
