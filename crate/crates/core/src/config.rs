use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and work budgets shared by every evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_series_terms: usize,
    pub max_quad_levels: usize,
    /// Largest imaginary height used on a vertical contour.
    pub contour_height_cap: f64,
    /// Largest number of half-periods summed for oscillatory tails.
    pub oscillatory_period_cap: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-15,
            max_series_terms: 200,
            max_quad_levels: 12,
            contour_height_cap: 200.0,
            oscillatory_period_cap: 400,
        }
    }
}

impl EvalConfig {
    /// Default budgets with the given relative tolerance.
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        EvalConfig {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::domain("EvalConfig", what.to_string()));
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return bad("rel_tol must be positive");
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return bad("abs_tol must be non-negative");
        }
        if self.max_series_terms == 0 || self.max_quad_levels == 0 {
            return bad("term and level budgets must be positive");
        }
        if !(self.contour_height_cap > 0.0) || self.oscillatory_period_cap == 0 {
            return bad("contour and period caps must be positive");
        }
        Ok(())
    }

    /// Error allowance for a result of the given size.
    pub fn allowance(&self, value: Complex64) -> f64 {
        (self.rel_tol * value.norm()).max(self.abs_tol)
    }
}

/// Which representation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Integral,
    MellinBarnes,
    BilateralSeries,
    DoubleSum,
    BassetZ0,
    LaplaceSeries,
    DoubleIntegral,
    AsymptoticLargeX,
    AsymptoticSmallX,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Integral,
        Method::MellinBarnes,
        Method::BilateralSeries,
        Method::DoubleSum,
        Method::BassetZ0,
        Method::LaplaceSeries,
        Method::DoubleIntegral,
        Method::AsymptoticLargeX,
        Method::AsymptoticSmallX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Integral => "integral",
            Method::MellinBarnes => "mellin_barnes",
            Method::BilateralSeries => "bilateral_series",
            Method::DoubleSum => "double_sum",
            Method::BassetZ0 => "basset_z0",
            Method::LaplaceSeries => "laplace_series",
            Method::DoubleIntegral => "double_integral",
            Method::AsymptoticLargeX => "asymptotic_large_x",
            Method::AsymptoticSmallX => "asymptotic_small_x",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const ROUNDING_FLOOR: f64 = 8.0 * f64::EPSILON;

/// A value with its error estimate and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub err_est: f64,
    pub method: Method,
    /// Terms summed or integrand samples taken.
    pub work: usize,
    /// `err_est` is within the tolerance of the config used.
    pub converged: bool,
}

impl Evaluation {
    pub(crate) fn assess(value: Complex64, err_est: f64, method: Method, work: usize, cfg: &EvalConfig) -> Self {
        // nothing is known better than a few roundings of its own size
        let err_est = err_est.max(ROUNDING_FLOOR * value.norm());
        let converged = err_est.is_finite() && value.is_finite() && err_est <= cfg.allowance(value);
        Evaluation {
            value,
            err_est,
            method,
            work,
            converged,
        }
    }
}
