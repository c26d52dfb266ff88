//! The generalized modified Bessel function K_{z,w}(x).
//!
//! Every entry point takes the argument `x` of K_{z,w}(x). Representations
//! naturally written for K_{z,w}(2x) work with `x/2` internally.

mod asymptotic;
mod integrals;
mod series;

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use crate::config::{EvalConfig, Evaluation, Method};
use crate::error::{Error, Result};

pub use asymptotic::{asymptotic_large_x, asymptotic_small_x, asymptotic_terms, AsymptoticTerms};
pub use integrals::{eval_basset_z0, eval_double_integral, eval_integral, eval_laplace_series, eval_mellin_barnes};
pub use series::{eval_bilateral_series, eval_double_sum};
pub(crate) use series::{wedge_coefficients, KLadder};

/// A point (z, w, x) with x in the sector |arg x| < π/4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KzwPoint {
    z: Complex64,
    w: Complex64,
    x: Complex64,
}

impl KzwPoint {
    pub fn new(z: Complex64, w: Complex64, x: Complex64) -> Result<Self> {
        if !(z.is_finite() && w.is_finite() && x.is_finite()) {
            return Err(Error::domain("KzwPoint", "non-finite parameter"));
        }
        if x.norm() == 0.0 || x.arg().abs() >= FRAC_PI_4 {
            return Err(Error::domain(
                "KzwPoint",
                format!("x = {x} is outside the sector |arg x| < π/4"),
            ));
        }
        Ok(KzwPoint { z, w, x })
    }

    /// Real-parameter convenience constructor.
    pub fn real(z: f64, w: f64, x: f64) -> Result<Self> {
        Self::new(Complex64::new(z, 0.0), Complex64::new(w, 0.0), Complex64::new(x, 0.0))
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    pub fn x(&self) -> Complex64 {
        self.x
    }

    pub fn with_z(&self, z: Complex64) -> Self {
        KzwPoint { z, ..*self }
    }

    pub fn with_w(&self, w: Complex64) -> Self {
        KzwPoint { w, ..*self }
    }
}

/// Evaluate with a regime-appropriate method:
///
/// * |x| ≥ 30: the large-x expansion if its error estimate meets the
///   tolerance, the integral otherwise;
/// * |x| ≤ 1e-3 with Re z > 0 or z = 0: the small-x leading term if its
///   error estimate meets the tolerance;
/// * otherwise the double sum, falling back to the integral.
pub fn eval_auto(p: &KzwPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    cfg.validate()?;
    let size = p.x.norm();
    if size >= 30.0 {
        let asy = asymptotic_large_x(p, 1, cfg)?;
        if asy.converged {
            return Ok(asy);
        }
        return eval_integral(p, cfg);
    }
    if size <= 1e-3 && (p.z.re > 0.0 || p.z.norm() < 1e-10) {
        let asy = asymptotic_small_x(p, cfg)?;
        if asy.converged {
            return Ok(asy);
        }
    }
    match eval_double_sum(p, cfg) {
        Ok(e) if e.converged => Ok(e),
        first => match eval_integral(p, cfg) {
            Ok(e) if e.converged => Ok(e),
            second => match (first, second) {
                (Ok(a), Ok(b)) => Ok(if a.err_est <= b.err_est { a } else { b }),
                (Ok(a), Err(_)) => Ok(a),
                (Err(_), r) => r,
            },
        },
    }
}

/// Outcome of one representation inside [`compare_methods`].
#[derive(Debug, Clone, PartialEq)]
pub struct MethodOutcome {
    pub method: Method,
    pub result: Result<Evaluation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodComparison {
    pub outcomes: Vec<MethodOutcome>,
    /// Largest |a − b| / max(|a|, |b|) over pairs of successful methods.
    pub max_rel_discrepancy: f64,
}

/// Exact representations whose hypotheses the point satisfies.
pub fn applicable_methods(p: &KzwPoint) -> Vec<Method> {
    let mut out = vec![Method::Integral, Method::MellinBarnes];
    if p.z.re.abs() < 0.5 {
        out.push(Method::BilateralSeries);
    }
    out.push(Method::DoubleSum);
    if p.z == Complex64::new(0.0, 0.0) {
        out.push(Method::BassetZ0);
    }
    if p.z.re > -0.5 {
        out.push(Method::LaplaceSeries);
    }
    if p.z.re > -1.0 {
        out.push(Method::DoubleIntegral);
    }
    out
}

/// Evaluate with one named exact representation.
pub fn eval_with(method: Method, p: &KzwPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    match method {
        Method::Integral => eval_integral(p, cfg),
        Method::MellinBarnes => eval_mellin_barnes(p, cfg),
        Method::BilateralSeries => eval_bilateral_series(p, cfg),
        Method::DoubleSum => eval_double_sum(p, cfg),
        Method::BassetZ0 => {
            if p.z != Complex64::new(0.0, 0.0) {
                return Err(Error::domain("eval_basset_z0", "only defined for z = 0"));
            }
            eval_basset_z0(p.w, p.x, cfg)
        }
        Method::LaplaceSeries => eval_laplace_series(p, cfg),
        Method::DoubleIntegral => eval_double_integral(p, cfg),
        Method::AsymptoticLargeX => asymptotic_large_x(p, 1, cfg),
        Method::AsymptoticSmallX => asymptotic_small_x(p, cfg),
    }
}

/// Run every applicable exact representation and report how far apart
/// they are.
pub fn compare_methods(p: &KzwPoint, cfg: &EvalConfig) -> MethodComparison {
    let outcomes: Vec<MethodOutcome> = applicable_methods(p)
        .into_iter()
        .map(|method| MethodOutcome {
            method,
            result: eval_with(method, p, cfg),
        })
        .collect();
    let values: Vec<Complex64> = outcomes
        .iter()
        .filter_map(|o| o.result.as_ref().ok().map(|e| e.value))
        .collect();
    let mut worst = 0.0f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let scale = a.norm().max(b.norm());
            if scale > 0.0 {
                worst = worst.max((a - b).norm() / scale);
            }
        }
    }
    MethodComparison {
        outcomes,
        max_rel_discrepancy: worst,
    }
}
