//! Numerical checks of the exact identities satisfied by `K_{z,w}`:
//! reciprocity in the Koshliakov kernel, the generalized
//! Ramanujan–Guinand transformation and its z → 0 form, the
//! differential-difference equation and the interchange lemma.

mod dde;
mod lemma;
mod reciprocity;
mod rg;
mod series;

use std::fmt;

use num_complex::Complex64;

use crate::config::{EvalConfig, Evaluation};
use crate::error::Result;
use crate::kzw::{eval_auto, eval_double_sum, KzwPoint};

pub use dde::{check_dde, dde_residual_fd, w_derivatives, w_derivatives_fd, WDerivatives};
pub use lemma::{check_lemma_inteq, inteq_left, inteq_right, inteq_series};
pub use reciprocity::{check_reciprocity, kernel_transform};
pub use rg::{
    check_koshliakov_w, check_rg_general, check_rg_modular, koshliakov_boundary, koshliakov_boundary_first_order,
    modular_boundary, modular_side, rg_general_rhs,
};
pub use series::{divisor_kzw_series, SeriesSide};

/// Parameters an identity was checked at; unused ones are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IdentityParams {
    pub z: Option<Complex64>,
    pub w: Option<Complex64>,
    pub x: Option<Complex64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
}

/// Outcome of one identity check.
///
/// `rel_residual` is |lhs − rhs| / max(|lhs|, |rhs|, abs_tol). Checks that
/// compare more than two quantities keep the extra ones in `aux` and report
/// the worst pairwise relative discrepancy instead.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub params: IdentityParams,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub work: usize,
    pub aux: Vec<(&'static str, Complex64)>,
}

impl IdentityReport {
    pub(crate) fn new(
        name: &'static str,
        params: IdentityParams,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
        work: usize,
        cfg: &EvalConfig,
    ) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = abs_residual / lhs.norm().max(rhs.norm()).max(cfg.abs_tol);
        IdentityReport {
            name,
            params,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            pass: rel_residual <= tolerance,
            work,
            aux: Vec::new(),
        }
    }

    pub(crate) fn with_aux(mut self, key: &'static str, value: Complex64) -> Self {
        self.aux.push((key, value));
        self
    }

    /// Replace the residual by a worse one found among auxiliary values.
    pub(crate) fn widen(mut self, abs: f64, rel: f64) -> Self {
        if rel > self.rel_residual {
            self.abs_residual = abs;
            self.rel_residual = rel;
            self.pass = rel <= self.tolerance;
        }
        self
    }

    pub fn aux_value(&self, key: &str) -> Option<Complex64> {
        self.aux.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<14} {} rel {:.3e} (tol {:.0e}) lhs {:.15e} rhs {:.15e}",
            self.name,
            if self.pass { "pass" } else { "FAIL" },
            self.rel_residual,
            self.tolerance,
            self.lhs,
            self.rhs
        )
    }
}

/// Relative difference used by the multi-way checks.
pub(crate) fn rel_diff(a: Complex64, b: Complex64, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}

/// K_{z,w}(x) for the identity checks: the double sum when it converges,
/// otherwise whatever the dispatcher picks.
pub(crate) fn kzw_value(z: Complex64, w: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<Evaluation> {
    let p = KzwPoint::new(z, w, x)?;
    match eval_double_sum(&p, cfg) {
        Ok(e) if e.converged => Ok(e),
        _ => eval_auto(&p, cfg),
    }
}

/// Value of an analytic `f` at `z`, or its limit when `z` sits within 1e−4
/// of a removable singularity: symmetric samples at z ± h and z ± 2h,
/// h = 1e−4, combined by one Richardson step.
pub(crate) fn regularized<F>(f: F, z: Complex64, singular: &[f64]) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    const H: f64 = 1e-4;
    let near = singular.iter().any(|&s| (z - s).norm() < H);
    if !near {
        match f(z) {
            Ok(v) if v.is_finite() => return Ok(v),
            Ok(_) | Err(crate::Error::Pole { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let avg = |h: f64| -> Result<Complex64> { Ok((f(z + h)? + f(z - h)?) * 0.5) };
    let (a1, a2) = (avg(H)?, avg(2.0 * H)?);
    Ok((a1 * 4.0 - a2) / 3.0)
}

/// 0, ±1 and the even integers up to just beyond |Re z|: the points where
/// individual Γζ factors are singular while the combination is not.
pub(crate) fn gamma_zeta_singular_set(z: Complex64, include_unit: bool) -> Vec<f64> {
    let mut out = vec![0.0];
    if include_unit {
        out.extend([1.0, -1.0]);
    }
    let reach = (z.re.abs() / 2.0).ceil() as i64 + 1;
    for k in 1..=reach {
        let e = 2.0 * k as f64;
        out.extend([e, -e]);
    }
    out
}
