//! Riemann ξ and Ξ, and the Ξ-integral evaluations built on the modular
//! form of the generalized Ramanujan–Guinand formula.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::config::{EvalConfig, Evaluation, Method};
use crate::error::{Error, Result};
use crate::foundations::{gamma, hyp1f1, zeta, EULER_GAMMA, STIELTJES_GAMMA1};
use crate::identities::{divisor_kzw_series, koshliakov_boundary, modular_side, IdentityParams, IdentityReport};
use crate::quad::{tanh_sinh, QuadTol};

const I: Complex64 = Complex64::new(0.0, 1.0);
/// Second Stieltjes constant, for the Laurent expansion of ζ at 1.
const STIELTJES_GAMMA2: f64 = -0.009_690_363_192_872_318_484;

/// ξ(s) = ½ s(s−1) π^{−s/2} Γ(s/2) ζ(s), entire. Left of the critical line
/// the reflection ξ(s) = ξ(1−s) is used; near s = 1 the pole of ζ is
/// cancelled through its Laurent series.
pub fn xi_function(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        return xi_function(1.0 - s);
    }
    let e = s - 1.0;
    // (s − 1)ζ(s) = 1 + γe − γ₁e² + (γ₂/2)e³ + …
    let pole_free = if e.norm() < 1e-4 {
        1.0 + e * EULER_GAMMA - e * e * STIELTJES_GAMMA1 + e * e * e * (0.5 * STIELTJES_GAMMA2)
    } else {
        // Re s ≥ 1/2 keeps Γ(s/2) and ζ(s) away from their poles.
        e * zeta(s).expect("zeta is finite off s = 1")
    };
    let g = gamma(s * 0.5).expect("gamma is finite for Re s > 0");
    s * pole_free * g * (-s * 0.5 * PI.ln()).exp() * 0.5
}

/// Ξ(t) = ξ(½ + it).
pub fn big_xi(t: Complex64) -> Complex64 {
    xi_function(0.5 + I * t)
}

fn rho(x: f64, z: Complex64, w: Complex64, s: Complex64) -> Result<Complex64> {
    let q = -w * w * 0.25;
    let half = Complex64::new(0.5, 0.0);
    let f1 = hyp1f1((1.0 - s - z) * 0.5, half, q)?;
    let f2 = hyp1f1((1.0 - s + z) * 0.5, half, q)?;
    Ok((x.ln() * (0.5 - s)).exp() * f1 * f2)
}

/// ∇₂(x, z, w, s) = ρ(x, z, w, s) + ρ(x, z, w, 1−s) with
/// ρ = x^{1/2−s} ₁F₁((1−s−z)/2; ½; −w²/4) ₁F₁((1−s+z)/2; ½; −w²/4).
pub fn nabla2(x: f64, z: Complex64, w: Complex64, s: Complex64) -> Result<Complex64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("nabla2", format!("need x > 0, got {x}")));
    }
    Ok(rho(x, z, w, s)? + rho(x, z, w, 1.0 - s)?)
}

fn strip_and_alpha(function: &'static str, z: Complex64, alpha: f64) -> Result<()> {
    if !(z.re > -1.0 && z.re < 1.0) {
        return Err(Error::domain(function, format!("need -1 < Re z < 1, got z = {z}")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(function, format!("need alpha > 0, got {alpha}")));
    }
    Ok(())
}

/// The integrand of the Ξ-integral at t.
fn xi_integrand(z: Complex64, w: Complex64, alpha: f64, t: f64) -> Result<Complex64> {
    let tc = Complex64::new(t, 0.0);
    let xis = big_xi((tc + I * z) * 0.5) * big_xi((tc - I * z) * 0.5);
    let nab = nabla2(alpha, z * 0.5, w, (1.0 + I * t) * 0.5)?;
    let den = (t * t + (z + 1.0) * (z + 1.0)) * (t * t + (z - 1.0) * (z - 1.0));
    Ok(xis * nab / den)
}

/// Rough size of what lies beyond T: the integrand decays at least like
/// e^{−πt/4}, so its tail is about |f(T)|·4/π.
fn tail_estimate(z: Complex64, w: Complex64, alpha: f64, t: f64) -> Result<f64> {
    Ok(xi_integrand(z, w, alpha, t)?.norm() * 4.0 / PI)
}

/// (16/π) ∫₀^∞ Ξ((t+iz)/2) Ξ((t−iz)/2) ∇₂(α, z/2, w, (1+it)/2)
/// / ((t² + (z+1)²)(t² + (z−1)²)) dt for −1 < Re z < 1.
///
/// The range is cut at T = 40, doubled while the decay certificate fails.
pub fn xi_integral_lhs(z: Complex64, w: Complex64, alpha: f64, cfg: &EvalConfig) -> Result<Evaluation> {
    cfg.validate()?;
    strip_and_alpha("xi_integral_lhs", z, alpha)?;
    let tol = QuadTol::from_config(cfg).with_abs(cfg.abs_tol);
    let mut cut = 40.0;
    while tail_estimate(z, w, alpha, cut)? > cfg.abs_tol {
        cut *= 2.0;
        if cut > 120.0 {
            return Err(Error::NonConvergence {
                what: "xi integral range",
                work: 0,
                err_est: tail_estimate(z, w, alpha, cut)?,
            });
        }
    }
    let q = tanh_sinh(|t| xi_integrand(z, w, alpha, t), 0.0, cut, &tol)?;
    let scale = 16.0 / PI;
    let err = scale * (q.err_est + tail_estimate(z, w, alpha, cut)?);
    Ok(Evaluation::assess(q.value * scale, err, Method::Integral, q.evals, cfg))
}

/// e^{−w²/4} √α {4 Σ σ_{−z}(n) n^{z/2} e^{−w²/4} K_{z/2,iw}(2nπα) − Γζ₁F₁ terms},
/// that is e^{−w²/4} F(z, w, α) with F the modular form.
pub fn xi_integral_rhs(z: Complex64, w: Complex64, alpha: f64, cfg: &EvalConfig) -> Result<Evaluation> {
    cfg.validate()?;
    strip_and_alpha("xi_integral_rhs", z, alpha)?;
    let (f, series) = modular_side(z, w, alpha, cfg)?;
    let gauss = (-w * w * 0.25).exp();
    let value = f * gauss;
    let err = gauss.norm() * 4.0 * alpha.sqrt() * series.tail_bound;
    Ok(Evaluation::assess(value, err, Method::DoubleSum, series.work, cfg))
}

/// Both sides of the Ξ-integral identity, as a report.
pub fn check_xi_theorem(z: Complex64, w: Complex64, alpha: f64, cfg: &EvalConfig) -> Result<IdentityReport> {
    let lhs = xi_integral_lhs(z, w, alpha, cfg)?;
    let rhs = xi_integral_rhs(z, w, alpha, cfg)?;
    let params = IdentityParams {
        z: Some(z),
        w: Some(w),
        alpha: Some(alpha),
        beta: Some(1.0 / alpha),
        ..Default::default()
    };
    Ok(IdentityReport::new(
        "xi-thm",
        params,
        lhs.value,
        rhs.value,
        1e-5,
        lhs.work + rhs.work,
        cfg,
    ))
}

/// The z = 0 case: (16/π)∫ Ξ(t/2)²/(t²+1)² (α^{−it/2}₁F₁²((1−it)/4;½;−w²/4) +
/// α^{it/2}₁F₁²((1+it)/4;½;−w²/4)) dt against
/// √α e^{−w²/4}(4 Σ d(n) e^{−w²/4} K_{0,iw}(2nπα) − B(w, α)), where B is
/// the exact z → 0 boundary limit. The residual obtained with the
/// first-order boundary (γ − log 4πα)(1 − w²/4)/α − w²/(2α) is kept as
/// `first_order_residual`.
pub fn check_xi_corollary_z0(w: Complex64, alpha: f64, cfg: &EvalConfig) -> Result<IdentityReport> {
    let zero = Complex64::new(0.0, 0.0);
    let lhs = xi_integral_lhs(zero, w, alpha, cfg)?;
    let series = divisor_kzw_series(zero, I * w, PI * alpha, cfg)?;
    let u = w * w * 0.25;
    let gauss = (-u).exp();
    let sum = series.value() * gauss * 4.0;
    let rhs = (sum - koshliakov_boundary(w, alpha)) * gauss * alpha.sqrt();
    let c = EULER_GAMMA - (4.0 * PI * alpha).ln();
    let first_order = (sum - c * (1.0 - u) / alpha + u * 2.0 / alpha) * gauss * alpha.sqrt();
    let params = IdentityParams {
        z: Some(zero),
        w: Some(w),
        alpha: Some(alpha),
        beta: Some(1.0 / alpha),
        ..Default::default()
    };
    let printed = crate::identities::rel_diff(lhs.value, first_order, cfg.abs_tol);
    Ok(IdentityReport::new(
        "xi-corollary",
        params,
        lhs.value,
        rhs,
        1e-5,
        lhs.work + series.work,
        cfg,
    )
    .with_aux("first_order_rhs", first_order)
    .with_aux("first_order_residual", Complex64::new(printed, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_at_one_is_half() {
        assert!((xi_function(Complex64::new(1.0, 0.0)) - 0.5).norm() < 1e-15);
        assert!((xi_function(Complex64::new(0.0, 0.0)) - 0.5).norm() < 1e-15);
    }
}
