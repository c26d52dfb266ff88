use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use super::{kzw_value, IdentityParams, IdentityReport};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::foundations::koshliakov_kernel;
use crate::quad::{oscillatory_tail, tanh_sinh, QuadResult, QuadTol};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this u the integrand's contribution, at most of size u^{2−4|Re z|},
/// is dropped.
const U_FLOOR: f64 = 1e-60;

/// 2∫₀^∞ f(t) (cos πz M_{2z}(4√(xt)) − sin πz J_{2z}(4√(xt))) dt.
///
/// With t = u²/x the kernel oscillates with phase 4u, so after a
/// tanh-sinh head over two half-periods the rest is summed panel by panel
/// in half-periods of π/4.
pub fn kernel_transform<F>(z: Complex64, f: F, x: f64, cfg: &EvalConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("kernel_transform", format!("need x > 0, got {x}")));
    }
    let integrand = |u: f64| -> Result<Complex64> {
        if u < U_FLOOR {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let t = u * u / x;
        let k = koshliakov_kernel(z, u * u)?;
        Ok(f(t)? * k.value * (4.0 * u / x))
    };
    let tol = QuadTol::from_config(cfg);
    let split = 2.0 * FRAC_PI_4;
    let head = tanh_sinh(integrand, 0.0, split, &tol)?;
    let tail = oscillatory_tail(integrand, split, FRAC_PI_4, &tol, cfg.oscillatory_period_cap)?;
    Ok(QuadResult {
        value: head.value + tail.value,
        err_est: head.err_est + tail.err_est,
        evals: head.evals + tail.evals,
        converged: head.converged && tail.converged,
    })
}

fn transform_checked<F>(z: Complex64, f: F, x: f64, cfg: &EvalConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let q = kernel_transform(z, f, x, cfg)?;
    if !q.converged {
        return Err(Error::NonConvergence {
            what: "kernel transform",
            work: q.evals,
            err_est: q.err_est,
        });
    }
    Ok(q)
}

/// Both directions of the reciprocity of e^{−w²/2} K_{z,iw}(2αx) and
/// β K_{z,w}(2βx), β = 1/α, in the Koshliakov kernel:
/// `[forward, backward]`, where forward transforms the β-function and
/// compares with the α-function.
pub fn check_reciprocity(
    z: Complex64,
    w: Complex64,
    alpha: f64,
    x: f64,
    cfg: &EvalConfig,
) -> Result<[IdentityReport; 2]> {
    cfg.validate()?;
    if !(z.re > -0.5 && z.re < 0.5) {
        return Err(Error::domain(
            "check_reciprocity",
            format!("need -1/2 < Re z < 1/2, got z = {z}"),
        ));
    }
    if !(alpha > 0.0 && alpha.is_finite()) || !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("check_reciprocity", "alpha and x must be positive"));
    }
    let beta = 1.0 / alpha;
    let gauss = (-w * w * 0.5).exp();
    let phi = |t: f64| -> Result<Complex64> {
        Ok(kzw_value(z, I * w, Complex64::new(2.0 * alpha * t, 0.0), cfg)?.value * gauss)
    };
    let psi =
        |t: f64| -> Result<Complex64> { Ok(kzw_value(z, w, Complex64::new(2.0 * beta * t, 0.0), cfg)?.value * beta) };

    let tolerance = if w.norm() == 0.0 { 1e-5 } else { 1e-4 };
    let params = IdentityParams {
        z: Some(z),
        w: Some(w),
        x: Some(Complex64::new(x, 0.0)),
        alpha: Some(alpha),
        beta: Some(beta),
        ..Default::default()
    };
    let forward_rhs = transform_checked(z, psi, x, cfg)?;
    let backward_rhs = transform_checked(z, phi, x, cfg)?;
    let forward = IdentityReport::new(
        "reciprocity",
        params,
        phi(x)?,
        forward_rhs.value,
        tolerance,
        forward_rhs.evals,
        cfg,
    )
    .with_aux("quad_err", Complex64::new(forward_rhs.err_est, 0.0));
    let backward = IdentityReport::new(
        "reciprocity-back",
        params,
        psi(x)?,
        backward_rhs.value,
        tolerance,
        backward_rhs.evals,
        cfg,
    )
    .with_aux("quad_err", Complex64::new(backward_rhs.err_est, 0.0));
    Ok([forward, backward])
}
