use num_complex::Complex64;

use super::{IdentityParams, IdentityReport};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::kzw::{eval_double_sum, wedge_coefficients, KLadder, KzwPoint};

/// K_{z,w}(2x) and its second and fourth w-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WDerivatives {
    pub value: Complex64,
    pub d2: Complex64,
    pub d4: Complex64,
}

fn check_sector(x: Complex64) -> Result<()> {
    // Same sector rule as the point constructor, applied to 2x.
    KzwPoint::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), x * 2.0).map(|_| ())
}

fn analytic(ladder: &mut KLadder, shift: i64, w: Complex64, cfg: &EvalConfig) -> Result<(WDerivatives, usize)> {
    let (coeffs, _) = wedge_coefficients(ladder, shift, w.norm(), 4, cfg.max_series_terms)?;
    let w2 = w * w;
    let zero = Complex64::new(0.0, 0.0);
    let (mut value, mut d2, mut d4) = (zero, zero, zero);
    // f = Σ A_d w^{2d}; differentiate term by term.
    for (d, a) in coeffs.iter().enumerate().rev() {
        let k = 2.0 * d as f64;
        value = value * w2 + a;
        if d >= 1 {
            d2 = d2 * w2 + a * (k * (k - 1.0));
        }
        if d >= 2 {
            d4 = d4 * w2 + a * (k * (k - 1.0) * (k - 2.0) * (k - 3.0));
        }
    }
    let n = coeffs.len();
    Ok((WDerivatives { value, d2, d4 }, n * (n + 1) / 2))
}

/// Termwise derivatives of the double sum for K_{z+shift,w}(2x).
pub fn w_derivatives(z: Complex64, w: Complex64, x: Complex64, shift: i64, cfg: &EvalConfig) -> Result<WDerivatives> {
    check_sector(x)?;
    let mut ladder = KLadder::new(z, x)?;
    Ok(analytic(&mut ladder, shift, w, cfg)?.0)
}

fn kzw_at(z: Complex64, w: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let e = eval_double_sum(&KzwPoint::new(z, w, x * 2.0)?, cfg)?;
    Ok(e.value)
}

fn central(
    z: Complex64,
    w: Complex64,
    x: Complex64,
    h: f64,
    cfg: &EvalConfig,
) -> Result<(Complex64, Complex64, Complex64)> {
    let f = |k: f64| kzw_at(z, w + h * k, x, cfg);
    let (m2, m1, c, p1, p2) = (f(-2.0)?, f(-1.0)?, f(0.0)?, f(1.0)?, f(2.0)?);
    let d2 = (p1 - c * 2.0 + m1) / (h * h);
    let d4 = (p2 - p1 * 4.0 + c * 6.0 - m1 * 4.0 + m2) / (h * h * h * h);
    Ok((c, d2, d4))
}

/// Central-difference w-derivatives with step `h`; with `richardson` the
/// steps h and h/2 are combined once.
pub fn w_derivatives_fd(
    z: Complex64,
    w: Complex64,
    x: Complex64,
    shift: i64,
    h: f64,
    richardson: bool,
    cfg: &EvalConfig,
) -> Result<WDerivatives> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain("w_derivatives_fd", format!("need h > 0, got {h}")));
    }
    let zs = z + shift as f64;
    let (value, d2, d4) = central(zs, w, x, h, cfg)?;
    if !richardson {
        return Ok(WDerivatives { value, d2, d4 });
    }
    let (_, d2h, d4h) = central(zs, w, x, 0.5 * h, cfg)?;
    Ok(WDerivatives {
        value,
        d2: (d2h * 4.0 - d2) / 3.0,
        d4: (d4h * 4.0 - d4) / 3.0,
    })
}

struct Assembly {
    lhs: Complex64,
    rhs: Complex64,
    scale: f64,
}

/// d⁴K_{z} + 2x(d²K_{z+1} + d²K_{z−1}) on the left, −x²(K_{z+2} − 2K_z + K_{z−2})
/// on the right; `scale` is the largest single term.
fn assemble(x: Complex64, at: &dyn Fn(i64) -> Result<WDerivatives>) -> Result<Assembly> {
    let (m2, m1, c, p1, p2) = (at(-2)?, at(-1)?, at(0)?, at(1)?, at(2)?);
    let x2 = x * x;
    let parts = [
        c.d4,
        x * 2.0 * p1.d2,
        x * 2.0 * m1.d2,
        x2 * p2.value,
        x2 * c.value * 2.0,
        x2 * m2.value,
    ];
    let scale = parts.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    Ok(Assembly {
        lhs: parts[0] + parts[1] + parts[2],
        rhs: -(parts[3] - parts[4] + parts[5]),
        scale,
    })
}

/// Normalized residual of the differential-difference equation with
/// finite-difference w-derivatives.
pub fn dde_residual_fd(
    z: Complex64,
    w: Complex64,
    x: Complex64,
    h: f64,
    richardson: bool,
    cfg: &EvalConfig,
) -> Result<f64> {
    check_sector(x)?;
    let a = assemble(x, &|s| w_derivatives_fd(z, w, x, s, h, richardson, cfg))?;
    Ok((a.lhs - a.rhs).norm() / a.scale.max(cfg.abs_tol))
}

/// d⁴/dw⁴ K_{z,w}(2x) + 2x(d²/dw² K_{z+1,w}(2x) + d²/dw² K_{z−1,w}(2x)) +
/// x²(K_{z+2,w}(2x) − 2K_{z,w}(2x) + K_{z−2,w}(2x)) = 0, with derivatives
/// taken term by term in the double sum.
///
/// The residual is normalized by the largest of the six assembled terms
/// rather than by |lhs| and |rhs|.
pub fn check_dde(z: Complex64, w: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<IdentityReport> {
    cfg.validate()?;
    check_sector(x)?;
    let ladder = std::cell::RefCell::new(KLadder::new(z, x)?);
    let work = std::cell::Cell::new(0usize);
    let a = assemble(x, &|s| {
        let (d, n) = analytic(&mut ladder.borrow_mut(), s, w, cfg)?;
        work.set(work.get() + n);
        Ok(d)
    })?;
    let params = IdentityParams {
        z: Some(z),
        w: Some(w),
        x: Some(x),
        ..Default::default()
    };
    let mut report = IdentityReport::new("dde", params, a.lhs, a.rhs, 1e-9, work.get(), cfg);
    report.rel_residual = report.abs_residual / a.scale.max(cfg.abs_tol);
    report.pass = report.rel_residual <= report.tolerance;
    Ok(report.with_aux("scale", Complex64::new(a.scale, 0.0)))
}
