use std::f64::consts::{FRAC_2_PI, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::bessel::{bessel_j, bessel_k, bessel_y};
use super::gamma::gamma;
use super::{cos_pi, sin_pi};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::quad::{oscillatory_tail, tanh_sinh, QuadResult, QuadTol};

/// A sample of the kernel cos(πz) M_{2z}(4√u) − sin(πz) J_{2z}(4√u),
/// where M_ν = (2/π) K_ν − Y_ν, with its two parts kept apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub value: Complex64,
    /// cos(πz) M_{2z}(4√u)
    pub m_part: Complex64,
    /// sin(πz) J_{2z}(4√u)
    pub j_part: Complex64,
}

/// The kernel of the self-reciprocal transform, for −1/2 < Re z < 1/2 and
/// u > 0.
pub fn koshliakov_kernel(z: Complex64, u: f64) -> Result<KernelSample> {
    if !(z.re > -0.5 && z.re < 0.5) {
        return Err(Error::domain(
            "koshliakov_kernel",
            format!("need -1/2 < Re z < 1/2, got z = {z}"),
        ));
    }
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain("koshliakov_kernel", format!("need u > 0, got {u}")));
    }
    let y = Complex64::new(4.0 * u.sqrt(), 0.0);
    let nu = 2.0 * z;
    let m = bessel_k(nu, y)? * FRAC_2_PI - bessel_y(nu, y)?;
    let m_part = cos_pi(z) * m;
    let j_part = sin_pi(z) * bessel_j(nu, y)?;
    Ok(KernelSample {
        value: m_part - j_part,
        m_part,
        j_part,
    })
}

/// Γ(s−z)Γ(s+z)(cos πz + cos πs) / (π 2^{2s} x^s): the Mellin transform in
/// t of the kernel at argument xt, for |Re z| < Re s < 3/4.
pub fn kernel_mellin_closed_form(z: Complex64, s: Complex64, x: f64) -> Result<Complex64> {
    let g = gamma(s - z)? * gamma(s + z)?;
    let scale = (-s * (4.0 * x).ln()).exp() / PI;
    Ok(g * (cos_pi(z) + cos_pi(s)) * scale)
}

/// ∫₀^∞ t^{s−1} kernel(z, xt) dt by quadrature. With t = u²/x the kernel
/// oscillates with phase 4u; past a tanh-sinh head the integral is summed
/// over half-periods π/4 and Euler-averaged.
pub fn kernel_mellin(z: Complex64, s: Complex64, x: f64, cfg: &EvalConfig) -> Result<QuadResult> {
    if !(s.re > z.re.abs() && s.re < 0.75) {
        return Err(Error::domain(
            "kernel_mellin",
            format!("need |Re z| < Re s < 3/4, got s = {s}, z = {z}"),
        ));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("kernel_mellin", format!("need x > 0, got {x}")));
    }
    let f = |u: f64| -> Result<Complex64> {
        if u < 1e-150 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let k = koshliakov_kernel(z, u * u)?;
        Ok(k.value * ((s * 2.0 - 1.0) * u.ln()).exp())
    };
    let tol = QuadTol::from_config(cfg);
    let split = 2.0 * FRAC_PI_4;
    let head = tanh_sinh(f, 0.0, split, &tol)?;
    let tail = oscillatory_tail(f, split, FRAC_PI_4, &tol, cfg.oscillatory_period_cap)?;
    let scale = (-s * x.ln()).exp() * 2.0;
    Ok(QuadResult {
        value: (head.value + tail.value) * scale,
        err_est: (head.err_est + tail.err_est) * scale.norm(),
        evals: head.evals + tail.evals,
        converged: head.converged && tail.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn z_zero_has_no_j_part() {
        let s = koshliakov_kernel(Complex64::new(0.0, 0.0), 0.7).unwrap();
        assert_eq!(s.j_part, Complex64::new(0.0, 0.0));
        assert_eq!(s.value, s.m_part);
    }

    #[test]
    fn strip_is_enforced() {
        assert!(koshliakov_kernel(Complex64::new(0.5, 0.0), 1.0).is_err());
        assert!(koshliakov_kernel(Complex64::new(-0.6, 0.0), 1.0).is_err());
        assert!(koshliakov_kernel(Complex64::new(0.2, 0.0), 0.0).is_err());
    }

    #[test]
    fn quarter_order_reference() {
        // z = 1/4: cos(π/4)·((2/π)K_{1/2}(y) − Y_{1/2}(y)) − sin(π/4)·J_{1/2}(y)
        let u: f64 = 0.36;
        let y = 4.0 * u.sqrt();
        let k = (PI / (2.0 * y)).sqrt() * (-y).exp();
        let yy = -(2.0 / (PI * y)).sqrt() * y.cos();
        let j = (2.0 / (PI * y)).sqrt() * y.sin();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expect = r * (FRAC_2_PI * k - yy) - r * j;
        let s = koshliakov_kernel(Complex64::new(0.25, 0.0), u).unwrap();
        assert!((s.value.re - expect).abs() < 1e-12, "{} vs {expect}", s.value);
    }
}
