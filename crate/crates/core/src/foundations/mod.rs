//! Special functions everything else is built on.

mod bessel;
mod divisor;
mod gamma;
mod hyper;
mod kernel;
mod zeta;

pub use bessel::{bessel_i, bessel_j, bessel_k, bessel_k_half_integer, bessel_y};
pub use divisor::{divisor_count, sigma_divisor};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use hyper::{hyp0f2, hyp1f1, hyp2f2, hyp_pfq};
pub use kernel::{kernel_mellin, kernel_mellin_closed_form, koshliakov_kernel, KernelSample};
pub use zeta::{zeta, EULER_GAMMA, STIELTJES_GAMMA1};

/// sin(πs), with the argument reduced exactly so that values near
/// integers keep full relative accuracy.
pub(crate) fn sin_pi(s: num_complex::Complex64) -> num_complex::Complex64 {
    let n = s.re.round();
    let r = s - n;
    let v = (r * std::f64::consts::PI).sin();
    if n.rem_euclid(2.0) == 0.0 {
        v
    } else {
        -v
    }
}

/// cos(πs) with exact argument reduction.
pub(crate) fn cos_pi(s: num_complex::Complex64) -> num_complex::Complex64 {
    let n = s.re.round();
    let r = s - n;
    let v = (r * std::f64::consts::PI).cos();
    if n.rem_euclid(2.0) == 0.0 {
        v
    } else {
        -v
    }
}

/// Integer nearest to `v` if `v` lies within `tol` of it.
pub(crate) fn near_integer(v: num_complex::Complex64, tol: f64) -> Option<i64> {
    let n = v.re.round();
    if (v - n).norm() < tol && n.abs() < 1e15 {
        Some(n as i64)
    } else {
        None
    }
}
