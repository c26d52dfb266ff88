use std::f64::consts::PI;

use num_complex::Complex64;

use super::KzwPoint;
use crate::config::{EvalConfig, Evaluation, Method};
use crate::error::{Error, Result};
use crate::foundations::{gamma, hyp1f1, hyp2f2, EULER_GAMMA};

/// Known coefficients of the large-x expansion of K_{z,w}(2x):
/// `p` and `r` in powers x⁰, x⁻¹, `q` in powers x^{−1/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticTerms {
    pub p: Vec<Complex64>,
    pub q: Vec<Complex64>,
    pub r: Vec<Complex64>,
}

pub fn asymptotic_terms(z: Complex64, w: Complex64) -> AsymptoticTerms {
    let (z2, w2) = (z * z, w * w);
    let one = Complex64::new(1.0, 0.0);
    AsymptoticTerms {
        p: vec![one, (32.0 * z2 - 3.0 * w2 - 8.0) / 128.0],
        q: vec![w / 8.0],
        r: vec![one, (4.0 * z2 - 1.0) * (2.0 - w2) / 32.0],
    }
}

/// Large-|x| expansion of K_{z,w}(x), truncated after `order` (0 or 1)
/// correction terms. Coefficients beyond the first correction are unknown,
/// so for order 1 the error estimate scales the printed corrections by the
/// ratio that links successive terms of the classical K_z expansion.
pub fn asymptotic_large_x(p: &KzwPoint, order: u32, cfg: &EvalConfig) -> Result<Evaluation> {
    if order > 1 {
        return Err(Error::domain(
            "asymptotic_large_x",
            format!("order must be 0 or 1, got {order}"),
        ));
    }
    let (z, w) = (p.z(), p.w());
    let xp = p.x() * 0.5;
    let terms = asymptotic_terms(z, w);
    let root = xp.sqrt();
    let pre = 0.25 * (PI / xp).sqrt() * (-2.0 * xp).exp();
    let (cos, sin) = ((2.0 * w * root).cos(), (2.0 * w * root).sin());
    let gauss = (-w * w * 0.25).exp();

    let p1 = terms.p[1] / xp;
    let q0 = terms.q[0] / root;
    let r1 = terms.r[1] / xp;
    let corrections = cos.norm() * p1.norm() + sin.norm() * q0.norm() + gauss.norm() * r1.norm();
    let (value, err) = if order == 0 {
        (pre * (cos + gauss), pre.norm() * corrections)
    } else {
        let ratio = (4.0 * z.norm_sqr() + w.norm_sqr() + 9.0) / (32.0 * xp.norm());
        (
            pre * (cos * (1.0 + p1) - sin * q0 + gauss * (1.0 + r1)),
            pre.norm() * corrections * ratio,
        )
    };
    Ok(Evaluation::assess(
        value,
        err,
        Method::AsymptoticLargeX,
        3 + 2 * order as usize,
        cfg,
    ))
}

/// Leading small-x behaviour of K_{z,w}(x), for Re z > 0 or z = 0.
///
/// For Re z > 0 the error estimate is the size of the companion term
/// ½Γ(−z)(x/2)^{z}₁F₁(−z; 1/2; −w²/4); for z = 0 it is the constant
/// log 2 − γ that separates K_{0,w}(x) from the logarithmic leading term.
pub fn asymptotic_small_x(p: &KzwPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    let (z, w, x) = (p.z(), p.w(), p.x());
    let half = Complex64::new(0.5, 0.0);
    let q = -w * w * 0.25;
    if z.norm() < 1e-10 {
        let one = Complex64::new(1.0, 0.0);
        let value = -x.ln() - w * w * 0.5 * hyp2f2(one, one, Complex64::new(1.5, 0.0), Complex64::new(2.0, 0.0), q)?;
        let err = (2f64.ln() - EULER_GAMMA) + x.norm() * (1.0 + w.norm_sqr());
        return Ok(Evaluation::assess(value, err, Method::AsymptoticSmallX, 1, cfg));
    }
    if !(z.re > 0.0) {
        return Err(Error::domain(
            "asymptotic_small_x",
            format!("need Re z > 0 or z = 0, got z = {z}"),
        ));
    }
    let lead_f = hyp1f1(z, half, q)?;
    let value = 0.5 * gamma(z)? * (-z * (x * 0.5).ln()).exp() * lead_f;
    let companion = match gamma(-z) {
        Ok(g) => 0.5 * g * (z * (x * 0.5).ln()).exp() * hyp1f1(-z, half, q)?,
        // at integer z the companion carries a logarithm instead
        Err(_) => 0.5 * (x * 0.5).powc(z) * (x * 0.5).ln(),
    };
    let err = companion.norm() + value.norm() * x.norm_sqr() * (1.0 + w.norm_sqr());
    Ok(Evaluation::assess(value, err, Method::AsymptoticSmallX, 1, cfg))
}
