use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::gamma;
use super::sin_pi;
use crate::error::{Error, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;
/// First Stieltjes constant γ₁.
pub const STIELTJES_GAMMA1: f64 = -0.072_815_845_483_676_724_86;

const LN_3_PLUS_SQRT8: f64 = 1.762_747_174_039_086;

/// Riemann zeta function. Borwein's alternating-series algorithm for
/// Re s ≥ −1/2; the functional equation to the left of that, which keeps
/// the trivial zeros exact, and wherever 1 − 2^{1−s} is small.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::Pole {
            function: "zeta",
            at: s,
        });
    }
    if !s.is_finite() {
        return Err(Error::domain("zeta", "non-finite argument"));
    }
    let denom = 1.0 - (2.0f64.ln() * (1.0 - s)).exp();
    if s.re < -0.5 || denom.norm() < 0.1 {
        let r = 1.0 - s;
        let factor = (s * 2.0f64.ln()).exp() * ((s - 1.0) * PI.ln()).exp() * sin_pi(s * 0.5) * gamma(r)?;
        return Ok(factor * zeta(r)?);
    }
    Ok(eta_borwein(s) / denom)
}

/// Dirichlet eta function by Borwein's algorithm 2.
fn eta_borwein(s: Complex64) -> Complex64 {
    let t = s.im.abs();
    let n = (((PI * t / 2.0 + (1.0 + 2.0 * t).ln() + 40.0) / LN_3_PLUS_SQRT8).ceil() as usize).clamp(20, 350);
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 1.0;
    d.push(acc);
    for i in 0..n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, dk) in d.iter().take(n).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let w = (dn - dk) / dn;
        sum += (-s * ((k + 1) as f64).ln()).exp() * (sign * w);
    }
    sum
}
