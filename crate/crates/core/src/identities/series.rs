use std::f64::consts::PI;

use num_complex::Complex64;

use super::kzw_value;
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::foundations::sigma_divisor;

/// Partial sums of Σ_{n≥1} σ_{−z}(n) n^{z/2} K_{z/2,w}(2n·x0) together with
/// a bound on everything after the last term.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSide {
    pub partial_sums: Vec<Complex64>,
    pub tail_bound: f64,
    pub n_terms: usize,
    /// Kzw evaluations' combined work.
    pub work: usize,
}

impl SeriesSide {
    pub fn value(&self) -> Complex64 {
        self.partial_sums.last().copied().unwrap_or_default()
    }
}

/// Leading large-argument size of K_{ν,w}(2X), with cos(2w√X) replaced by
/// its modulus bound.
fn envelope(w: Complex64, big_x: f64) -> f64 {
    let gauss = (-w * w * 0.25).exp().norm();
    0.25 * (PI / big_x).sqrt() * (-2.0 * big_x).exp() * ((2.0 * w.im.abs() * big_x.sqrt()).exp() + gauss)
}

/// Bound on |σ_{−z}(n) n^{z/2}|, from d(n) ≤ 2√n.
fn arithmetic_bound(z: Complex64, n: f64) -> f64 {
    2.0 * n.sqrt() * n.powf(z.re.abs() / 2.0)
}

fn tail_sum(z: Complex64, w: Complex64, x0: f64, from: usize, scale: f64) -> f64 {
    let mut total = 0.0;
    for m in from.. {
        let mf = m as f64;
        let t = scale * arithmetic_bound(z, mf) * envelope(w, mf * x0);
        total += t;
        if t <= 1e-18 * total || t == 0.0 || m > from + 4000 {
            break;
        }
    }
    total
}

/// Σ_{n≥1} σ_{−z}(n) n^{z/2} K_{z/2,w}(2n·x0), truncated once the certified
/// tail falls below max(abs_tol, 1e−3·rel_tol·|sum|).
///
/// Terms decay like e^{−2n·x0}; the tail is bounded by the leading
/// large-argument envelope, scaled to the last few observed terms and
/// doubled.
pub fn divisor_kzw_series(z: Complex64, w: Complex64, x0: f64, cfg: &EvalConfig) -> Result<SeriesSide> {
    if !(x0 > 0.0 && x0.is_finite()) {
        return Err(Error::domain("divisor_kzw_series", format!("need x0 > 0, got {x0}")));
    }
    let half_z = z * 0.5;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut partial_sums = Vec::new();
    let mut ratios = Vec::new();
    let mut work = 0;
    let mut tail = f64::INFINITY;
    for n in 1..=cfg.max_series_terms {
        let nf = n as f64;
        let big_x = nf * x0;
        let k = kzw_value(half_z, w, Complex64::new(2.0 * big_x, 0.0), cfg)?;
        work += k.work;
        let arith = sigma_divisor(n as u64, z) * Complex64::new(nf, 0.0).powc(half_z);
        sum += arith * k.value;
        partial_sums.push(sum);
        ratios.push(k.value.norm() / envelope(w, big_x));
        if n >= 3 {
            let fit = ratios[ratios.len() - 3..].iter().fold(1.0f64, |m, &r| m.max(r));
            tail = tail_sum(z, w, x0, n + 1, 2.0 * fit);
            if tail <= cfg.abs_tol.max(1e-3 * cfg.rel_tol * sum.norm()) {
                return Ok(SeriesSide {
                    partial_sums,
                    tail_bound: tail,
                    n_terms: n,
                    work,
                });
            }
        }
    }
    Err(Error::NonConvergence {
        what: "divisor series",
        work: cfg.max_series_terms,
        err_est: tail,
    })
}
