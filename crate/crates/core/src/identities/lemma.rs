use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use super::{rel_diff, IdentityParams, IdentityReport};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::foundations::bessel_k;
use crate::kzw::KzwPoint;
use crate::quad::{exp_sinh, oscillatory_tail, tanh_sinh, QuadResult, QuadTol};

fn check_sector(x: Complex64) -> Result<()> {
    KzwPoint::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), x).map(|_| ())
}

fn require(q: QuadResult, what: &'static str) -> Result<QuadResult> {
    if q.converged {
        Ok(q)
    } else {
        Err(Error::NonConvergence {
            what,
            work: q.evals,
            err_est: q.err_est,
        })
    }
}

/// ∫₀^∞ e^{−t²−x²/t²} cos(wt) dt/t.
pub fn inteq_left(w: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<QuadResult> {
    check_sector(x)?;
    let x2 = x * x;
    let f = |t: f64| -> Result<Complex64> {
        let inner = x2 / (t * t);
        if inner.re > 745.0 || !inner.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        // cos(wt) e^{−t²−x²/t²} without forming cos(wt) alone, which
        // overflows for complex w long before the Gaussian takes over
        let base = -(inner + t * t);
        let iwt = Complex64::new(0.0, 1.0) * w * t;
        Ok(((base + iwt).exp() + (base - iwt).exp()) * (0.5 / t))
    };
    let tol = QuadTol::from_config(cfg);
    let split = x.norm().sqrt();
    let head = require(tanh_sinh(f, 0.0, split, &tol)?, "lemma left integral")?;
    let tail = require(exp_sinh(f, split, 1.0, &tol)?, "lemma left integral")?;
    Ok(QuadResult {
        value: head.value + tail.value,
        err_est: head.err_est + tail.err_est,
        evals: head.evals + tail.evals,
        converged: true,
    })
}

/// ∫₀^∞ exp(−w²x²/(4(x²+t²))) cos(2t)/√(x²+t²) dt, summed over half-periods
/// of cos 2t past a tanh-sinh head.
pub fn inteq_right(w: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<QuadResult> {
    check_sector(x)?;
    let (x2, w2) = (x * x, w * w);
    let f = |t: f64| -> Result<Complex64> {
        let r2 = x2 + t * t;
        Ok((-(w2 * x2) / (r2 * 4.0)).exp() * (2.0 * t).cos() / r2.sqrt())
    };
    let tol = QuadTol::from_config(cfg);
    // first zero of cos 2t beyond the region where the amplitude varies fast
    let k = ((2.0 * x.norm() + 2.0 - FRAC_PI_4) / FRAC_PI_2).ceil().max(0.0);
    let split = FRAC_PI_4 + k * FRAC_PI_2;
    let head = require(tanh_sinh(f, 0.0, split, &tol)?, "lemma right integral")?;
    let tail = require(
        oscillatory_tail(f, split, FRAC_PI_2, &tol, cfg.oscillatory_period_cap)?,
        "lemma right integral",
    )?;
    Ok(QuadResult {
        value: head.value + tail.value,
        err_est: head.err_est + tail.err_est,
        evals: head.evals + tail.evals,
        converged: true,
    })
}

/// Σ_{n≥0} (−w²x)ⁿ/(2n)! K_n(2x), with K_n from the upward recurrence.
pub fn inteq_series(w: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<(Complex64, usize)> {
    check_sector(x)?;
    let y = x * 2.0;
    let step = -w * w * x;
    let (mut k_prev, mut k_cur) = (
        bessel_k(Complex64::new(0.0, 0.0), y)?,
        bessel_k(Complex64::new(1.0, 0.0), y)?,
    );
    let mut sum = k_prev;
    let mut coef = Complex64::new(1.0, 0.0);
    let mut quiet = 0;
    for n in 1..=cfg.max_series_terms {
        let nf = n as f64;
        coef = coef * step / ((2.0 * nf - 1.0) * (2.0 * nf));
        let term = coef * k_cur;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && nf > step.norm() {
            quiet += 1;
            if quiet >= 2 {
                return Ok((sum, n + 1));
            }
        } else {
            quiet = 0;
        }
        let k_next = k_prev + k_cur * (2.0 * nf) / y;
        k_prev = k_cur;
        k_cur = k_next;
    }
    Err(Error::NonConvergence {
        what: "lemma series",
        work: cfg.max_series_terms,
        err_est: (coef * k_cur).norm(),
    })
}

/// Three-way check of the interchange lemma: the Gaussian-type integral,
/// the Basset-type integral and the Bessel series. The reported residual is
/// the worst of the three pairwise ones.
pub fn check_lemma_inteq(w: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<IdentityReport> {
    cfg.validate()?;
    let left = inteq_left(w, x, cfg)?;
    let right = inteq_right(w, x, cfg)?;
    let (series, terms) = inteq_series(w, x, cfg)?;
    let params = IdentityParams {
        w: Some(w),
        x: Some(x),
        ..Default::default()
    };
    let report = IdentityReport::new(
        "lemma-inteq",
        params,
        left.value,
        right.value,
        1e-8,
        left.evals + right.evals + terms,
        cfg,
    )
    .with_aux("series", series);
    let worst = [left.value, right.value]
        .iter()
        .map(|v| ((v - series).norm(), rel_diff(*v, series, cfg.abs_tol)))
        .fold((0.0, 0.0), |acc: (f64, f64), p| if p.1 > acc.1 { p } else { acc });
    Ok(report.widen(worst.0, worst.1))
}
