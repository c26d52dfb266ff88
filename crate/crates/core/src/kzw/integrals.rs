use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;

use super::KzwPoint;
use crate::config::{EvalConfig, Evaluation, Method};
use crate::error::{Error, Result};
use crate::foundations::{bessel_k_half_integer, gamma, hyp0f2, hyp1f1, ln_gamma};
use crate::quad::{exp_sinh, oscillatory_tail, tanh_sinh, QuadResult, QuadTol};

/// exp(v) is below every double once Re v drops under this.
const UNDERFLOW: f64 = -745.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Crude upper bound on log |₀F₂(−; b1, b2; y)| for large |y|.
fn log_growth_0f2(y: Complex64) -> f64 {
    3.0 * y.norm().cbrt()
}

/// K_{z,w}(x) from the Gaussian-type integral for K_{z,w}(2x'), x' = x/2,
/// split at the ridge t = √|x'|. The inner piece is integrated in
/// v = log(ridge/t).
pub fn eval_integral(p: &KzwPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    let xp = p.x() * 0.5;
    let (z, w) = (p.z(), p.w());
    let xp2 = xp * xp;
    let exponent = 2.0 * z - 1.0;
    let integrand = |t: f64| -> Complex64 {
        let e = -(t * t) - xp2 / (t * t) + exponent * t.ln();
        let growth = w.im.abs() * (t + xp.norm() / t);
        if !(e.re + growth > UNDERFLOW) {
            return c(0.0, 0.0);
        }
        e.exp() * (w * t).cos() * (w * xp / t).cos()
    };
    let ridge = xp.norm().sqrt();
    let tol = QuadTol::from_config(cfg);
    let inner = exp_sinh(
        |v| {
            let t = ridge * (-v).exp();
            Ok(integrand(t) * t)
        },
        0.0,
        1.0,
        &tol,
    )?;
    let outer = exp_sinh(|t| Ok(integrand(t)), ridge, 1.0, &tol)?;
    let pre = (-z * xp.ln()).exp();
    let value = pre * (inner.value + outer.value);
    let err = pre.norm() * (inner.err_est + outer.err_est);
    Ok(Evaluation::assess(
        value,
        err,
        Method::Integral,
        inner.evals + outer.evals,
        cfg,
    ))
}

/// K_{z,w}(x) from its defining inverse Mellin transform, by the trapezoid
/// rule on the vertical line Re s = c.
pub fn eval_mellin_barnes(p: &KzwPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    let (z, w, x) = (p.z(), p.w(), p.x());
    // The line sits near the real saddle of Γ(s/2)² x^{−s}, which keeps the
    // integrand free of cancellation for larger |x|.
    let abscissa = (z.re.abs() + 0.5).max(x.norm().min(60.0));
    let q = -w * w * 0.25;
    let ln_x = x.ln();
    let half = c(0.5, 0.0);
    let mut evals = 0usize;
    let mut g = |y: f64| -> Result<Complex64> {
        evals += 1;
        let s = c(abscissa, y);
        let a1 = (s - z) * 0.5;
        let a2 = (s + z) * 0.5;
        let lg = ln_gamma(a1)? + ln_gamma(a2)? + (s - 2.0) * LN_2 - s * ln_x;
        Ok(lg.exp() * hyp1f1(a1, half, q)? * hyp1f1(a2, half, q)?)
    };

    let mut biggest = g(0.0)?.norm();
    let mut height = 0.0;
    let mut truncated = true;
    while height < cfg.contour_height_cap {
        height += 5.0;
        let up = g(height)?.norm();
        let down = g(-height)?.norm();
        biggest = biggest.max(up).max(down);
        if up.max(down) <= 1e-18 * biggest {
            truncated = false;
            break;
        }
    }
    let height = height.min(cfg.contour_height_cap);
    let edge = g(height)?.norm() + g(-height)?.norm();

    let mut h = 0.5;
    let n = (height / h).ceil() as i64;
    let mut sum = c(0.0, 0.0);
    for k in -n..=n {
        sum += g(k as f64 * h)?;
    }
    sum *= h;
    let mut err = f64::INFINITY;
    let mut nodes = n;
    for level in 1..=cfg.max_quad_levels {
        h *= 0.5;
        let mut fresh = c(0.0, 0.0);
        let mut k = -2 * nodes + 1;
        while k < 2 * nodes {
            fresh += g(k as f64 * h)?;
            k += 2;
        }
        nodes *= 2;
        let next = sum * 0.5 + fresh * h;
        err = (next - sum).norm();
        sum = next;
        if level >= 2 && err <= cfg.rel_tol * sum.norm() {
            break;
        }
    }
    let value = sum / (2.0 * PI);
    let mut err = err / (2.0 * PI);
    if truncated {
        err += edge * height / PI;
    }
    Ok(Evaluation::assess(value, err, Method::MellinBarnes, evals, cfg))
}

/// K_{0,w}(x) from the Basset-type integral; the slowly decaying tail is
/// summed over half-periods of cos u with Euler averaging.
pub fn eval_basset_z0(w: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<Evaluation> {
    KzwPoint::new(c(0.0, 0.0), w, x)?;
    let w2 = w * w;
    let x2 = x * x;
    let f = |u: f64| -> Result<Complex64> {
        let r2 = x2 + u * u;
        let a = w2 * x2 / (2.0 * r2);
        let b = w2 * x * u / (2.0 * r2);
        Ok((-a).exp() * b.cos() * u.cos() / r2.sqrt())
    };
    let tol = QuadTol::from_config(cfg).with_abs(cfg.abs_tol * 0.1);
    let head = tanh_sinh(f, 0.0, FRAC_PI_2, &tol)?;
    let tail = oscillatory_tail(f, FRAC_PI_2, PI, &tol, cfg.oscillatory_period_cap)?;
    let value = head.value + tail.value;
    let err = head.err_est + tail.err_est;
    let mut e = Evaluation::assess(value, err, Method::BassetZ0, head.evals + tail.evals, cfg);
    e.converged &= head.converged && tail.converged;
    Ok(e)
}

/// K_{z,w}(x) as a series of Laplace transforms, Re z > −1/2.
pub fn eval_laplace_series(p: &KzwPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    let (z, w, x) = (p.z(), p.w(), p.x());
    if !(z.re > -0.5) {
        return Err(Error::domain(
            "eval_laplace_series",
            format!("need Re z > -1/2, got z = {z}"),
        ));
    }
    let pre = ((z + 0.5) * (2.0 * x).ln()).exp() / gamma(z + 0.5)? * (-x).exp() * (PI / (2.0 * x)).sqrt();
    let q = -w * w * x * 0.5;
    let fq = -w * w * x * x * 0.25;
    let b2 = z + 0.5;
    let power = z - 0.5;
    let tol = QuadTol::from_config(cfg);
    let scale = 1.0f64.min(1.0 / x.norm());
    let head_power = 1.0f64.max(1.0 / (power.re + 1.0));
    let head_exponent = (power + 1.0) * head_power - 1.0;
    let head_log_weight = power * scale.ln() + (scale * head_power).ln();

    let mut sum = c(0.0, 0.0);
    let mut err = 0.0;
    let mut evals = 0;
    let mut coef = c(1.0, 0.0);
    let mut quiet = 0;
    let mut largest = 0.0f64;
    for n in 0..cfg.max_series_terms {
        if n > 0 {
            let nf = n as f64;
            coef *= q / ((2.0 * nf - 1.0) * (2.0 * nf));
        }
        if coef.norm() == 0.0 {
            break;
        }
        let nn = n as u32;
        // the integrand with t^{z−1/2} replaced by e^{log_factor}
        let smooth = |t: f64, log_factor: Complex64| -> Result<Complex64> {
            let lt = (t + 1.0).ln();
            let arg = fq * (t * (t + 1.0));
            if !arg.is_finite() {
                return Ok(c(0.0, 0.0));
            }
            let log_size =
                -2.0 * x.re * t + power.re * lt + log_factor.re - n as f64 * (2.0 * t + 1.0).ln() + log_growth_0f2(arg);
            if !(log_size > UNDERFLOW) {
                return Ok(c(0.0, 0.0));
            }
            // K_{n+1/2}(x(2t+1)) without its e^{-x} and √(π/2x) factors
            let y = x * (2.0 * t + 1.0);
            let k = bessel_k_half_integer(nn, y) * (x.exp() / (PI / (2.0 * x)).sqrt());
            let v = (power * lt + log_factor).exp() * (2.0 * t + 1.0).powf(0.5 - n as f64) * k;
            Ok(v * hyp0f2(c(0.5, 0.0), b2, arg)?)
        };
        // t = scale·u^m on [0, scale] turns t^{z−1/2} dt into a bounded
        // u-power; nodes stopping near 1e-300 would otherwise lose a visible
        // share of the mass as Re z → −1/2
        let head = tanh_sinh(
            |u| smooth(scale * u.powf(head_power), head_log_weight + head_exponent * u.ln()),
            0.0,
            1.0,
            &tol,
        )?;
        let tail = exp_sinh(|t| smooth(t, power * t.ln()), scale, scale, &tol)?;
        let inner = QuadResult {
            value: head.value + tail.value,
            err_est: head.err_est + tail.err_est,
            evals: head.evals + tail.evals,
            converged: head.converged && tail.converged,
        };
        evals += inner.evals;
        let term = coef * inner.value;
        sum += term;
        err += coef.norm() * inner.err_est;
        largest = largest.max(term.norm());
        if term.norm() <= 1e-17 * largest {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= 2 {
            break;
        }
        if n + 1 == cfg.max_series_terms {
            return Err(Error::NonConvergence {
                what: "laplace series",
                work: n + 1,
                err_est: term.norm(),
            });
        }
    }
    let value = pre * sum;
    Ok(Evaluation::assess(
        value,
        pre.norm() * err,
        Method::LaplaceSeries,
        evals,
        cfg,
    ))
}

/// K_{z,w}(x) as a double integral over (t, y) ∈ (0, ∞)², Re z > −1.
pub fn eval_double_integral(p: &KzwPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    let (z, w, x) = (p.z(), p.w(), p.x());
    if !(z.re > -1.0) {
        return Err(Error::domain(
            "eval_double_integral",
            format!("need Re z > -1, got z = {z}"),
        ));
    }
    let a = x * 0.5;
    let k = -w * w * x / 8.0;
    let half = c(0.5, 0.0);
    let b_outer = z + 1.0;
    let tol = QuadTol::from_config(cfg);
    let mut evals = 0usize;
    let mut inner_err = 0.0f64;
    let outer = exp_sinh(
        |y| {
            let ya = y + a;
            let outer_arg = k * y;
            let outer_growth = log_growth_0f2(outer_arg);
            let inner_scale = (1.0 / ya.norm()).min(1.0);
            let inner = exp_sinh(
                |t| {
                    let e = -2.0 * ((t + a) * ya).sqrt() + x;
                    let arg = k * t;
                    if !(e.re + outer_growth + log_growth_0f2(arg) - 0.5 * t.ln() > UNDERFLOW) {
                        return Ok(c(0.0, 0.0));
                    }
                    Ok(e.exp() / t.sqrt() * hyp0f2(half, half, arg)?)
                },
                0.0,
                inner_scale,
                &tol,
            )?;
            evals += inner.evals;
            if inner.value.norm() == 0.0 {
                return Ok(c(0.0, 0.0));
            }
            let weight = (z * y.ln()).exp() / ya.sqrt() * hyp0f2(half, b_outer, outer_arg)?;
            inner_err = inner_err.max(inner.err_est / inner.value.norm());
            Ok(weight * inner.value)
        },
        0.0,
        (1.0 / a.norm()).min(1.0),
        &tol,
    )?;
    let pre = (-x).exp() / (2.0 * gamma(1.0 + z)?);
    let value = pre * outer.value;
    let err = pre.norm() * (outer.err_est + inner_err * outer.value.norm());
    let mut e = Evaluation::assess(value, err, Method::DoubleIntegral, evals, cfg);
    e.converged &= outer.converged;
    Ok(e)
}
