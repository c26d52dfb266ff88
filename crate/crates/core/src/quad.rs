//! Quadrature rules: double-exponential rules for finite and semi-infinite
//! ranges, fixed Gauss–Legendre panels, and summation of oscillatory tails
//! by half-period panels with Euler averaging.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub err_est: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Stopping rule for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadTol {
    pub rel: f64,
    pub abs: f64,
    pub max_levels: usize,
}

impl QuadTol {
    /// Relative tolerance and level budget of `cfg`, no absolute floor.
    pub fn from_config(cfg: &EvalConfig) -> Self {
        QuadTol {
            rel: cfg.rel_tol,
            abs: 0.0,
            max_levels: cfg.max_quad_levels,
        }
    }

    pub fn with_abs(self, abs: f64) -> Self {
        QuadTol { abs, ..self }
    }

    fn allowance(&self, v: Complex64) -> f64 {
        (self.rel * v.norm()).max(self.abs)
    }
}

const DE_H0: f64 = 0.5;
const DE_T_MAX: f64 = 7.0;
const NEGLIGIBLE: f64 = 1e-20;

fn non_finite(x: f64) -> Error {
    Error::domain("quadrature", format!("integrand is not finite at {x:e}"))
}

/// Trapezoid rule in the transformed variable with successive halving.
/// `map(t)` returns the abscissa and Jacobian, or `None` where the node
/// would fall outside the representable range.
fn double_exponential<F, M>(mut f: F, map: M, tol: &QuadTol) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
    M: Fn(f64) -> Option<(f64, f64)>,
{
    let mut evals = 0usize;
    let mut sample = |t: f64| -> Result<Complex64> {
        match map(t) {
            None => Ok(Complex64::new(0.0, 0.0)),
            Some((x, w)) => {
                evals += 1;
                let v = f(x)?;
                if !v.is_finite() {
                    return Err(non_finite(x));
                }
                Ok(v * w)
            }
        }
    };

    let n0 = (DE_T_MAX / DE_H0) as i64;
    let mut terms = Vec::with_capacity((2 * n0 + 1) as usize);
    for k in -n0..=n0 {
        terms.push((k, sample(k as f64 * DE_H0)?));
    }
    let max_term = terms.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    let mut sum: Complex64 = terms.iter().map(|(_, v)| *v).sum::<Complex64>() * DE_H0;
    if max_term == 0.0 {
        return Ok(QuadResult {
            value: sum,
            err_est: 0.0,
            evals,
            converged: true,
        });
    }
    let significant = |v: &Complex64| v.norm() > NEGLIGIBLE * max_term;
    let k_lo = terms.iter().find(|(_, v)| significant(v)).map(|p| p.0).unwrap_or(-n0);
    let k_hi = terms
        .iter()
        .rev()
        .find(|(_, v)| significant(v))
        .map(|p| p.0)
        .unwrap_or(n0);
    let t_lo = ((k_lo - 1) as f64 * DE_H0).max(-DE_T_MAX);
    let t_hi = ((k_hi + 1) as f64 * DE_H0).min(DE_T_MAX);

    let mut err = f64::INFINITY;
    let mut h = DE_H0;
    for level in 1..=tol.max_levels {
        h *= 0.5;
        let first = (t_lo / h).round() as i64 + 1;
        let last = (t_hi / h).round() as i64;
        let mut fresh = Complex64::new(0.0, 0.0);
        let mut k = first;
        while k < last {
            fresh += sample(k as f64 * h)?;
            k += 2;
        }
        let next = sum * 0.5 + fresh * h;
        err = (next - sum).norm();
        sum = next;
        if level >= 2 && err <= tol.allowance(sum) {
            return Ok(QuadResult {
                value: sum,
                err_est: err,
                evals,
                converged: true,
            });
        }
    }
    Ok(QuadResult {
        value: sum,
        err_est: err,
        evals,
        converged: false,
    })
}

/// tanh-sinh quadrature of `f` over the finite interval `[a, b]`.
/// Integrable endpoint singularities are handled; nodes never touch the
/// endpoints.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: &QuadTol) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let len = b - a;
    let map = move |t: f64| {
        let v = FRAC_PI_2 * t.sinh();
        let e2 = (-2.0 * v.abs()).exp();
        let dist = len * e2 / (1.0 + e2);
        if dist == 0.0 {
            return None;
        }
        let x = if t < 0.0 { a + dist } else { b - dist };
        if x <= a || x >= b {
            return None;
        }
        let w = 0.5 * len * FRAC_PI_2 * t.cosh() * 4.0 * e2 / ((1.0 + e2) * (1.0 + e2));
        Some((x, w))
    };
    double_exponential(f, map, tol)
}

/// exp-sinh quadrature of `f` over `[a, ∞)`; `scale` is the length over
/// which the integrand does most of its decaying. The integrand may have an
/// integrable singularity at `a` and must decay at infinity.
pub fn exp_sinh<F>(f: F, a: f64, scale: f64, tol: &QuadTol) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let map = move |t: f64| {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        if !(e > 1e-300 && e < 1e300) {
            return None;
        }
        let x = a + scale * e;
        if x <= a || !x.is_finite() {
            return None;
        }
        Some((x, scale * FRAC_PI_2 * t.cosh() * e))
    };
    double_exponential(f, map, tol)
}

/// A fixed Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * pn - pm) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = x;
            weights[i] = w;
            nodes[n - 1 - i] = -x;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<Complex64>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let u = mid + half * x;
            let v = f(u)?;
            if !v.is_finite() {
                return Err(non_finite(u));
            }
            acc += v * *w;
        }
        Ok(acc * half)
    }
}

/// The 24-point rule used for oscillatory panels.
pub fn gauss_legendre_24() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(24))
}

/// Repeated averaging of partial sums; returns the averaged value and the
/// spread of the last two averages.
pub fn euler_average(partial_sums: &[Complex64]) -> (Complex64, f64) {
    match partial_sums.len() {
        0 => (Complex64::new(0.0, 0.0), f64::INFINITY),
        1 => (partial_sums[0], f64::INFINITY),
        _ => {
            let mut row = partial_sums.to_vec();
            while row.len() > 2 {
                for i in 0..row.len() - 1 {
                    row[i] = (row[i] + row[i + 1]) * 0.5;
                }
                row.pop();
            }
            ((row[0] + row[1]) * 0.5, (row[1] - row[0]).norm())
        }
    }
}

/// Integral of `f` over `[start, ∞)` as a sum of panels of length
/// `half_period`. Stops once panels become negligible; otherwise the
/// partial sums are Euler-averaged until the estimate settles or `cap`
/// panels have been used.
pub fn oscillatory_tail<F>(mut f: F, start: f64, half_period: f64, tol: &QuadTol, cap: usize) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let rule = gauss_legendre_24();
    let mut partial = Vec::new();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_run = 0;
    let mut prev_acc: Option<Complex64> = None;
    let mut best = (Complex64::new(0.0, 0.0), f64::INFINITY);
    for k in 0..cap {
        let a = start + k as f64 * half_period;
        let panel = rule.integrate(&mut f, a, a + half_period)?;
        sum += panel;
        partial.push(sum);
        let evals = partial.len() * rule.len();
        if panel.norm() <= 0.01 * tol.allowance(sum) {
            small_run += 1;
            if small_run >= 3 {
                return Ok(QuadResult {
                    value: sum,
                    err_est: 3.0 * panel.norm(),
                    evals,
                    converged: true,
                });
            }
        } else {
            small_run = 0;
        }
        let n = partial.len();
        if n >= 16 && n % 4 == 0 {
            let (acc, spread) = euler_average(&partial[n / 2..]);
            let drift = prev_acc.map_or(f64::INFINITY, |p| (acc - p).norm());
            let err = spread.max(drift);
            if err <= tol.allowance(acc) {
                return Ok(QuadResult {
                    value: acc,
                    err_est: err,
                    evals,
                    converged: true,
                });
            }
            prev_acc = Some(acc);
            if err < best.1 {
                best = (acc, err);
            }
        }
    }
    if best.1.is_infinite() {
        best = (sum, f64::INFINITY);
    }
    Ok(QuadResult {
        value: best.0,
        err_est: best.1,
        evals: partial.len() * rule.len(),
        converged: false,
    })
}
