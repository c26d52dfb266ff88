use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::rgamma;
use super::{cos_pi, near_integer, sin_pi};
use crate::error::{Error, Result};
use crate::quad::gauss_legendre_24;

const SERIES_EPS: f64 = 1.5e-17;
const SERIES_MAX_TERMS: usize = 500;
/// Orders this close to an integer take Y from its integral
/// representation instead of the J combination, which divides by sin πν.
const INTEGER_ORDER_TOL: f64 = 1e-3;
/// Above this |x| J and Y come from Schläfli's integrals, where the
/// ascending series would lose more than a couple of digits.
const SCHLAEFLI_FROM: f64 = 6.0;
/// Beyond this modulus I is taken from its large-argument expansion.
const I_ASYMPTOTIC_FROM: f64 = 40.0;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn is_negative_integer(nu: Complex64) -> Option<i64> {
    if nu.im == 0.0 && nu.re < 0.0 && nu.re.fract() == 0.0 {
        Some(nu.re as i64)
    } else {
        None
    }
}

fn parity(n: i64) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// |x| above which J and Y use the Hankel expansion.
fn hankel_crossover(nu: Complex64) -> f64 {
    14.0 + nu.norm_sqr() / 4.0
}

/// Modified Bessel function of the second kind K_ν(x), Re x > 0, any
/// complex order. Computed as the trapezoid sum of
/// ∫_0^∞ e^{-x cosh t} cosh(νt) dt, which is exponentially convergent and
/// needs no special treatment at integer order.
pub fn bessel_k(nu: Complex64, x: Complex64) -> Result<Complex64> {
    if !(x.re > 0.0) || !x.is_finite() || !nu.is_finite() {
        return Err(Error::domain("bessel_k", format!("need Re x > 0, got x = {x}")));
    }
    let nu = if nu.re < 0.0 { -nu } else { nu };
    let log_size = |t: f64| -x.re * t.cosh() + nu.re * t;
    let t_peak = (nu.re / x.re).asinh();
    let floor = log_size(t_peak) - 45.0;
    let mut t_end = t_peak + 0.5;
    while log_size(t_end) > floor {
        t_end += 0.5;
    }
    let f = |t: f64| {
        let e = -x * t.cosh();
        ((e + nu * t).exp() + (e - nu * t).exp()) * 0.5
    };

    let mut h = 0.25f64.min(t_end / 4.0);
    let n = (t_end / h).ceil() as usize;
    let mut sum = f(0.0) * 0.5;
    for k in 1..=n {
        sum += f(k as f64 * h);
    }
    let mut value = sum * h;
    let mut nodes = n;
    for level in 1..=14 {
        h *= 0.5;
        let mut fresh = zero();
        for k in 0..nodes {
            fresh += f((2 * k + 1) as f64 * h);
        }
        nodes *= 2;
        let next = value * 0.5 + fresh * h;
        let diff = (next - value).norm();
        value = next;
        if !value.is_finite() {
            return Err(Error::domain("bessel_k", format!("overflow at order {nu}, x = {x}")));
        }
        if level >= 2 && diff <= 1e-10 * value.norm() {
            return Ok(value);
        }
    }
    Err(Error::NonConvergence {
        what: "bessel_k trapezoid",
        work: nodes,
        err_est: f64::NAN,
    })
}

/// K_{n+1/2}(y) from its finite closed form.
pub fn bessel_k_half_integer(n: u32, y: Complex64) -> Complex64 {
    let mut coef = 1.0;
    let mut sum = Complex64::new(1.0, 0.0);
    let inv = (2.0 * y).inv();
    let mut pow = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let kf = k as f64;
        let nf = n as f64;
        coef *= (nf + kf + 1.0) * (nf - kf) / (kf + 1.0);
        pow *= inv;
        sum += pow * coef;
    }
    (PI / (2.0 * y)).sqrt() * (-y).exp() * sum
}

/// (x/2)^ν Σ_m (s x²/4)^m / (m! Γ(m+ν+1)) with s = ±1.
fn ascending(nu: Complex64, x: Complex64, sign: f64) -> Complex64 {
    if x == zero() {
        return if nu == zero() { Complex64::new(1.0, 0.0) } else { zero() };
    }
    let q = x * x * (0.25 * sign);
    let mut term = (nu * (x * 0.5).ln()).exp() * rgamma(nu + 1.0);
    let mut sum = term;
    for m in 0..SERIES_MAX_TERMS {
        let mf = m as f64;
        term *= q / ((mf + 1.0) * (nu + mf + 1.0));
        sum += term;
        let next = q.norm() / ((mf + 2.0) * (nu + mf + 2.0).norm());
        if term.norm() <= SERIES_EPS * sum.norm() && next < 0.5 {
            break;
        }
    }
    sum
}

/// Hankel's P and Q sums, stopped at the smallest term.
fn hankel_pq(nu: Complex64, x: Complex64) -> (Complex64, Complex64) {
    let mu = 4.0 * nu * nu;
    let mut a = Complex64::new(1.0, 0.0);
    let mut p = a;
    let mut q = zero();
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= (mu - odd * odd) / (8.0 * kf * x);
        let size = a.norm();
        if size > last || size == 0.0 {
            break;
        }
        last = size;
        let sgn = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += a * sgn;
        } else {
            q += a * sgn;
        }
        if size <= SERIES_EPS * p.norm() {
            break;
        }
    }
    (p, q)
}

fn hankel_jy(nu: Complex64, x: Complex64) -> (Complex64, Complex64) {
    let (p, q) = hankel_pq(nu, x);
    let chi = x - (nu * 0.5 + 0.25) * PI;
    let pre = (2.0 / (PI * x)).sqrt();
    let (c, s) = (chi.cos(), chi.sin());
    (pre * (p * c - q * s), pre * (p * s + q * c))
}

/// Bessel function of the first kind J_ν(x), principal branch.
pub fn bessel_j(nu: Complex64, x: Complex64) -> Result<Complex64> {
    if !x.is_finite() || !nu.is_finite() {
        return Err(Error::domain("bessel_j", "non-finite argument"));
    }
    if let Some(n) = is_negative_integer(nu) {
        return Ok(bessel_j(-nu, x)? * parity(n));
    }
    if x.norm() > hankel_crossover(nu) {
        if x.re < 0.0 {
            if let Some(n) = near_integer(nu, 0.0) {
                return Ok(hankel_jy(nu, -x).0 * parity(n));
            }
        }
        return Ok(hankel_jy(nu, x).0);
    }
    if prefers_schlaefli(nu, x) {
        return Ok(schlaefli_jy(nu, x).0);
    }
    if x == zero() && nu.re < 0.0 {
        return Err(Error::Pole {
            function: "bessel_j",
            at: x,
        });
    }
    Ok(ascending(nu, x, -1.0))
}

fn y_from_j(nu: Complex64, x: Complex64) -> Complex64 {
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    (ascending(nu, x, -1.0) * c - ascending(-nu, x, -1.0)) / s
}

/// Composite 24-point Gauss–Legendre over [a, b] in `panels` pieces.
fn gl_composite(f: impl Fn(f64) -> Complex64, a: f64, b: f64, panels: usize) -> Complex64 {
    let width = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * width;
            gauss_legendre_24()
                .integrate(|t| Ok(f(t)), lo, lo + width)
                .expect("integrand is finite")
        })
        .sum()
}

/// Schläfli's integrals, Re x > 0:
/// πJ_ν(x) = ∫_0^π cos(νθ − x sin θ) dθ − sin νπ ∫_0^∞ e^{−x sinh t − νt} dt,
/// πY_ν(x) = ∫_0^π sin(x sin θ − νθ) dθ − ∫_0^∞ (e^{νt} + e^{−νt} cos νπ) e^{−x sinh t} dt.
fn schlaefli_jy(nu: Complex64, x: Complex64) -> (Complex64, Complex64) {
    let panels = (x.norm() / 3.0).ceil() as usize + 2;
    // e^{i(x sin θ − νθ)} carries both oscillatory parts at once only for
    // real arguments, so the two are integrated separately.
    let cos_part = gl_composite(|th| (nu * th - x * th.sin()).cos(), 0.0, PI, panels);
    let sin_part = gl_composite(|th| (x * th.sin() - nu * th).sin(), 0.0, PI, panels);
    let log_size = |t: f64| -x.re * t.sinh() + nu.re.abs() * t;
    let mut end = 1.0;
    while log_size(end) > -42.0 {
        end += 0.5;
    }
    let width = 0.5f64.min(1.0 / x.re);
    let steps = (end / width).ceil() as usize;
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    let up = gl_composite(|t| (-x * t.sinh() + nu * t).exp(), 0.0, end, steps);
    let down = gl_composite(|t| (-x * t.sinh() - nu * t).exp(), 0.0, end, steps);
    ((cos_part - down * s) / PI, (sin_part - up - down * c) / PI)
}

/// Where the ascending series would cancel badly and Schläfli's integrals
/// are cheap and accurate.
fn prefers_schlaefli(nu: Complex64, x: Complex64) -> bool {
    x.re > 0.0 && x.norm() > SCHLAEFLI_FROM && nu.norm() < 0.5 * x.norm()
}

/// Bessel function of the second kind Y_ν(x), x ≠ 0, principal branch.
///
/// Orders within 1e-3 of an integer, and moderate arguments, use Schläfli's
/// integral when Re x > 0; elsewhere Y comes from J_{±ν} or the Hankel
/// expansion.
pub fn bessel_y(nu: Complex64, x: Complex64) -> Result<Complex64> {
    if x == zero() || !x.is_finite() || !nu.is_finite() {
        return Err(Error::domain("bessel_y", format!("need finite x ≠ 0, got {x}")));
    }
    if x.norm() > hankel_crossover(nu) && x.re > 0.0 {
        return Ok(hankel_jy(nu, x).1);
    }
    match near_integer(nu, INTEGER_ORDER_TOL) {
        Some(_) if x.re > 0.0 => Ok(schlaefli_jy(nu, x).1),
        Some(n) => Err(Error::domain(
            "bessel_y",
            format!("order {nu} is within 1e-3 of {n}; needs Re x > 0, got {x}"),
        )),
        None if prefers_schlaefli(nu, x) => Ok(schlaefli_jy(nu, x).1),
        None => Ok(y_from_j(nu, x)),
    }
}

/// Modified Bessel function of the first kind I_ν(x), principal branch.
pub fn bessel_i(nu: Complex64, x: Complex64) -> Result<Complex64> {
    if !x.is_finite() || !nu.is_finite() {
        return Err(Error::domain("bessel_i", "non-finite argument"));
    }
    if is_negative_integer(nu).is_some() {
        return bessel_i(-nu, x);
    }
    if x.norm() > I_ASYMPTOTIC_FROM {
        if x.re < 0.0 {
            if let Some(n) = near_integer(nu, 0.0) {
                return Ok(bessel_i(nu, -x)? * parity(n));
            }
        }
        let mu = 4.0 * nu * nu;
        let mut a = Complex64::new(1.0, 0.0);
        let mut alt = a;
        let mut plain = a;
        let mut last = f64::INFINITY;
        for k in 1..200 {
            let kf = k as f64;
            let odd = 2.0 * kf - 1.0;
            a *= (mu - odd * odd) / (8.0 * kf * x);
            let size = a.norm();
            if size > last || size == 0.0 {
                break;
            }
            last = size;
            alt += a * parity(k);
            plain += a;
            if size <= SERIES_EPS {
                break;
            }
        }
        let pre = (2.0 * PI * x).sqrt().inv();
        let i = Complex64::i();
        let sgn = if x.im >= 0.0 { 1.0 } else { -1.0 };
        let sub = i * sgn * (i * sgn * PI * nu).exp() * (-x).exp() * plain;
        return Ok(pre * (x.exp() * alt + sub));
    }
    if x == zero() && nu.re < 0.0 {
        return Err(Error::Pole {
            function: "bessel_i",
            at: x,
        });
    }
    Ok(ascending(nu, x, 1.0))
}
