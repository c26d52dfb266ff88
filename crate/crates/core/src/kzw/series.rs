use num_complex::Complex64;

use super::KzwPoint;
use crate::config::{EvalConfig, Evaluation, Method};
use crate::error::{Error, Result};
use crate::foundations::{bessel_i, bessel_j, bessel_k};

const EPS: f64 = 1e-17;
const ROUNDING: f64 = 2.2e-16;

/// Scaled Bessel values x'^{|j|} K_{z+j}(2x') for integer j, extended on
/// demand by the upward three-term recurrence in each direction. The
/// scaling keeps the ladder finite for tiny x'.
pub(crate) struct KLadder {
    z: Complex64,
    xp: Complex64,
    up: Vec<Complex64>,
    down: Vec<Complex64>,
}

impl KLadder {
    pub(crate) fn new(z: Complex64, xp: Complex64) -> Result<Self> {
        let arg = xp * 2.0;
        let k0 = bessel_k(z, arg)?;
        let kp = bessel_k(z + 1.0, arg)?;
        let km = bessel_k(1.0 - z, arg)?;
        Ok(KLadder {
            z,
            xp,
            up: vec![k0, xp * kp],
            down: vec![k0, xp * km],
        })
    }

    pub(crate) fn xp(&self) -> Complex64 {
        self.xp
    }

    /// x'^{|j|} K_{z+j}(2x')
    pub(crate) fn scaled(&mut self, j: i64) -> Complex64 {
        let xp2 = self.xp * self.xp;
        let (rungs, order) = if j >= 0 {
            (&mut self.up, self.z)
        } else {
            (&mut self.down, -self.z)
        };
        let idx = j.unsigned_abs() as usize;
        while rungs.len() <= idx {
            let k = rungs.len() - 1;
            let next = xp2 * rungs[k - 1] + (order + k as f64) * rungs[k];
            rungs.push(next);
        }
        rungs[idx]
    }

    /// K_{z+j}(2x')
    pub(crate) fn unscaled(&mut self, j: i64) -> Complex64 {
        self.scaled(j) / self.xp.powi(j.abs() as i32)
    }
}

/// Coefficients A_d of the wedge-grouped double sum
///
/// Σ_{n,m≥0} (−w²x')^{n+m} K_{n−m+z+shift}(2x') / ((2n)!(2m)!) = Σ_d A_d w^{2d}.
///
/// Summation stops once A_d ω^{2d} (1+2d)^power is negligible for two
/// consecutive degrees and shrinking geometrically; `power` leaves room for
/// differentiating the series in w. Also returns Σ |partial terms| ω^{2d}
/// for rounding estimates.
pub(crate) fn wedge_coefficients(
    ladder: &mut KLadder,
    shift: i64,
    omega: f64,
    power: i32,
    max_terms: usize,
) -> Result<(Vec<Complex64>, f64)> {
    let xp = ladder.xp();
    let mut inv_even_fact = vec![1.0f64];
    let mut coeffs = Vec::new();
    let mut magnitude = 0.0;
    let mut largest = 0.0f64;
    let mut quiet = 0;
    let mut prev = f64::INFINITY;
    let min_degree = (power / 2 + 2) as usize;
    for d in 0..max_terms {
        while inv_even_fact.len() <= d {
            let k = inv_even_fact.len() as f64;
            let last = inv_even_fact[inv_even_fact.len() - 1];
            inv_even_fact.push(last / ((2.0 * k - 1.0) * (2.0 * k)));
        }
        let mut a = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0;
        for n in 0..=d {
            let j = 2 * n as i64 - d as i64 + shift;
            let lift = d as i32 - j.abs() as i32;
            let term = ladder.scaled(j) * xp.powi(lift) * (inv_even_fact[n] * inv_even_fact[d - n]);
            abs_sum += term.norm();
            a += term;
        }
        if d % 2 == 1 {
            a = -a;
        }
        coeffs.push(a);
        let om = omega.powi(2 * d as i32);
        magnitude += abs_sum * om;
        let size = a.norm() * om * (1.0 + 2.0 * d as f64).powi(power);
        if !size.is_finite() {
            return Err(Error::NonConvergence {
                what: "double sum",
                work: d,
                err_est: f64::INFINITY,
            });
        }
        largest = largest.max(size);
        if size <= EPS * largest {
            quiet += 1;
        } else {
            quiet = 0;
        }
        let shrinking = size <= 0.5 * prev || size == 0.0;
        prev = size;
        if d >= min_degree && quiet >= 2 && shrinking {
            return Ok((coeffs, magnitude));
        }
    }
    Err(Error::NonConvergence {
        what: "double sum",
        work: max_terms,
        err_est: prev,
    })
}

/// K_{z,w}(x) as the double series over the wedge n + m = d.
pub fn eval_double_sum(p: &KzwPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    let xp = p.x() * 0.5;
    let w = p.w();
    let mut ladder = KLadder::new(p.z(), xp)?;
    let omega = w.norm();
    let (coeffs, magnitude) = wedge_coefficients(&mut ladder, 0, omega, 0, cfg.max_series_terms)?;
    let w2 = w * w;
    let value = coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, a| acc * w2 + a);
    let d = coeffs.len();
    let tail: f64 = coeffs[d.saturating_sub(2)..]
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm() * omega.powi(2 * (d - 2 + i) as i32))
        .sum();
    let err = tail + ROUNDING * magnitude * 4.0;
    let work = d * (d + 1) / 2;
    Ok(Evaluation::assess(value, err, Method::DoubleSum, work, cfg))
}

/// K_{z,w}(x) as the bilateral series in K_{z+n}(x)(I_{2n} + J_{2n}), for
/// −1/2 < Re z < 1/2.
pub fn eval_bilateral_series(p: &KzwPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    let z = p.z();
    if !(z.re > -0.5 && z.re < 0.5) {
        return Err(Error::domain(
            "eval_bilateral_series",
            format!("need -1/2 < Re z < 1/2, got z = {z}"),
        ));
    }
    let xp = p.x() * 0.5;
    let mut ladder = KLadder::new(z, xp)?;
    let mut zeta = 2.0 * p.w() * xp.sqrt();
    // I_{2n} and J_{2n} are even, so keep the argument in the right half-plane
    if zeta.re < 0.0 {
        zeta = -zeta;
    }
    let ij = |n: i64| -> Result<Complex64> {
        let order = Complex64::new(2.0 * n as f64, 0.0);
        Ok(bessel_i(order, zeta)? + bessel_j(order, zeta)?)
    };
    let mut sum = ladder.unscaled(0) * ij(0)? * 0.5;
    let mut magnitude = sum.norm();
    let mut quiet = 0;
    let mut last = sum.norm();
    for n in 1..cfg.max_series_terms as i64 {
        let k_pair = ladder.unscaled(n) + ladder.unscaled(-n);
        let sign = if n % 2 == 0 { 0.5 } else { -0.5 };
        let term = k_pair * ij(n)? * sign;
        sum += term;
        magnitude += term.norm();
        if !sum.is_finite() {
            break;
        }
        if term.norm() <= EPS * sum.norm() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        let shrinking = term.norm() <= last;
        last = term.norm();
        if n >= 2 && quiet >= 2 && shrinking {
            let err = 2.0 * last + ROUNDING * magnitude * 4.0;
            return Ok(Evaluation::assess(
                sum,
                err,
                Method::BilateralSeries,
                2 * n as usize + 1,
                cfg,
            ));
        }
    }
    Err(Error::NonConvergence {
        what: "bilateral series",
        work: cfg.max_series_terms,
        err_est: last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_matches_direct_values() {
        let z = Complex64::new(0.3, 0.2);
        let xp = Complex64::new(0.8, 0.1);
        let mut ladder = KLadder::new(z, xp).unwrap();
        for j in [-6i64, -3, -1, 0, 2, 5, 7] {
            let direct = bessel_k(z + j as f64, xp * 2.0).unwrap();
            let lad = ladder.unscaled(j);
            assert!((lad - direct).norm() <= 1e-13 * direct.norm(), "j={j}");
        }
    }

    #[test]
    fn ladder_survives_tiny_argument() {
        let mut ladder = KLadder::new(Complex64::new(0.4, 0.0), Complex64::new(1e-6, 0.0)).unwrap();
        assert!(ladder.scaled(30).is_finite());
        assert!(ladder.scaled(-30).is_finite());
    }

    #[test]
    fn w_zero_is_plain_bessel() {
        let cfg = EvalConfig::default();
        let p = KzwPoint::real(0.7, 0.0, 1.3).unwrap();
        let e = eval_double_sum(&p, &cfg).unwrap();
        let k = bessel_k(Complex64::new(0.7, 0.0), Complex64::new(1.3, 0.0)).unwrap();
        assert_eq!(e.value, k);
        let e = eval_bilateral_series(&p.with_z(Complex64::new(0.2, 0.0)), &cfg).unwrap();
        let k = bessel_k(Complex64::new(0.2, 0.0), Complex64::new(1.3, 0.0)).unwrap();
        assert!((e.value - k).norm() < 1e-15 * k.norm());
    }

    #[test]
    fn bilateral_strip() {
        let cfg = EvalConfig::default();
        let p = KzwPoint::real(0.5, 0.3, 1.0).unwrap();
        assert!(matches!(eval_bilateral_series(&p, &cfg), Err(Error::Domain { .. })));
    }
}
