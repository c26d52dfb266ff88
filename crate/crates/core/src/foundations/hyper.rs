use num_complex::Complex64;

use super::near_integer;
use crate::error::{Error, Result};

const SERIES_EPS: f64 = 1.5e-17;
const DEFAULT_MAX_TERMS: usize = 200;

/// Generalized hypergeometric series pFq(a; b; x), summed directly.
///
/// Summation stops once the latest term is below machine precision relative
/// to the partial sum and the following term ratio is below 1/2.
pub fn hyp_pfq(a: &[Complex64], b: &[Complex64], x: Complex64, max_terms: usize) -> Result<Complex64> {
    for bj in b {
        if matches!(near_integer(*bj, 1e-14), Some(n) if n <= 0) {
            return Err(Error::Pole {
                function: "hypergeometric series",
                at: *bj,
            });
        }
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let ratio = |n: f64| -> Complex64 {
        let mut r = x / (n + 1.0);
        for ai in a {
            r *= *ai + n;
        }
        for bj in b {
            r /= *bj + n;
        }
        r
    };
    for n in 0..max_terms {
        let nf = n as f64;
        term *= ratio(nf);
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        if term.norm() <= SERIES_EPS * sum.norm() && ratio(nf + 1.0).norm() < 0.5 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series",
        work: max_terms,
        err_est: term.norm(),
    })
}

/// Confluent hypergeometric ₁F₁(a; c; x). Uses Kummer's transformation for
/// Re x < 0, |x| > 1 so the summed series has no cancellation.
pub fn hyp1f1(a: Complex64, c: Complex64, x: Complex64) -> Result<Complex64> {
    if x.re < 0.0 && x.norm() > 1.0 {
        Ok(x.exp() * hyp_pfq(&[c - a], &[c], -x, DEFAULT_MAX_TERMS)?)
    } else {
        hyp_pfq(&[a], &[c], x, DEFAULT_MAX_TERMS)
    }
}

/// ₀F₂(−; b1, b2; x).
pub fn hyp0f2(b1: Complex64, b2: Complex64, x: Complex64) -> Result<Complex64> {
    hyp_pfq(&[], &[b1, b2], x, DEFAULT_MAX_TERMS)
}

/// ₂F₂(a1, a2; b1, b2; x).
pub fn hyp2f2(a1: Complex64, a2: Complex64, b1: Complex64, b2: Complex64, x: Complex64) -> Result<Complex64> {
    hyp_pfq(&[a1, a2], &[b1, b2], x, DEFAULT_MAX_TERMS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn elementary_reductions() {
        // ₁F₁(a; a; x) = e^x
        for x in [c(0.7, 0.0), c(-3.0, 0.5), c(-12.0, 0.0)] {
            let v = hyp1f1(c(1.3, 0.2), c(1.3, 0.2), x).unwrap();
            assert!((v - x.exp()).norm() <= 1e-14 * x.exp().norm(), "{x}");
        }
        // ₁F₁(1; 2; x) = (e^x − 1)/x
        let x = c(2.5, -1.0);
        let v = hyp1f1(c(1.0, 0.0), c(2.0, 0.0), x).unwrap();
        assert!((v - (x.exp() - 1.0) / x).norm() < 1e-14);
    }

    #[test]
    fn zero_f_two_against_bessel_product() {
        // plain 60-term partial sum, well past convergence
        let (b1, b2, x) = (c(0.5, 0.0), c(1.2, 0.3), c(-7.0, 2.0));
        let mut term = c(1.0, 0.0);
        let mut sum = term;
        for n in 0..60 {
            let nf = n as f64;
            term *= x / ((b1 + nf) * (b2 + nf) * (nf + 1.0));
            sum += term;
        }
        assert!((hyp0f2(b1, b2, x).unwrap() - sum).norm() < 1e-14 * sum.norm().max(1.0));
    }

    #[test]
    fn terminating_series_and_poles() {
        // ₂F₂(−2, 1; 1, 1; x) = 1 − 2x + x²/2
        let x = c(0.3, 0.0);
        let v = hyp2f2(c(-2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), x).unwrap();
        assert!((v - (1.0 - 2.0 * x + x * x / 2.0)).norm() < 1e-15);
        assert!(matches!(hyp0f2(c(-1.0, 0.0), c(1.0, 0.0), x), Err(Error::Pole { .. })));
    }

    #[test]
    fn term_budget_exhaustion() {
        let r = hyp_pfq(&[c(1.0, 0.0)], &[c(1.0, 0.0)], c(500.0, 0.0), 20);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }
}
