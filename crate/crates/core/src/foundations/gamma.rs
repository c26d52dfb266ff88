use std::f64::consts::PI;

use num_complex::Complex64;

use super::{near_integer, sin_pi};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_406;
const POLE_TOL: f64 = 1e-12;

/// log Γ(s) for Re s ≥ 1/2.
fn ln_gamma_right(s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// log sin(πs), stable for large |Im s|.
fn ln_sin_pi(s: Complex64) -> Complex64 {
    let i = Complex64::i();
    if s.im >= 0.0 {
        // sin πs = e^{-iπs} (e^{2iπs} − 1) / (2i)
        -i * PI * s + ((i * 2.0 * PI * s).exp() - 1.0).ln() - (2.0 * i).ln()
    } else {
        // sin πs = e^{iπs} (1 − e^{-2iπs}) / (2i)
        i * PI * s + (1.0 - (-i * 2.0 * PI * s).exp()).ln() - (2.0 * i).ln()
    }
}

fn check_pole(s: Complex64, function: &'static str) -> Result<()> {
    match near_integer(s, POLE_TOL) {
        Some(n) if n <= 0 => Err(Error::Pole { function, at: s }),
        _ => Ok(()),
    }
}

/// The gamma function.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    check_pole(s, "gamma")?;
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s).exp())
    } else if s.im.abs() < 30.0 {
        Ok(PI / (sin_pi(s) * ln_gamma_right(1.0 - s).exp()))
    } else {
        Ok(ln_gamma(s)?.exp())
    }
}

/// A logarithm of Γ(s); the branch is the principal one on the right
/// half-plane and otherwise only guaranteed modulo 2πi.
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    check_pole(s, "ln_gamma")?;
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s))
    } else {
        Ok(PI.ln() - ln_sin_pi(s) - ln_gamma_right(1.0 - s))
    }
}

/// 1/Γ(s), entire; exactly zero at the non-positive integers.
pub fn rgamma(s: Complex64) -> Complex64 {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if s.re >= 0.5 {
        (-ln_gamma_right(s)).exp()
    } else {
        sin_pi(s) * ln_gamma_right(1.0 - s).exp() / PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factorials() {
        let mut f = 1.0;
        for n in 1..20 {
            let g = gamma(c(n as f64, 0.0)).unwrap();
            assert!((g.re - f).abs() <= 1e-13 * f, "n={n}");
            f *= n as f64;
        }
    }

    #[test]
    fn half_integers_and_negative() {
        let sp = PI.sqrt();
        assert!((gamma(c(0.5, 0.0)).unwrap().re - sp).abs() < 1e-14);
        assert!((gamma(c(-0.5, 0.0)).unwrap().re + 2.0 * sp).abs() < 1e-13);
        assert!((gamma(c(-1.5, 0.0)).unwrap().re - 4.0 * sp / 3.0).abs() < 1e-13);
    }

    #[test]
    fn poles_and_reciprocal() {
        assert!(matches!(gamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma(c(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert!(gamma(c(-3.0 + 1e-6, 0.0)).is_ok());
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
        let s = c(0.3, 1.7);
        let prod = rgamma(s) * gamma(s).unwrap();
        assert!((prod - 1.0).norm() < 1e-14);
    }

    #[test]
    fn large_imaginary_part_matches_log_form() {
        let s = c(-0.3, 45.0);
        let direct = gamma(s).unwrap();
        let via_log = ln_gamma(s).unwrap().exp();
        assert!((direct - via_log).norm() <= 1e-12 * direct.norm());
        // |Γ(1/2 + it)|² = π / cosh(πt)
        let t = 40.0;
        let g = gamma(c(0.5, t)).unwrap();
        let expect = PI / (PI * t).cosh();
        assert!((g.norm_sqr() - expect).abs() <= 1e-12 * expect);
    }
}
