use std::f64::consts::PI;

use num_complex::Complex64;

use super::{divisor_kzw_series, gamma_zeta_singular_set, regularized, IdentityParams, IdentityReport, SeriesSide};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::foundations::{gamma, hyp1f1, zeta, EULER_GAMMA};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn half() -> Complex64 {
    Complex64::new(0.5, 0.0)
}

fn real_pow(base: f64, p: Complex64) -> Complex64 {
    (p * base.ln()).exp()
}

fn positive(function: &'static str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(function, format!("need {name} > 0, got {v}")))
    }
}

/// Right side of the generalized Ramanujan–Guinand formula at a point where
/// every factor is finite:
///
/// ¼Γ(z/2)ζ(z){b^{(1−z)/2}₁F₁((1−z)/2;½;w²/4) − a^{(1−z)/2}₁F₁((1−z)/2;½;−w²/4)}
/// + ¼Γ(−z/2)ζ(−z){b^{(1+z)/2}₁F₁((1+z)/2;½;w²/4) − a^{(1+z)/2}₁F₁((1+z)/2;½;−w²/4)}.
pub fn rg_general_rhs(z: Complex64, w: Complex64, a: f64, b: f64) -> Result<Complex64> {
    let u = w * w * 0.25;
    let bracket = |s: Complex64| -> Result<Complex64> {
        let e = (1.0 - s) * 0.5;
        Ok(real_pow(b, e) * hyp1f1(e, half(), u)? - real_pow(a, e) * hyp1f1(e, half(), -u)?)
    };
    let first = gamma(z * 0.5)? * zeta(z)? * bracket(z)?;
    let second = gamma(-z * 0.5)? * zeta(-z)? * bracket(-z)?;
    Ok((first + second) * 0.25)
}

/// Σ_{n≥1} [Σ_{k<n} 2/(2k+1)] uⁿ/n!: the a-derivative of ₁F₁(a;½;u) at
/// a = ½, up to sign.
fn harmonic_odd_series(u: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    let mut harmonic = 0.0;
    for n in 1..400 {
        harmonic += 2.0 / (2.0 * (n - 1) as f64 + 1.0);
        power = power * u / n as f64;
        let term = power * harmonic;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && (n as f64) > u.norm() {
            break;
        }
    }
    sum
}

/// z → 0 limit of the Γζ boundary terms of the modular form:
/// (1/α)[(γ − log 4πα) e^{w²/4} + Σ_{n≥1} (Σ_{k<n} 2/(2k+1)) (w²/4)ⁿ/n!].
pub fn koshliakov_boundary(w: Complex64, alpha: f64) -> Complex64 {
    let u = w * w * 0.25;
    let c = EULER_GAMMA - (4.0 * PI * alpha).ln();
    (u.exp() * c + harmonic_odd_series(u)) / alpha
}

/// The same limit truncated after the first power of w²:
/// (1/α)[(γ − log 4πα)(1 + w²/4) + w²/2].
pub fn koshliakov_boundary_first_order(w: Complex64, alpha: f64) -> Complex64 {
    let u = w * w * 0.25;
    let c = EULER_GAMMA - (4.0 * PI * alpha).ln();
    ((1.0 + u) * c + u * 2.0) / alpha
}

fn modular_boundary_raw(z: Complex64, w: Complex64, alpha: f64) -> Result<Complex64> {
    let u = w * w * 0.25;
    let term = |s: Complex64| -> Result<Complex64> {
        Ok(gamma(s * 0.5)?
            * zeta(s)?
            * real_pow(PI, -s * 0.5)
            * real_pow(alpha, s * 0.5 - 1.0)
            * hyp1f1((1.0 - s) * 0.5, half(), u)?)
    };
    Ok(term(z)? + term(-z)?)
}

/// Γζ boundary terms of the modular form,
/// Γ(z/2)ζ(z)π^{−z/2}α^{z/2−1}₁F₁((1−z)/2;½;w²/4) + (z → −z),
/// continued across z = 0 and the even integers. Poles at z = ±1.
pub fn modular_boundary(z: Complex64, w: Complex64, alpha: f64) -> Result<Complex64> {
    positive("modular_boundary", "alpha", alpha)?;
    if (z - 1.0).norm() < 1e-10 || (z + 1.0).norm() < 1e-10 {
        return Err(Error::Pole {
            function: "modular_boundary",
            at: z,
        });
    }
    if z.norm() < 1e-8 {
        return Ok(koshliakov_boundary(w, alpha));
    }
    regularized(
        |s| modular_boundary_raw(s, w, alpha),
        z,
        &gamma_zeta_singular_set(z, false),
    )
}

/// F(z, w, α) = √α (4 e^{−w²/4} Σ σ_{−z}(n) n^{z/2} K_{z/2,iw}(2nπα) − boundary),
/// the quantity invariant under (w, α) → (iw, 1/α). Returns the series side
/// as well.
pub fn modular_side(z: Complex64, w: Complex64, alpha: f64, cfg: &EvalConfig) -> Result<(Complex64, SeriesSide)> {
    positive("modular_side", "alpha", alpha)?;
    let boundary = modular_boundary(z, w, alpha)?;
    let series = divisor_kzw_series(z, I * w, PI * alpha, cfg)?;
    let gauss = (-w * w * 0.25).exp();
    let value = (series.value() * gauss * 4.0 - boundary) * alpha.sqrt();
    Ok((value, series))
}

fn declared_tolerance(w: Complex64) -> f64 {
    if w.norm() == 0.0 {
        1e-9
    } else {
        1e-8
    }
}

/// √a Σ σ_{−z}(n) n^{z/2} e^{−w²/4} K_{z/2,iw}(2na) − √b Σ … e^{w²/4} K_{z/2,w}(2nb)
/// against the Γζ₁F₁ brackets, with b = π²/a. Valid for every z; at
/// z = ±1 the vanishing bracket is resolved as a limit.
pub fn check_rg_general(z: Complex64, w: Complex64, a: f64, cfg: &EvalConfig) -> Result<IdentityReport> {
    positive("check_rg_general", "a", a)?;
    cfg.validate()?;
    let b = PI * PI / a;
    let u = w * w * 0.25;
    let left = divisor_kzw_series(z, I * w, a, cfg)?;
    let right = divisor_kzw_series(z, w, b, cfg)?;
    let lhs = left.value() * (-u).exp() * a.sqrt() - right.value() * u.exp() * b.sqrt();
    let rhs = regularized(|s| rg_general_rhs(s, w, a, b), z, &gamma_zeta_singular_set(z, true))?;
    let params = IdentityParams {
        z: Some(z),
        w: Some(w),
        a: Some(a),
        b: Some(b),
        ..Default::default()
    };
    Ok(IdentityReport::new(
        "rg-general",
        params,
        lhs,
        rhs,
        declared_tolerance(w),
        left.work + right.work,
        cfg,
    )
    .with_aux("tail_bound", Complex64::new(left.tail_bound + right.tail_bound, 0.0)))
}

/// F(z, w, α) against F(z, iw, 1/α) for z ∉ {−1, 1}.
pub fn check_rg_modular(z: Complex64, w: Complex64, alpha: f64, cfg: &EvalConfig) -> Result<IdentityReport> {
    positive("check_rg_modular", "alpha", alpha)?;
    cfg.validate()?;
    if (z - 1.0).norm() < 1e-10 || (z + 1.0).norm() < 1e-10 {
        return Err(Error::domain(
            "check_rg_modular",
            format!("z = {z} is excluded (z = ±1)"),
        ));
    }
    let beta = 1.0 / alpha;
    let (lhs, left) = modular_side(z, w, alpha, cfg)?;
    let (rhs, right) = modular_side(z, I * w, beta, cfg)?;
    let params = IdentityParams {
        z: Some(z),
        w: Some(w),
        alpha: Some(alpha),
        beta: Some(beta),
        ..Default::default()
    };
    Ok(IdentityReport::new(
        "rg-modular",
        params,
        lhs,
        rhs,
        declared_tolerance(w),
        left.work + right.work,
        cfg,
    )
    .with_aux("tail_bound", Complex64::new(left.tail_bound + right.tail_bound, 0.0)))
}

/// The z = 0 transformation with divisor counts d(n):
/// √α{4Σ d(n) e^{−w²/4} K_{0,iw}(2nπα) − B(w, α)} = √β{4Σ d(n) e^{w²/4} K_{0,w}(2nπβ) − B(iw, β)},
/// with B the exact limit [`koshliakov_boundary`]. The residual obtained
/// with the first-order boundary terms is kept as `first_order_residual`.
pub fn check_koshliakov_w(w: Complex64, alpha: f64, cfg: &EvalConfig) -> Result<IdentityReport> {
    positive("check_koshliakov_w", "alpha", alpha)?;
    cfg.validate()?;
    let beta = 1.0 / alpha;
    let zero = Complex64::new(0.0, 0.0);
    let u = w * w * 0.25;
    let left = divisor_kzw_series(zero, I * w, PI * alpha, cfg)?;
    let right = divisor_kzw_series(zero, w, PI * beta, cfg)?;
    let left_sum = left.value() * (-u).exp() * 4.0;
    let right_sum = right.value() * u.exp() * 4.0;
    let lhs = (left_sum - koshliakov_boundary(w, alpha)) * alpha.sqrt();
    let rhs = (right_sum - koshliakov_boundary(I * w, beta)) * beta.sqrt();
    let lhs1 = (left_sum - koshliakov_boundary_first_order(w, alpha)) * alpha.sqrt();
    let rhs1 = (right_sum - koshliakov_boundary_first_order(I * w, beta)) * beta.sqrt();
    let first_order = super::rel_diff(lhs1, rhs1, cfg.abs_tol);
    let params = IdentityParams {
        w: Some(w),
        alpha: Some(alpha),
        beta: Some(beta),
        ..Default::default()
    };
    Ok(IdentityReport::new(
        "koshliakov-w",
        params,
        lhs,
        rhs,
        declared_tolerance(w),
        left.work + right.work,
        cfg,
    )
    .with_aux("first_order_lhs", lhs1)
    .with_aux("first_order_rhs", rhs1)
    .with_aux("first_order_residual", Complex64::new(first_order, 0.0)))
}
