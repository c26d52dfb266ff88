use std::f64::consts::PI;

use genbessel::foundations::{bessel_k, gamma};
use genbessel::kzw::*;
use genbessel::{c64, Complex64, Error, EvalConfig, Method};

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

type Pair = (f64, f64);

/// K_{z,w}(x) to 22 digits, from the Mellin–Barnes integral and from the
/// Gaussian-type integral in 30-digit arithmetic (they agree to 1e-26).
const ORACLE: [(Pair, Pair, Pair, Pair); 11] = [
    ((0.25, 0.0), (0.5, 0.0), (2.0, 0.0), (0.08284128459789250135406, 0.0)),
    (
        (0.3, 0.1),
        (0.5, 0.0),
        (2.4, 0.0),
        (0.04819854090728688717609, 0.0004417820664398122824357),
    ),
    (
        (0.0, 0.4),
        (0.3, 0.2),
        (1.6, 0.0),
        (0.1708583301150479082598, -0.0211950764402340685529),
    ),
    ((0.0, 0.0), (0.5, 0.0), (2.0, 0.0), (0.08191204102931383333511, 0.0)),
    (
        (1.2, 0.4),
        (0.7, 0.0),
        (3.0, 0.0),
        (0.0131900641063389741662, 0.0009785276244226836371732),
    ),
    ((0.3, 0.0), (0.5, 0.0), (0.2, 0.0), (1.792561591177032339242, 0.0)),
    ((-0.3, 0.0), (1.0, 0.0), (1.0, 0.0), (0.1770092489953811678615, 0.0)),
    ((0.5, 0.0), (2.0, 0.0), (4.0, 0.0), (0.007118926863320608525052, 0.0)),
    (
        (0.2, 0.0),
        (0.5, 0.0),
        (1.0, 0.3),
        (0.309990996786541406336, -0.1579720165328167545376),
    ),
    ((0.3, 0.0), (0.5, 0.0), (20.0, 0.0), (-1.696342207913427430256e-11, 0.0)),
    ((2.5, 0.0), (1.5, 0.0), (1.0, 0.0), (-1.579457810197286161424, 0.0)),
];

fn oracle_points() -> impl Iterator<Item = (KzwPoint, Complex64)> {
    ORACLE.iter().map(|&((zr, zi), (wr, wi), (xr, xi), (vr, vi))| {
        (
            KzwPoint::new(c64(zr, zi), c64(wr, wi), c64(xr, xi)).unwrap(),
            c64(vr, vi),
        )
    })
}

fn tolerance(m: Method) -> f64 {
    match m {
        Method::DoubleIntegral => 1e-6,
        Method::BassetZ0 | Method::LaplaceSeries => 1e-8,
        _ => 1e-10,
    }
}

#[test]
fn every_applicable_method_matches_the_oracle() {
    let cfg = EvalConfig::default();
    for (p, want) in oracle_points() {
        for m in applicable_methods(&p) {
            let e = eval_with(m, &p, &cfg).unwrap_or_else(|e| panic!("{m} at {p:?}: {e}"));
            let r = rel(e.value, want);
            assert!(r <= tolerance(m), "{m} at {p:?}: rel {r:e}");
        }
    }
}

#[test]
fn auto_matches_the_oracle() {
    let cfg = EvalConfig::default();
    for (p, want) in oracle_points() {
        let e = eval_auto(&p, &cfg).unwrap();
        assert!(e.converged, "{p:?}");
        assert!(rel(e.value, want) < 1e-11, "{p:?}: {:e}", rel(e.value, want));
    }
}

#[test]
fn reported_error_covers_actual_error() {
    let cfg = EvalConfig::default();
    for (p, want) in oracle_points() {
        for m in [Method::DoubleSum, Method::Integral, Method::MellinBarnes] {
            let e = eval_with(m, &p, &cfg).unwrap();
            if e.converged {
                let actual = (e.value - want).norm();
                assert!(
                    actual <= 10.0 * e.err_est + 1e-14 * want.norm(),
                    "{m} at {p:?}: {actual:e} vs {:e}",
                    e.err_est
                );
            }
        }
    }
}

#[test]
fn w_zero_reduces_to_bessel_k() {
    let cfg = EvalConfig::default();
    let z = c64(0.3, 0.1);
    let k = bessel_k(z, c64(2.4, 0.0)).unwrap();
    let p = KzwPoint::new(z, c64(0.0, 0.0), c64(2.4, 0.0)).unwrap();
    assert!(rel(eval_integral(&p, &cfg).unwrap().value, k) < 1e-10);
    assert!(rel(eval_mellin_barnes(&p, &cfg).unwrap().value, k) < 1e-9);
    assert!(rel(eval_bilateral_series(&p, &cfg).unwrap().value, k) < 1e-12);
    assert!(rel(eval_double_sum(&p, &cfg).unwrap().value, k) < 1e-15);

    let half = KzwPoint::real(0.5, 0.0, 2.0).unwrap();
    let exact = (PI / 4.0).sqrt() * (-2f64).exp();
    assert!(rel(eval_integral(&half, &cfg).unwrap().value, c64(exact, 0.0)) < 1e-12);

    let lap = KzwPoint::real(0.4, 0.0, 1.5).unwrap();
    let k = bessel_k(c64(0.4, 0.0), c64(1.5, 0.0)).unwrap();
    assert!(rel(eval_laplace_series(&lap, &cfg).unwrap().value, k) < 1e-8);

    let di = KzwPoint::real(0.3, 0.0, 1.0).unwrap();
    let k = bessel_k(c64(0.3, 0.0), c64(1.0, 0.0)).unwrap();
    assert!(rel(eval_double_integral(&di, &cfg).unwrap().value, k) < 1e-6);

    let b = eval_basset_z0(c64(0.0, 0.0), c64(1.0, 0.0), &cfg).unwrap();
    assert!(rel(b.value, bessel_k(c64(0.0, 0.0), c64(1.0, 0.0)).unwrap()) < 1e-8);
}

#[test]
fn closed_form_at_half_order() {
    let cfg = EvalConfig::default();
    for x in [0.5, 1.0, 2.0] {
        let p = KzwPoint::real(0.5, 0.0, 2.0 * x).unwrap();
        let want = (PI / (4.0 * x)).sqrt() * (-2.0 * x).exp();
        assert!(rel(eval_double_sum(&p, &cfg).unwrap().value, c64(want, 0.0)) < 1e-12);
    }
}

#[test]
fn evenness_in_z_and_w() {
    let cfg = EvalConfig::default();
    let p = KzwPoint::new(c64(0.2, 0.0), c64(0.0, 0.4), c64(3.0, 0.0)).unwrap();
    let flipped = KzwPoint::new(c64(-0.2, 0.0), c64(0.0, -0.4), c64(3.0, 0.0)).unwrap();
    for m in [
        Method::MellinBarnes,
        Method::DoubleSum,
        Method::Integral,
        Method::BilateralSeries,
    ] {
        let (a, b) = (
            eval_with(m, &p, &cfg).unwrap().value,
            eval_with(m, &flipped, &cfg).unwrap().value,
        );
        assert!(rel(a, b) < 1e-12, "{m}");
    }
    let p = KzwPoint::real(0.2, 0.7, 2.6).unwrap();
    let a = eval_bilateral_series(&p, &cfg).unwrap().value;
    let b = eval_bilateral_series(&p.with_w(c64(-0.7, 0.0)), &cfg).unwrap().value;
    assert_eq!(a, b);
    let a = eval_basset_z0(c64(0.0, 0.3), c64(2.4, 0.0), &cfg).unwrap().value;
    let b = eval_basset_z0(c64(0.0, -0.3), c64(2.4, 0.0), &cfg).unwrap().value;
    assert_eq!(a, b);
}

#[test]
fn outside_the_bilateral_strip() {
    let cfg = EvalConfig::default();
    let p = KzwPoint::new(c64(1.7, -0.3), c64(0.4, 0.0), c64(1.6, 0.0)).unwrap();
    let ds = eval_double_sum(&p, &cfg).unwrap().value;
    let mb = eval_mellin_barnes(&p, &cfg).unwrap().value;
    assert!(rel(ds, mb) < 1e-8);
    assert!(matches!(eval_bilateral_series(&p, &cfg), Err(Error::Domain { .. })));

    let p = KzwPoint::real(1.7, 0.4, 1.6).unwrap();
    let cmp = compare_methods(&p, &cfg);
    assert!(cmp.outcomes.iter().all(|o| o.method != Method::BilateralSeries));
    assert!(cmp.max_rel_discrepancy < 1e-7);
}

#[test]
fn comparison_at_the_reference_point() {
    let cfg = EvalConfig::default();
    let cmp = compare_methods(&KzwPoint::real(0.25, 0.5, 2.0).unwrap(), &cfg);
    assert!(cmp.outcomes.iter().filter(|o| o.result.is_ok()).count() >= 5);
    assert!(cmp.max_rel_discrepancy < 1e-7);

    let cmp = compare_methods(&KzwPoint::real(0.3, 0.0, 4.0).unwrap(), &cfg);
    let k = bessel_k(c64(0.3, 0.0), c64(4.0, 0.0)).unwrap();
    for o in &cmp.outcomes {
        assert!(rel(o.result.as_ref().unwrap().value, k) < 1e-8, "{}", o.method);
    }
}

#[test]
fn domain_restrictions() {
    let cfg = EvalConfig::default();
    assert!(KzwPoint::real(0.1, 0.2, -1.0).is_err());
    assert!(KzwPoint::new(c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 1.0)).is_err());
    assert!(KzwPoint::new(c64(f64::INFINITY, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)).is_err());
    let p = KzwPoint::real(0.6, 0.2, 1.0).unwrap();
    assert!(eval_bilateral_series(&p, &cfg).is_err());
    assert!(eval_basset_z0(c64(0.2, 0.0), c64(1.0, 0.0), &cfg).is_ok());
    assert!(eval_with(Method::BassetZ0, &p, &cfg).is_err());
    assert!(eval_laplace_series(&KzwPoint::real(-0.6, 0.2, 1.0).unwrap(), &cfg).is_err());
    assert!(eval_double_integral(&KzwPoint::real(-1.0, 0.2, 1.0).unwrap(), &cfg).is_err());
    assert!(asymptotic_small_x(&KzwPoint::real(-0.2, 0.2, 1e-3).unwrap(), &cfg).is_err());
    assert!(asymptotic_large_x(&p, 2, &cfg).is_err());
    let bad = EvalConfig {
        rel_tol: -1.0,
        ..Default::default()
    };
    assert!(eval_auto(&p, &bad).is_err());
}

#[test]
fn endpoint_behaviour_near_the_strip_edges() {
    let cfg = EvalConfig::default();
    let lap = eval_laplace_series(&KzwPoint::real(-0.4, 0.3, 1.0).unwrap(), &cfg).unwrap();
    assert!(lap.converged);
    let ds = eval_double_sum(&KzwPoint::real(-0.4, 0.3, 1.0).unwrap(), &cfg).unwrap();
    assert!(rel(lap.value, ds.value) < 1e-8);
    let di = eval_double_integral(&KzwPoint::real(-0.5, 0.3, 1.0).unwrap(), &cfg).unwrap();
    let ds = eval_double_sum(&KzwPoint::real(-0.5, 0.3, 1.0).unwrap(), &cfg).unwrap();
    assert!(rel(di.value, ds.value) < 1e-6);
}

#[test]
fn dispatcher_choices() {
    let cfg = EvalConfig::default();
    assert_eq!(
        eval_auto(&KzwPoint::real(0.25, 0.5, 2.0).unwrap(), &cfg)
            .unwrap()
            .method,
        Method::DoubleSum
    );
    let far = eval_auto(
        &KzwPoint::real(0.3, 0.5, 200.0).unwrap(),
        &EvalConfig::with_rel_tol(1e-3),
    )
    .unwrap();
    assert_eq!(far.method, Method::AsymptoticLargeX);
    // the leading term is only taken when it is good enough
    let p = KzwPoint::real(0.4, 0.5, 2e-4).unwrap();
    assert_eq!(eval_auto(&p, &cfg).unwrap().method, Method::DoubleSum);
    let loose = EvalConfig::with_rel_tol(0.1);
    assert_eq!(eval_auto(&p, &loose).unwrap().method, Method::AsymptoticSmallX);
    let p = KzwPoint::real(2.0, 0.5, 1e-5).unwrap();
    let near = eval_auto(&p, &EvalConfig::with_rel_tol(1e-8)).unwrap();
    assert_eq!(near.method, Method::AsymptoticSmallX);
    let exact = eval_with(Method::Integral, &p, &cfg).unwrap();
    assert!(rel(near.value, exact.value) < 1e-9);
    // With the default absolute floor any estimate beats tolerance out
    // there, since K itself is ~1e-90; without it the integral takes over.
    let tiny = eval_auto(&KzwPoint::real(0.3, 0.5, 200.0).unwrap(), &cfg).unwrap();
    assert_eq!(tiny.method, Method::AsymptoticLargeX);
    let mut strict = cfg;
    strict.abs_tol = 0.0;
    let e = eval_auto(&KzwPoint::real(0.3, 0.5, 200.0).unwrap(), &strict).unwrap();
    assert_eq!(e.method, Method::Integral);
}

#[test]
fn large_x_expansion() {
    let cfg = EvalConfig::default();
    let t = asymptotic_terms(c64(0.3, 0.0), c64(0.5, 0.0));
    assert_eq!(
        (t.p[0], t.r[0], t.q[0]),
        (c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0625, 0.0))
    );

    let exact = asymptotic_large_x(&KzwPoint::real(0.5, 0.0, 20.0).unwrap(), 1, &cfg).unwrap();
    let want = (PI / 40.0).sqrt() * (-20f64).exp();
    assert!(rel(exact.value, c64(want, 0.0)) < 1e-15);

    for z in [0.1, 0.7] {
        let x = 30.0;
        let a = asymptotic_large_x(&KzwPoint::real(z, 0.0, 2.0 * x).unwrap(), 1, &cfg).unwrap();
        let classical = 0.5 * (PI / x).sqrt() * (-2.0 * x).exp() * (1.0 + (4.0 * z * z - 1.0) / (16.0 * x));
        assert!(rel(a.value, c64(classical, 0.0)) < 1e-15);
    }

    let err = |x: f64| {
        let p = KzwPoint::real(0.3, 0.5, x).unwrap();
        let a = asymptotic_large_x(&p, 1, &cfg).unwrap().value;
        let d = eval_double_sum(&p, &cfg).unwrap().value;
        rel(a, d)
    };
    let (e50, e100) = (err(50.0), err(100.0));
    assert!(e50 < 1e-3);
    assert!((2.5..=6.0).contains(&(e50 / e100)), "ratio {}", e50 / e100);
}

#[test]
fn large_x_error_decays_like_x_to_minus_three_halves() {
    // The first omitted term is the x^{-3/2} part of Q, so relative to the
    // envelope the error times x^{3/2} stays bounded. Relative to the value
    // it is not monotone: cos(2w√x) + e^{-w²/4} nearly cancels at some x.
    let cfg = EvalConfig::default();
    for x in [12.5, 25.0, 50.0, 100.0, 200.0] {
        let p = KzwPoint::real(0.3, 0.5, 2.0 * x).unwrap();
        let a = asymptotic_large_x(&p, 1, &cfg).unwrap();
        let i = eval_integral(&p, &cfg).unwrap();
        let envelope = 0.25 * (PI / x).sqrt() * (-2.0 * x).exp();
        let scaled = (a.value - i.value).norm() / envelope * x.powf(1.5);
        assert!((1e-3..0.05).contains(&scaled), "x = {x}: {scaled:e}");
        assert!(a.err_est >= (a.value - i.value).norm());
    }
}

#[test]
fn small_x_leading_terms() {
    let cfg = EvalConfig::default();
    let x = 1e-3;
    let lead = asymptotic_small_x(&KzwPoint::real(0.4, 0.0, x).unwrap(), &cfg).unwrap();
    let classical = 0.5 * gamma(c64(0.4, 0.0)).unwrap() * (x / 2.0).powf(-0.4);
    assert!(rel(lead.value, classical) < 1e-14);

    let log = asymptotic_small_x(&KzwPoint::real(0.0, 0.0, 1e-4).unwrap(), &cfg).unwrap();
    assert!((log.value.re - 1e4f64.ln()).abs() < 1e-14);

    let p = KzwPoint::real(0.4, 0.5, x).unwrap();
    let ratio = eval_double_sum(&p, &cfg).unwrap().value.re / asymptotic_small_x(&p, &cfg).unwrap().value.re;
    assert!((0.99..=1.01).contains(&ratio), "ratio {ratio}");
}

#[test]
fn small_x_at_zero_order_is_offset_by_a_constant() {
    // K_{0,w}(x) + log x + (w²/2)₂F₂(1,1;3/2,2;−w²/4) tends to log 2 − γ,
    // not to zero; the leading term alone misses it.
    let cfg = EvalConfig::default();
    let p = KzwPoint::real(0.0, 0.5, 1e-4).unwrap();
    let exact = eval_double_sum(&p, &cfg).unwrap().value.re;
    let lead = asymptotic_small_x(&p, &cfg).unwrap();
    let offset = exact - lead.value.re;
    assert!((offset - (2f64.ln() - genbessel::foundations::EULER_GAMMA)).abs() < 1e-3);
    assert!(lead.err_est >= offset.abs());
}

#[test]
fn laplace_series_near_its_lower_edge() {
    // t^{z−1/2} is barely integrable at the origin here
    let cfg = EvalConfig::default();
    for z in [-0.45, -0.49, -0.499] {
        let p = KzwPoint::real(z, 0.5, 1.0).unwrap();
        let lap = eval_with(Method::LaplaceSeries, &p, &cfg).unwrap();
        let int = eval_with(Method::Integral, &p, &cfg).unwrap();
        assert!(rel(lap.value, int.value) < 1e-12, "z = {z}");
    }
}
