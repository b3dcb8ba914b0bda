//! Invariant suite: parity, linearity, nonnegativity, closed-form
//! agreement, reduction identities, and determinism. Randomized checks use
//! fixed seeds; universal algebraic invariants also run under proptest.

use std::f64::consts::{FRAC_1_PI, PI};

use hspec_core::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

fn all_families() -> Vec<CatalogFamily> {
    vec![
        CatalogFamily::new(FamilyId::Sqrt, 1.7, None).unwrap(),
        CatalogFamily::new(FamilyId::Lorentzian, 0.6, None).unwrap(),
        CatalogFamily::new(FamilyId::RationalPeak, 2.3, None).unwrap(),
        CatalogFamily::new(FamilyId::Gaussian, 1.1, None).unwrap(),
        CatalogFamily::new(FamilyId::Valley, 0.9, Some(2.5)).unwrap(),
        CatalogFamily::new(FamilyId::Rectangle, 1.4, None).unwrap(),
        CatalogFamily::new(FamilyId::Triangle, 3.2, None).unwrap(),
    ]
}

#[test]
fn parity_on_a_dense_grid() {
    for family in all_families() {
        let pair = family.resolve().unwrap();
        for k in 0..1000 {
            let x = -20.0 + k as f64 * (40.0 / 999.0);
            assert_eq!(pair.f(-x), pair.f(x), "{family}: f parity broken at {x}");
            let g = pair.g(x);
            let diff = (pair.g(-x) + g).abs();
            assert!(
                diff <= 1e-13 * g.abs() + f64::MIN_POSITIVE,
                "{family}: g parity defect {diff} at {x}"
            );
        }
    }
}

#[test]
fn transform_scales_linearly_with_alpha() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    for base in all_families() {
        let unit = CatalogFamily::new(base.family_id, 1.0, base.b)
            .unwrap()
            .resolve()
            .unwrap();
        for &alpha in &[0.37, 2.9, 41.0] {
            let scaled = CatalogFamily::new(base.family_id, alpha, base.b)
                .unwrap()
                .resolve()
                .unwrap();
            for _ in 0..40 {
                let x: f64 = rng.random_range(-15.0..15.0);
                let expect = alpha * unit.g(x);
                let got = scaled.g(x);
                if expect.is_infinite() {
                    assert_eq!(got, expect);
                    continue;
                }
                assert!(
                    (got - expect).abs() <= 1e-14 * expect.abs(),
                    "{:?} alpha={alpha} x={x}: {got} vs {expect}",
                    base.family_id
                );
            }
        }
    }
}

/// Compensated-Simpson oracle of the defining integral
/// e^(-x²/2)·∫₀ˣ e^(t²/2) dt, independent of the production branches.
fn dawson_oracle(x: f64) -> f64 {
    let n = 40_000usize;
    let h = x / n as f64;
    let f = |t: f64| (0.5 * t * t).exp();
    let mut sum = f(0.0) + f(x);
    let mut comp = 0.0;
    for i in 1..n {
        let term = f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    (-0.5 * x * x).exp() * sum * h / 3.0
}

#[test]
fn dawson_matches_quadrature_oracle() {
    // Frozen from the oracle; re-derived here to keep the freeze honest.
    let frozen = 0.7247784590070763;
    assert!((dawson_oracle(1.0) - frozen).abs() < 1e-12);
    for &x in &[0.25, 1.0, 1.9, 2.4, 3.5, 5.0, 7.2] {
        let oracle = dawson_oracle(x);
        let got = dawson_scaled(x);
        assert!(
            ((got - oracle) / oracle).abs() < 1e-12,
            "x={x}: {got} vs oracle {oracle}"
        );
    }
    // Far tail against the asymptotic oracle 1/x + 1/x³ + 3/x⁵ + 15/x⁷.
    for &x in &[12.0_f64, 30.0, 50.0] {
        let oracle = 1.0 / x + 1.0 / (x * x * x) + 3.0 / x.powi(5) + 15.0 / x.powi(7);
        assert!(((dawson_scaled(x) - oracle) / oracle).abs() < 1e-6);
    }
}

#[test]
fn dawson_derivative_identity() {
    let h = 1e-5;
    for k in 0..=100 {
        let x = -5.0 + k as f64 * 0.1;
        let derivative = (dawson_scaled(x + h) - dawson_scaled(x - h)) / (2.0 * h);
        let identity = 1.0 - x * dawson_scaled(x);
        assert!(
            (derivative - identity).abs() < 1e-7,
            "x={x}: {derivative} vs {identity}"
        );
    }
}

#[test]
fn spectral_density_is_nonnegative() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0011);
    for family in all_families() {
        let pair = family.resolve().unwrap();
        for _ in 0..10_000 {
            let x: f64 = rng.random_range(-50.0..50.0);
            let s = spectral_density(&pair, x).value_or_zero();
            assert!(s >= 0.0, "{family}: S({x}) = {s}");
        }
    }
}

#[test]
fn exact_examples_agree_within_reported_error() {
    let spec = QuadratureSpec::default();
    type ClosedForm = fn(f64) -> f64;
    let cases: [(FamilyId, ClosedForm); 3] = [
        (FamilyId::Sqrt, |_| 1.0),
        (FamilyId::Lorentzian, |_| 1.0),
        (FamilyId::RationalPeak, |a| a / (2.0 + a)),
    ];
    for (id, closed) in cases {
        for &alpha in &[0.01, 0.1, 1.0, 10.0, 100.0] {
            let pair = CatalogFamily::new(id, alpha, None)
                .unwrap()
                .resolve()
                .unwrap();
            let report = spectral_integral(&pair, &spec);
            assert!(report.converged, "{id:?} alpha={alpha} did not converge");
            let diff = (report.integral - closed(alpha)).abs();
            assert!(
                diff <= report.err_estimate,
                "{id:?} alpha={alpha}: diff {diff:.3e} > err {:.3e}",
                report.err_estimate
            );
        }
    }
}

#[test]
fn density_reduction_identities() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0012);
    for &alpha in &[0.3, 1.0, 7.5] {
        let lor = CatalogFamily::new(FamilyId::Lorentzian, alpha, None)
            .unwrap()
            .resolve()
            .unwrap();
        let peak = CatalogFamily::new(FamilyId::RationalPeak, alpha, None)
            .unwrap()
            .resolve()
            .unwrap();
        for _ in 0..100 {
            let x: f64 = rng.random_range(-10.0..10.0);
            let s = spectral_density(&lor, x).value_or_zero();
            let x2 = x * x;
            let reduced = FRAC_1_PI * alpha / ((x2 - alpha).powi(2) + x2);
            assert!(
                (s - reduced).abs() <= 1e-12 * reduced,
                "lorentzian alpha={alpha} x={x}: {s} vs {reduced}"
            );

            let s = spectral_density(&peak, x).value_or_zero();
            let reduced = (4.0 / PI) * alpha / ((2.0 * x2 + 2.0 - alpha).powi(2) + 8.0 * alpha);
            assert!(
                (s - reduced).abs() <= 1e-12 * reduced,
                "rational-peak alpha={alpha} x={x}: {s} vs {reduced}"
            );
        }
    }
}

#[test]
fn full_line_equals_twice_half_line() {
    let spec = QuadratureSpec::default();
    for family in all_families() {
        if family.family_id == FamilyId::Sqrt {
            continue; // the non-decaying route is itself the halved substitution
        }
        let pair = family.resolve().unwrap();
        let full = spectral_integral(&pair, &spec);
        let half = spectral_integral_half_line(&pair, &spec);
        let diff = (full.integral - 2.0 * half.value).abs();
        let budget = full.err_estimate + 2.0 * half.err_estimate + 1e-12;
        assert!(
            diff <= budget,
            "{family}: full {} vs 2x half {} (budget {budget:.3e})",
            full.integral,
            2.0 * half.value
        );
    }
}

#[test]
fn observed_upper_bound_on_catalog_grid() {
    let spec = QuadratureSpec::default();
    for id in FamilyId::ALL {
        let b = id.requires_b().then_some(1.0);
        for &alpha in &[0.01, 0.1, 1.0, 10.0] {
            let pair = CatalogFamily::new(id, alpha, b).unwrap().resolve().unwrap();
            let report = spectral_integral(&pair, &spec);
            assert!(
                report.integral <= 1.0 + 1e-6,
                "{id:?} alpha={alpha}: I = {}",
                report.integral
            );
        }
    }
}

#[test]
fn summed_pair_transform_is_additive() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0013);
    let first = CatalogFamily::new(FamilyId::Rectangle, 1.0, None)
        .unwrap()
        .resolve()
        .unwrap();
    let second = CatalogFamily::new(FamilyId::Lorentzian, 0.4, None)
        .unwrap()
        .resolve()
        .unwrap();
    let sum = first.sum(&second);
    for _ in 0..100 {
        let x: f64 = rng.random_range(-5.0..5.0);
        let expect = first.g(x) + second.g(x);
        let got = sum.g(x);
        if !expect.is_finite() {
            assert_eq!(got, expect);
            continue;
        }
        assert!(
            (got - expect).abs() <= 1e-12 * expect.abs().max(1e-300),
            "x={x}: {got} vs {expect}"
        );
    }
}

#[test]
fn reproduction_is_deterministic() {
    let spec = QuadratureSpec::default();
    let first = reproduce_all(&spec).unwrap();
    let second = reproduce_all(&spec).unwrap();
    assert_eq!(first.len(), second.len());
    for (a, b) in first.iter().zip(second.iter()) {
        assert_eq!(a.title, b.title);
        assert_eq!(a.rows.len(), b.rows.len());
        for (ra, rb) in a.rows.iter().zip(b.rows.iter()) {
            assert_eq!(ra.label, rb.label);
            assert_eq!(ra.computed_value.to_bits(), rb.computed_value.to_bits());
            assert_eq!(ra.abs_diff.to_bits(), rb.abs_diff.to_bits());
            assert_eq!(ra.pass, rb.pass);
        }
    }
}

#[test]
fn rectangle_integral_is_monotone_decreasing() {
    let spec = QuadratureSpec::default();
    let shape = FamilyShape::new(FamilyId::Rectangle, None);
    let alphas = [1e-5, 0.1, 0.5, 0.65, 1.0, 5.0, 10.0];
    let sweep = sweep_alpha(shape, &alphas, &spec).unwrap();
    for w in sweep.points.windows(2) {
        assert!(
            w[1].integral < w[0].integral,
            "not decreasing: I({}) = {} vs I({}) = {}",
            w[0].alpha,
            w[0].integral,
            w[1].alpha,
            w[1].integral
        );
    }
}

proptest! {
    #[test]
    fn parity_for_arbitrary_points(
        x in -1e3_f64..1e3,
        alpha in 1e-3_f64..100.0,
    ) {
        for id in [FamilyId::Lorentzian, FamilyId::Triangle, FamilyId::Rectangle] {
            let pair = CatalogFamily::new(id, alpha, None)
                .unwrap()
                .resolve()
                .unwrap();
            prop_assert_eq!(pair.f(-x), pair.f(x));
            let g = pair.g(x);
            if g.is_finite() {
                prop_assert!((pair.g(-x) + g).abs() <= 1e-12 * g.abs() + f64::MIN_POSITIVE);
            }
        }
    }

    #[test]
    fn quadrature_integrates_constants_exactly(
        a in -100.0_f64..100.0,
        width in 1e-6_f64..200.0,
        c in -10.0_f64..10.0,
    ) {
        let spec = QuadratureSpec::default();
        let r = hspec_core::quadrature::integrate(&|_| c, a, a + width, &spec);
        prop_assert!(r.converged);
        prop_assert!((r.value - c * width).abs() <= 1e-12 * (c * width).abs() + 1e-14);
    }
}
