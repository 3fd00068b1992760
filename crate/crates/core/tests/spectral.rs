mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use common::{assert_close, reference_profile, integral};
use proptest::prelude::*;
use sgbc::controllers::canonical_shape;
use sgbc::spectral::{basis, sine_overlap, ModalProfile, Shape, TabulatedShape};

#[test]
fn caption_norm_is_parseval_sum() {
    let u = reference_profile(64);
    assert_close(u.l2_norm(), 5.0106f64.sqrt(), 1e-15, "caption norm");
    assert_close(u.l2_norm(), 2.238437, 5e-7, "caption norm digits");
    assert_eq!(ModalProfile::zeros(5).l2_norm(), 0.0);
    assert_eq!(ModalProfile::new(vec![3.0]).unwrap().l2_norm(), 3.0);
}

#[test]
fn evaluation_matches_caption_formula() {
    let u = reference_profile(64);
    let x = 0.25;
    let direct = SQRT_2 * (PI * x).sin()
        + 2.0 * SQRT_2 * (2.0 * PI * x).sin()
        + 0.1 * SQRT_2 * (3.0 * PI * x).sin()
        + (37..=42)
            .map(|k| 0.01 * SQRT_2 * (k as f64 * PI * x).sin())
            .sum::<f64>();
    assert_close(u.evaluate(x).unwrap(), direct, 1e-14, "u(1/4)");
    assert_eq!(u.evaluate(0.0).unwrap(), 0.0);
    assert_close(
        ModalProfile::new(vec![1.0]).unwrap().evaluate(0.5).unwrap(),
        SQRT_2,
        1e-15,
        "phi_1(1/2)",
    );
    assert!(u.evaluate(1.5).is_err());
    assert!(u.evaluate(-0.1).is_err());
}

#[test]
fn overlap_examples() {
    assert_close(sine_overlap(PI, 1), 0.5, 1e-15, "resonant");
    assert_close(sine_overlap(2.0 * PI, 1), 0.0, 1e-15, "orthogonal");
    let oracle = integral(|x| (20.0 * x).sin() * (PI * x).sin());
    assert_close(sine_overlap(20.0, 1), oracle, 1e-10, "overlap(20, 1)");
}

#[test]
fn overlap_is_continuous_at_resonance() {
    for n in 1..6 {
        let w = n as f64 * PI;
        for eps in [1e-10, 1e-8, 1e-6] {
            assert_close(sine_overlap(w + eps, n), sine_overlap(w, n), 1e-6, "right");
            assert_close(sine_overlap(w - eps, n), sine_overlap(w, n), 1e-6, "left");
        }
    }
}

#[test]
fn projection_examples() {
    let lin = Shape::linear().project(1).unwrap();
    assert_close(lin.coeffs()[0], SQRT_2 / PI, 1e-15, "linear");
    let s = Shape::sine(2.0 * PI).unwrap().project(3).unwrap();
    assert_close(s.coeffs()[0], 0.0, 1e-15, "sin 2πx, n=1");
    assert_close(s.coeffs()[1], FRAC_1_SQRT_2, 1e-15, "sin 2πx, n=2");
    assert_close(s.coeffs()[2], 0.0, 1e-15, "sin 2πx, n=3");
    let h = Shape::sinh(PI).unwrap().project(2).unwrap();
    for n in 1..=2 {
        let oracle = integral(|x| (PI * x).sinh() * basis(n, x));
        assert_close(h.coeffs()[n - 1], oracle, 1e-10, "sinh(πx) projection");
    }
}

#[test]
fn norm_examples() {
    assert_close(Shape::linear().l2_norm(), 0.5773503, 1e-7, "linear");
    assert_close(Shape::sine(PI).unwrap().l2_norm(), FRAC_1_SQRT_2, 1e-15, "sin πx");
    let s20 = Shape::sine(20.0).unwrap().l2_norm();
    assert_close(s20, (40.0 - 40f64.sin()).sqrt() / (2.0 * 20f64.sqrt()), 1e-15, "sin 20x");
    assert_close(s20, integral(|x| (20.0 * x).sin().powi(2)).sqrt(), 1e-10, "sin 20x quad");
    assert_close(s20, 0.7004899, 1e-7, "sin 20x digits");
    assert_eq!(Shape::sine(0.0).unwrap().l2_norm(), 0.0);
    assert_eq!(Shape::sinh(0.0).unwrap().l2_norm(), 0.0);
    for b in [1e-3, 0.05, 0.099, 0.1, 0.5, 3.0] {
        let oracle = integral(|x| (b * x).sinh().powi(2)).sqrt();
        assert_close(Shape::sinh(b).unwrap().l2_norm(), oracle, 1e-12 * oracle.max(1.0), "sinh norm");
        let oracle = integral(|x| (b * x).sin().powi(2)).sqrt();
        assert_close(Shape::sine(b).unwrap().l2_norm(), oracle, 1e-12 * oracle.max(1.0), "sine norm");
    }
    assert!(Shape::sinh(351.0).is_err());
}

#[test]
fn residual_examples() {
    let s = Shape::sine(20.0).unwrap();
    assert_eq!(s.residual_shape(1.0, 0.0, 20.0).unwrap().norm(), 0.0);
    assert_eq!(Shape::linear().residual_shape(1.0, 4.0, 2.0).unwrap().norm(), 0.0);
    let r = Shape::sine(PI).unwrap().residual_shape(1.0, 0.0, 2.0).unwrap();
    assert_close(r.norm(), (4.0 - PI * PI).abs() / SQRT_2, 1e-14, "closed form");
    let oracle = integral(|x| {
        let v = -PI * PI * (PI * x).sin() - (0.0 - 4.0) * (PI * x).sin();
        v * v
    })
    .sqrt();
    assert_close(r.norm(), oracle, 1e-10, "quadrature");
    let tab = Shape::tabulated(TabulatedShape::from_fn(|x| x * x).unwrap());
    assert!(tab.residual_shape(1.0, 0.0, 1.0).is_err());
    assert!(tab.second_derivative(0.5).is_err());
}

#[test]
fn tabulated_matches_closed_form() {
    let closed = Shape::sine(7.3).unwrap();
    let tab = Shape::tabulated(TabulatedShape::from_fn(|x| (7.3 * x).sin()).unwrap());
    let a = closed.project(12).unwrap();
    let b = tab.project(12).unwrap();
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        assert_close(*x, *y, 1e-12, "tabulated projection");
    }
    assert_close(tab.l2_norm(), closed.l2_norm(), 1e-12, "tabulated norm");
    for x in [0.0, 0.013, 0.5, 0.77, 1.0] {
        assert_close(tab.value(x), closed.value(x), 1e-10, "tabulated value");
    }
}

#[test]
fn canonical_shapes_vanish_at_zero() {
    for s in [Shape::sine(3.0).unwrap(), Shape::sinh(2.0).unwrap(), Shape::linear()] {
        assert_eq!(s.value(0.0), 0.0);
    }
}

fn profile(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, 1..max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parseval(c in profile(200)) {
        let u = ModalProfile::new(c.clone()).unwrap();
        let sum: f64 = c.iter().map(|x| x * x).sum();
        prop_assert!((u.l2_norm().powi(2) - sum).abs() <= 1e-12 * sum.max(1.0));
        // and against the pointwise integral for short profiles
        if c.len() <= 8 {
            let quad = integral(|x| u.evaluate(x).unwrap().powi(2));
            prop_assert!((quad - sum).abs() <= 1e-9 * sum.max(1.0));
        }
    }

    #[test]
    fn overlap_against_quadrature(w in 0.1f64..=60.0, n in 1usize..40) {
        let oracle = integral(|x| (w * x).sin() * (n as f64 * PI * x).sin());
        prop_assert!((sine_overlap(w, n) - oracle).abs() <= 1e-9);
    }

    #[test]
    fn orthonormality(n_modes in 1usize..40, pick in 0usize..1000) {
        let n = pick % n_modes + 1;
        let proj = Shape::sine(n as f64 * PI).unwrap().project(n_modes).unwrap();
        for (i, c) in proj.coeffs().iter().enumerate() {
            let expected = if i + 1 == n { 1.0 } else { 0.0 };
            prop_assert!((c * SQRT_2 - expected).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn canonical_annihilation(p in 0.05f64..20.0, q in -50.0f64..50.0, w in 0.1f64..30.0) {
        let s = canonical_shape(p, q, w).unwrap();
        let res = s.residual_shape(p, q, w).unwrap();
        prop_assert!(res.norm() < 1e-12, "{s} residual {}", res.norm());
        prop_assert_eq!(s.value(0.0), 0.0);
    }

    #[test]
    fn canonical_linear_case(p in 0.05f64..20.0, w in 0.1f64..30.0) {
        let s = canonical_shape(p, w * w, w).unwrap();
        prop_assert_eq!(s.residual_shape(p, w * w, w).unwrap().norm(), 0.0);
    }
}
