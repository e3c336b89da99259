use biuniv_core::bounds::{bound_a_2m1, bound_a_m1, ClassParams};
use biuniv_core::membership::{
    check_membership, class_functional, coefficients_from_point, solve_schwarz, Pinning,
    SchwarzPoint,
};
use biuniv_core::phi::PhiSpec;
use biuniv_core::scalar::exact;
use biuniv_core::search::FeasibleRegion;
use biuniv_core::{ExactComplex, ExactSeries, FloatSeries, Scalar};
use num_complex::Complex64;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = ExactComplex> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| exact(p, q))
}

fn feasible_point() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0.0f64..1.0, 0.0f64..std::f64::consts::TAU, 0.0f64..1.0, 0.0f64..std::f64::consts::TAU)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn solve_schwarz_round_trips(m in 1usize..=3, tail in prop::collection::vec(rational(), 3)) {
        let order = 3 * m;
        let mut u = ExactSeries::zero(order).into_coeffs();
        for (k, c) in tail.into_iter().enumerate() {
            u[(k + 1) * m] = c;
        }
        let u = ExactSeries::new(u).unwrap();
        let phi: ExactSeries = PhiSpec::mobius_beta_ratio(1, 3).unwrap().series(order);
        let target = phi.compose(&u).unwrap();
        prop_assert_eq!(solve_schwarz(&target, &phi, order).unwrap(), u);
    }

    #[test]
    fn class_functional_matches_matching_equations(
        m in 1usize..=3,
        a in rational(),
        c in rational(),
        lambda in (0i64..4).prop_map(|k| exact(k, 4)),
    ) {
        let f = ExactSeries::mfold_normalized(m, &[a.clone(), c.clone(), exact(0, 1)]).unwrap();
        let g = f.revert().unwrap();
        let big_f = class_functional(&f, &lambda).unwrap();
        let big_g = class_functional(&g, &lambda).unwrap();
        let mm = ExactComplex::from_int(m as i64);
        let one = exact(1, 1);
        let scale = mm.clone() * (one.clone() - lambda.clone());
        let sq = a.clone() * a.clone();
        // Function side and inverse side, z^m and z^2m coefficients.
        prop_assert_eq!(&big_f.coeffs()[m], &(scale.clone() * a.clone()));
        let f2 = scale.clone() * (exact(2, 1) * c.clone() - (lambda.clone() * mm.clone() + one.clone()) * sq.clone());
        prop_assert_eq!(&big_f.coeffs()[2 * m], &f2);
        prop_assert_eq!(&big_g.coeffs()[m], &-(scale.clone() * a.clone()));
        let inv_weight = one.clone() + mm.clone() * (exact(2, 1) - lambda.clone());
        let g2 = scale.clone() * (inv_weight * sq.clone() - exact(2, 1) * c);
        prop_assert_eq!(&big_g.coeffs()[2 * m], &g2);
        // Their sum is 2 m^2 (1-lambda)^2 a^2.
        prop_assert_eq!(f2 + g2, exact(2, 1) * scale.clone() * scale * sq);
    }

    #[test]
    fn certified_points_are_coupled_and_bounded(
        raw in feasible_point(),
        m in 1usize..=3,
        lambda in 0.0f64..0.6,
        beta in 0.0f64..0.95,
    ) {
        let phi = PhiSpec::mobius_beta(beta).unwrap();
        let p = ClassParams::new(m, lambda).unwrap();
        let region = FeasibleRegion::new(phi.clone(), p).with_pinning(Pinning::Derived);
        let (r, theta, t, psi) = raw;
        let b_m = Complex64::from_polar(r, theta);
        let point = region.point(b_m, Complex64::from_polar(2.0 * (1.0 - r * r) * t, psi));
        prop_assume!(region.contains(&point));
        let coeffs = coefficients_from_point(&point, &phi, &p);
        let f = FloatSeries::mfold_normalized(m, &[coeffs.a_m1, coeffs.a_2m1]).unwrap();
        let cert = check_membership(&f, &phi, &p, 2 * m).unwrap();
        prop_assert!(cert.feasible, "{:?}", cert.failures);
        prop_assert!(cert.point.is_coupled(1e-10));
        prop_assert!((cert.point.b_m - point.b_m).norm() < 1e-10);
        prop_assert!((cert.point.b_2m - point.b_2m).norm() < 1e-10);
        prop_assert!((cert.point.c_2m - point.c_2m).norm() < 1e-10);
        // The bounds only dominate when the derived coupling is at least as
        // restrictive as the one they were proved from (beta <= 1/4 here).
        if Pinning::Derived.weight(&phi).abs() >= Pinning::Printed.weight(&phi).abs() {
            prop_assert!(coeffs.a_m1.norm() <= bound_a_m1(&phi, &p).value + 1e-9);
            prop_assert!(coeffs.a_2m1.norm() <= bound_a_2m1(&phi, &p).value + 1e-9);
        }
    }

    #[test]
    fn printed_points_reembed_with_shifted_sum(
        raw in feasible_point(),
        m in 1usize..=3,
        lambda in 0.0f64..0.6,
        beta in 0.0f64..0.95,
    ) {
        let phi = PhiSpec::mobius_beta(beta).unwrap();
        let p = ClassParams::new(m, lambda).unwrap();
        let region = FeasibleRegion::new(phi.clone(), p);
        let (r, theta, t, psi) = raw;
        let b_m = Complex64::from_polar(r, theta);
        let point = region.point(b_m, Complex64::from_polar(2.0 * (1.0 - r * r) * t, psi));
        let coeffs = coefficients_from_point(&point, &phi, &p);
        let f = FloatSeries::mfold_normalized(m, &[coeffs.a_m1, coeffs.a_2m1]).unwrap();
        let cert = check_membership(&f, &phi, &p, 2 * m).unwrap();
        let shift = b_m * b_m * (phi.b2() / phi.b1());
        prop_assert!((cert.point.b_2m - (point.b_2m + shift)).norm() < 1e-10);
        prop_assert!((cert.point.c_2m - (point.c_2m + shift)).norm() < 1e-10);
    }
}

#[test]
fn oversized_leading_coefficient_is_rejected() {
    for m in 1..=3 {
        for phi in [
            PhiSpec::mobius_beta(0.0).unwrap(),
            PhiSpec::mobius_beta(0.25).unwrap(),
            PhiSpec::power_alpha(0.5).unwrap(),
            PhiSpec::power_alpha(1.0).unwrap(),
        ] {
            let p = ClassParams::new(m, 0.2).unwrap();
            let a = 1.01 * bound_a_m1(&phi, &p).value;
            for c in [-3.0, -0.5, 0.0, 0.4, 2.0] {
                let f = FloatSeries::mfold_normalized(m, &[Complex64::new(a, 0.0), Complex64::new(c, 0.0)])
                    .unwrap();
                let cert = check_membership(&f, &phi, &p, 2 * m).unwrap();
                assert!(!cert.feasible, "m {m} {} c {c}", phi.label());
            }
        }
    }
}

#[test]
fn flat_mobius_admits_leading_coefficient_above_bound() {
    // phi = 1/(1-z), m = 1, lambda = 0: f = z + z^2 + z^3 meets every
    // truncated condition with b_1 = 1, yet |a_2| = 1 > 1/sqrt(2).
    let phi = PhiSpec::mobius_beta(0.5).unwrap();
    let p = ClassParams::new(1, 0.0).unwrap();
    let f = FloatSeries::from_reals(&[0.0, 1.0, 1.0, 1.0]).unwrap();
    let cert = check_membership(&f, &phi, &p, 2).unwrap();
    assert!(cert.feasible, "{:?}", cert.failures);
    assert!((cert.point.b_m.re - 1.0).abs() < 1e-12 && cert.point.b_2m.norm() < 1e-12);
    assert!(1.0 > bound_a_m1(&phi, &p).value + 0.29);
}

#[test]
fn small_epsilon_gives_proportional_b_m() {
    let phi = PhiSpec::mobius_beta(0.0).unwrap();
    for (m, lambda) in [(1, 0.0), (2, 0.0), (3, 0.5)] {
        let p = ClassParams::new(m, lambda).unwrap();
        let eps = 0.1;
        let f = FloatSeries::mfold_normalized(m, &[Complex64::new(eps, 0.0)]).unwrap();
        let cert = check_membership(&f, &phi, &p, 2 * m).unwrap();
        assert!(cert.feasible);
        let expected = m as f64 * (1.0 - lambda) * eps / 2.0;
        assert!((cert.point.b_m.re - expected).abs() < 1e-14);
    }
    let _ = SchwarzPoint::ORIGIN;
}
