//! Property tests for the structural invariants of each module.

use proptest::prelude::*;
use toboggan::contours::{sample_path, straight_path, winding_path, WindingContour};
use toboggan::largeell::{
    anharmonic_correction_exponent, expand_ho, expand_rectified, omega_n, weight_correction_exponent,
};
use toboggan::potentials::{reality_condition, v_eff, v_eff_cubic, v_eff_ho, HoSpec, ModelSpec};
use toboggan::rectify::{angular_map, build_rectified, rectified_potential};
use toboggan::spectra::{energy_cubic_n0, energy_ho_approx, energy_ho_exact, energy_toboggan, gap};
use toboggan::Complex64;

fn crel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// A point well away from the origin and from the cut `q = it, t ≥ 0`.
fn off_cut() -> impl Strategy<Value = Complex64> {
    (0.05f64..3.0, prop::bool::ANY, -3.0f64..3.0)
        .prop_map(|(re, neg, im)| Complex64::new(if neg { -re } else { re }, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn straight_line_is_the_zero_winding(eps in 1e-3f64..10.0, s in -50.0f64..50.0) {
        prop_assert_eq!(winding_path(0, eps, s).unwrap(), straight_path(eps, s).unwrap());
    }

    #[test]
    fn odd_power_identity(n in 0u32..5, eps in 0.05f64..3.0, s in -3.0f64..3.0) {
        let y = straight_path(eps, s).unwrap();
        let want = Complex64::new(0.0, -1.0) * (Complex64::new(0.0, 1.0) * y).powu(2 * n + 1);
        prop_assert!(crel(winding_path(n, eps, s).unwrap(), want) < 1e-14);
    }

    #[test]
    fn contour_is_pt_symmetric(n in 0u32..5, eps in 0.05f64..3.0, s in -3.0f64..3.0) {
        let a = winding_path(n, eps, -s).unwrap();
        let b = -winding_path(n, eps, s).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-14 * b.norm());
    }

    #[test]
    fn samples_are_ordered(n in 0u32..4, lo in -10.0f64..0.0, span in 0.01f64..20.0, count in 2usize..400) {
        let c = WindingContour::new(n, 0.3).unwrap();
        let pts = sample_path(&c, lo, lo + span, count).unwrap();
        prop_assert_eq!(pts.len(), count);
        prop_assert!(pts.windows(2).all(|w| w[0].s < w[1].s));
    }

    #[test]
    fn cubic_member_matches(q in off_cut(), ell in 0.0f64..30.0) {
        let spec = ModelSpec::imaginary_cubic(ell).unwrap();
        prop_assert!(crel(v_eff(q, &spec).unwrap(), v_eff_cubic(q, ell).unwrap()) < 1e-13);
    }

    #[test]
    fn potential_is_pt_symmetric(
        q in off_cut(), m in 1.1f64..4.0, alpha in -5.0f64..5.0, ell in 0.0f64..10.0,
    ) {
        let spec = ModelSpec::new(m, alpha, ell).unwrap();
        let a = v_eff(-q.conj(), &spec).unwrap();
        let b = v_eff(q, &spec).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
    }

    #[test]
    fn reality_condition_monotone_in_ell(
        m in 1.1f64..5.0, alpha in -2.0f64..20.0, ell in 0.0f64..10.0, bump in 0.0f64..10.0,
    ) {
        let lo = reality_condition(&ModelSpec::new(m, alpha, ell).unwrap());
        let hi = reality_condition(&ModelSpec::new(m, alpha, ell + bump).unwrap());
        prop_assert!(!lo || hi);
    }

    #[test]
    fn rectified_n0_is_the_cubic(q in off_cut(), ell in 0.0f64..30.0) {
        let p = build_rectified(0, ell);
        prop_assert!(crel(rectified_potential(&p, q).unwrap(), v_eff_cubic(q, ell).unwrap()) < 1e-13);
    }

    #[test]
    fn angular_map_shift(n in 0u32..6, k in 0u32..4000) {
        // ℓ on a dyadic grid keeps both sides exact
        let ell = k as f64 / 8.0;
        prop_assert_eq!(angular_map(n, ell) + 0.5, (2 * n + 1) as f64 * (ell + 0.5));
    }

    #[test]
    fn weight_never_vanishes(n in 0u32..4, ell in 0.5f64..50.0, eps in 1e-3f64..5.0, s in -20.0f64..20.0) {
        let y = straight_path(eps, s).unwrap();
        prop_assert!(build_rectified(n, ell).weight(y).norm() > 0.0);
    }

    #[test]
    fn exponent_ladder(n in 0u32..8, ell in 0.5f64..50.0) {
        let (a, b) = (build_rectified(n, ell), build_rectified(n + 1, ell));
        prop_assert_eq!(b.potential_exponent, a.potential_exponent + 10);
        prop_assert_eq!(b.weight_exponent, a.weight_exponent + 4);
    }

    #[test]
    fn taylor_matches_finite_differences(n in 0u32..4, ell in 5.0f64..500.0) {
        let (problem, family, e) = expand_rectified(n, ell).unwrap();
        let t = family.selected();
        let f = |x: f64| rectified_potential(&problem, t + Complex64::new(x, 0.0)).unwrap();
        // the step shrinks with the leading power y^{10N+3}
        let h = 0.02 * t.norm() / (10 * n + 3) as f64;
        let d2 = |h: f64| (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        let d3 = |h: f64| (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
        let second = (4.0 * d2(h) - d2(2.0 * h)) / 3.0;
        let third = (4.0 * d3(h) - d3(2.0 * h)) / 3.0;
        prop_assert!(crel(second / 2.0, e.harmonic) < 1e-6);
        prop_assert!(crel(third / 6.0, e.cubic) < 1e-6);
    }

    #[test]
    fn oscillator_taylor_matches_finite_differences(ell in 1.0f64..200.0, omega in 0.2f64..5.0) {
        let spec = HoSpec::new(ell, omega).unwrap();
        let (family, e) = expand_ho(&spec).unwrap();
        let t = family.selected();
        let f = |x: f64| v_eff_ho(t + Complex64::new(x, 0.0), &spec).unwrap();
        let h = 2e-3 * t.norm();
        let d2 = |h: f64| (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        let d3 = |h: f64| (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
        prop_assert!(crel((4.0 * d2(h) - d2(2.0 * h)) / 6.0, e.harmonic) < 1e-6);
        prop_assert!(crel((4.0 * d3(h) - d3(2.0 * h)) / 18.0, e.cubic) < 1e-6);
    }

    #[test]
    fn closed_form_coefficients(n in 0u32..5, ell in 10.0f64..1e4) {
        let (_, family, e) = expand_rectified(n, ell).unwrap();
        let (tau, k) = (family.tau, n as i32);
        let odd_sq = ((2 * n + 1) * (2 * n + 1)) as f64;
        let value = -0.5 * odd_sq * (10 * n + 5) as f64 * tau.powi(10 * k + 3);
        let harmonic = omega_n(n).powi(2) * tau.powi(10 * k + 1);
        prop_assert!(crel(e.value, Complex64::new(value, 0.0)) < 1e-12);
        prop_assert!(crel(e.harmonic, Complex64::new(harmonic, 0.0)) < 1e-10);
    }

    #[test]
    fn toboggan_n0_is_bitwise_cubic(ell in 0.1f64..1e8, n in 0u32..20) {
        prop_assert_eq!(energy_toboggan(0, ell, n).unwrap(), energy_cubic_n0(ell, n).unwrap());
    }

    #[test]
    fn levels_are_equidistant(nw in 0u32..5, ell in 0.5f64..1e6, n in 0u32..50) {
        prop_assert_eq!(gap(nw, ell, n).unwrap(), gap(nw, ell, 0).unwrap());
        prop_assert!(energy_toboggan(nw, ell, n + 1).unwrap() > energy_toboggan(nw, ell, n).unwrap());
    }

    #[test]
    fn oscillator_error_bound(ell in 5.0f64..1e4, omega in 0.1f64..10.0) {
        let d = energy_ho_approx(ell, omega, 0).unwrap() - energy_ho_exact(ell, omega, 0).unwrap();
        prop_assert!(d > 0.0);
        prop_assert!(d <= omega / (2.0 * (2.0 * ell + 1.0)) * (1.0 + 1.0 / ell));
    }
}

#[test]
fn weight_correction_outruns_anharmonic() {
    for n in 0..50 {
        assert!(weight_correction_exponent(n) > anharmonic_correction_exponent(n));
    }
}
