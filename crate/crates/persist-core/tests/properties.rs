//! Cross-module properties on randomized inputs.

use persist_core::fredholm::{fredholm_det, log_fredholm_det};
use persist_core::kernels::{k_theta, KernelSpec, Parity};
use persist_core::painleve::{fold_forward, fold_inverse, HamiltonianPoint, Monodromy};
use persist_core::persistence::{
    distribution, log_parity_dets_nystrom, pfaffian_decompose, Method, PersistenceQuery,
};
use persist_core::resolvent_ode::{integrate_h, OdeConfig};
use persist_core::specfun::{digamma, log_barnes_g, log_gamma};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_is_even_and_positive(theta in -0.95f64..0.95, s in 0.0f64..30.0) {
        let a = k_theta(theta, s).unwrap();
        prop_assert_eq!(a, k_theta(theta, -s).unwrap());
        prop_assert!(a > 0.0);
        prop_assert!(a <= k_theta(theta, 0.0).unwrap() * (1.0 + 1e-14));
    }

    #[test]
    fn special_function_recurrences(z in 0.05f64..20.0) {
        prop_assert!((digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z).abs() < 1e-12 * (1.0 + 1.0 / z));
        let g = log_barnes_g(z + 1.0).unwrap() - log_barnes_g(z).unwrap();
        prop_assert!((g - log_gamma(z).unwrap()).abs() < 1e-11 * (1.0 + z * z.ln().abs()));
    }

    #[test]
    fn determinant_is_a_probability_decreasing_in_length(
        theta in 0.0f64..0.9, xi in 0.0f64..1.0, ell in 0.1f64..6.0,
    ) {
        let spec = KernelSpec::theta(theta, xi, Parity::None).unwrap();
        let d1 = fredholm_det(&spec, 0.0, ell, 100).unwrap();
        let d2 = fredholm_det(&spec, 0.0, ell + 0.5, 100).unwrap();
        prop_assert!(d2 <= d1 && d1 <= 1.0 && d2 > 0.0);
    }

    #[test]
    fn parity_product_is_the_symmetric_determinant(
        theta in 0.0f64..0.9, xi in 0.05f64..1.0, ell in 0.2f64..8.0,
    ) {
        let (lp, lm) = log_parity_dets_nystrom(theta, xi, ell).unwrap();
        let spec = KernelSpec::theta(theta, xi, Parity::None).unwrap();
        let sym = log_fredholm_det(&spec, -0.5 * ell, 0.5 * ell, 120).unwrap();
        prop_assert!((lp + lm - sym).abs() < 1e-9);
        prop_assert!(lm >= lp);
    }

    #[test]
    fn pfaffian_sum_and_mirror(m in -1.0f64..1.0, ell in 0.0f64..8.0) {
        let a = distribution(&PersistenceQuery::new(m, ell, Method::Nystrom)).unwrap();
        let b = distribution(&PersistenceQuery::new(-m, ell, Method::Nystrom)).unwrap();
        prop_assert!((a.p_plus + a.p_minus - a.d_plus).abs() < 1e-15);
        prop_assert_eq!(a.p_plus, b.p_minus);
        let (p, q, t) = pfaffian_decompose(a.d_plus, a.d_minus, m).unwrap();
        prop_assert_eq!((p, q, t), (a.p_plus, a.p_minus, a.p_total));
    }

    #[test]
    fn coefficients_recover_exponents(
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0, d in -2.0f64..2.0,
    ) {
        let sq = Monodromy::new(a, b, c, d).coefficients().squared_exponents();
        for (x, y) in sq.iter().zip([a * a, b * b, c * c, d * d]) {
            prop_assert!((x - y).abs() < 1e-12 * (1.0 + y));
        }
    }

    #[test]
    fn quadratic_fold_inverts(
        s in 0.05f64..0.95, q in -3.0f64..3.0, p in -3.0f64..3.0,
        ta in 0.05f64..0.45, td in 0.05f64..0.45,
    ) {
        let start = HamiltonianPoint { s, q, p };
        let f = fold_forward(&start, ta, td).unwrap();
        let r = s.sqrt();
        let back = [true, false]
            .into_iter()
            .filter_map(|plus| fold_inverse(&f, r, ta, td, plus).ok())
            .min_by(|x, y| (x.q - q).abs().total_cmp(&(y.q - q).abs()))
            .unwrap();
        prop_assert!((back.s - s).abs() < 1e-12);
        prop_assert!((back.q - q).abs() < 1e-8 * (1.0 + q.abs()));
        prop_assert!((back.p - p).abs() < 1e-8 * (1.0 + p.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ode_tracks_nystrom_at_random_points(
        theta in 0.0f64..0.8, xi in 0.1f64..0.95, ell in 0.5f64..8.0,
    ) {
        let tr = integrate_h(&OdeConfig::new(theta, xi, ell)).unwrap();
        prop_assert!(tr.max_hazzidakis() < 1e-8);
        let spec = KernelSpec::theta(theta, xi, Parity::None).unwrap();
        let nys = persist_core::fredholm::resolvent_rs(&spec, 0.5 * ell, 140).unwrap().r;
        prop_assert!((tr.eval(ell).unwrap()[0] + nys).abs() < 1e-8);
    }
}
