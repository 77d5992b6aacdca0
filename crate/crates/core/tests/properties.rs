use casimir_qubit::clifford::{dirac_basis, slash};
use casimir_qubit::linalg::{eigen, kron, mat_exp, mat_log, partial_trace, Mat, Matrix2C, Matrix4C, Subsystem, C64};
use casimir_qubit::pseudodensity::{
    build_rho, log_det_rho, product_decomposition_of, realignment_rank_of, thermal_decompose,
};
use casimir_qubit::FourMomentum;
use proptest::prelude::*;

fn momentum_strategy() -> impl Strategy<Value = FourMomentum> {
    (
        prop::array::uniform3(-6.0f64..6.0),
        prop_oneof![0.05f64..12.0, -12.0f64..-0.05],
        prop_oneof![Just(0.0), 0.01f64..4.0],
    )
        .prop_filter("nonzero omega_k", |(k, _, m)| k.iter().map(|x| x * x).sum::<f64>() + m * m > 1e-6)
        .prop_map(|(k, w, m)| FourMomentum::new(k, w, m).unwrap())
}

fn small_matrix() -> impl Strategy<Value = Matrix2C> {
    prop::array::uniform4((-1.0f64..1.0, -1.0f64..1.0))
        .prop_map(|v| Mat([[C64::new(v[0].0, v[0].1), C64::new(v[1].0, v[1].1)], [C64::new(v[2].0, v[2].1), C64::new(v[3].0, v[3].1)]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rho_power_traces_follow_chi(p in momentum_strategy()) {
        let basis = dirac_basis();
        let r = build_rho(&p, &basis).unwrap();
        let chi = C64::new(0.0, -p.omega_k / p.omega_n);
        let mut power = Matrix4C::identity();
        for k in 1..=4 {
            power = power * r.rho;
            let expect = (((1.0 + chi) / 4.0).powi(k) + ((1.0 - chi) / 4.0).powi(k)) * 2.0;
            prop_assert!((power.trace() - expect).norm() < 1e-12 * (1.0 + expect.norm()));
        }
        prop_assert!(partial_trace(&r.rho, Subsystem::First).max_abs_diff(&(Matrix2C::identity() * 0.5)) < 1e-13);
    }

    #[test]
    fn thermal_form_reconstructs(p in momentum_strategy()) {
        let basis = dirac_basis();
        let r = build_rho(&p, &basis).unwrap();
        let t = thermal_decompose(&r, &p, &basis).unwrap();
        prop_assert!(t.reconstruct().unwrap().max_abs_diff(&r.rho) < 1e-10);
        prop_assert!(t.beta_check_imag.abs() < 1e-12 * (1.0 + t.beta_check.abs()));
    }

    #[test]
    fn log_det_matches_frequency_ratio(p in momentum_strategy()) {
        let r = build_rho(&p, &dirac_basis()).unwrap();
        let ratio = (p.omega_k / p.omega_n).powi(2);
        let expect = 2.0 * ((1.0 + ratio) / 16.0).ln();
        prop_assert!((log_det_rho(&r).unwrap() - C64::new(expect, 0.0)).norm() < 1e-11 * (1.0 + expect.abs()));
    }

    #[test]
    fn slash_squares_to_k_squared(p in momentum_strategy()) {
        let basis = dirac_basis();
        let s = slash(&p, &basis);
        let k2 = p.k0 * p.k0 - p.kvec.iter().map(|x| x * x).sum::<f64>();
        let scale = 1.0 + k2.norm();
        prop_assert!((s * s).max_abs_diff(&Matrix4C::identity().scale(k2)) < 1e-12 * scale);
    }

    #[test]
    fn products_have_realignment_rank_one(a in small_matrix(), b in small_matrix()) {
        prop_assume!(a.frobenius_norm() > 0.05 && b.frobenius_norm() > 0.05);
        prop_assert_eq!(realignment_rank_of(&kron(&a, &b), 1e-10), 1);
    }

    #[test]
    fn decomposition_of_mixed_products(a in small_matrix(), b in small_matrix(), c in small_matrix(), d in small_matrix()) {
        let m = kron(&a, &b) + kron(&c, &d);
        if let Ok(dec) = product_decomposition_of(&m) {
            prop_assert!(dec.residual < 1e-9 * (1.0 + m.max_abs()));
            prop_assert!(dec.terms.len() <= 8);
        }
    }

    #[test]
    fn exp_inverts_log_on_positive_hermitian(v in prop::array::uniform4(0.1f64..3.0), x in -1.0f64..1.0, y in -1.0f64..1.0) {
        // eigenvalues well inside the right half-plane, off the branch cut
        let mut m = Matrix4C::from_diag(std::array::from_fn(|i| C64::new(v[i] + 0.5, 0.0)));
        m.0[0][1] = C64::new(0.1 * x, 0.1 * y);
        m.0[1][0] = m.0[0][1].conj();
        let back = mat_exp(&mat_log(&m).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&m) < 1e-11);
        prop_assert!(eigen(&m).is_ok());
    }
}
