//! Library values against direct sums and textbook constants computed here.

use std::f64::consts::{LN_2, PI};

use approx::assert_relative_eq;
use casimir_qubit::casimir::{casimir_cutoff_oracle, casimir_zeta, cutoff_energy, CutoffConfig, Field};
use casimir_qubit::entropyenergy::{entropy_energy_pipeline, ConventionSet};
use casimir_qubit::modes::SlabGeometry;
use casimir_qubit::zetareg::{digamma, hurwitz_zeta, matsubara_log_sum, riemann_zeta, z_beta, z_spatial_truncated};
use casimir_qubit::{Error, MatsubaraFamily};

/// Σ_{n<N} (n+a)^{−s} plus the integral and half-term tail.
fn brute_hurwitz(s: f64, a: f64) -> f64 {
    let n = 200_000;
    let mut acc = 0.0;
    for k in (0..n).rev() {
        acc += (k as f64 + a).powf(-s);
    }
    let x = n as f64 + a;
    acc + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s)
}

#[test]
fn hurwitz_against_direct_sums() {
    for &(s, a) in &[(2.0, 0.5), (3.5, 0.25), (1.5, 1.0), (6.0, 2.0)] {
        assert_relative_eq!(hurwitz_zeta(s, a).unwrap(), brute_hurwitz(s, a), max_relative = 1e-9);
    }
}

#[test]
fn riemann_textbook_values() {
    assert_relative_eq!(riemann_zeta(2.0).unwrap(), PI * PI / 6.0, max_relative = 1e-14);
    assert_relative_eq!(riemann_zeta(4.0).unwrap(), PI.powi(4) / 90.0, max_relative = 1e-14);
    assert_eq!(riemann_zeta(-1.0).unwrap(), -1.0 / 12.0);
    assert_eq!(riemann_zeta(-3.0).unwrap(), 1.0 / 120.0);
    assert_eq!(riemann_zeta(-2.0).unwrap(), 0.0);
    assert_eq!(riemann_zeta(0.0).unwrap(), -0.5);
    assert!(matches!(riemann_zeta(1.0), Err(Error::PoleAtOne)));
    // ζ(−1/2) = −0.2078862249773545660…
    assert_relative_eq!(riemann_zeta(-0.5).unwrap(), -0.207_886_224_977_354_57, max_relative = 1e-12);
}

#[test]
fn digamma_half_integers() {
    let gamma_e = 0.577_215_664_901_532_9;
    assert_relative_eq!(digamma(1.0).unwrap(), -gamma_e, max_relative = 1e-14);
    assert_relative_eq!(digamma(0.5).unwrap(), -gamma_e - 2.0 * LN_2, max_relative = 1e-14);
    assert_relative_eq!(digamma(-0.5).unwrap(), -gamma_e - 2.0 * LN_2 + 2.0, max_relative = 1e-13);
}

#[test]
fn fermionic_z_beta_is_a_scaled_hurwitz() {
    // Σ_n |(2n+1)π/β|^{−q} = 2 (β/2π)^q ζ_H(q, ½)
    let beta = 1.7;
    for q in [2.0, 3.0, 4.5] {
        let direct: f64 = (0..400_000).rev().map(|n| ((2 * n + 1) as f64 * PI / beta).powf(-q)).sum::<f64>() * 2.0;
        let tail = 2.0 * (beta / (2.0 * PI)).powf(q) * (400_000.0f64).powf(1.0 - q) / (q - 1.0);
        let lib = z_beta(q, beta, MatsubaraFamily::Fermionic).unwrap().value;
        assert_relative_eq!(lib, direct + tail, max_relative = 1e-8);
    }
}

#[test]
fn closed_form_energy_and_cubic_scaling() {
    for l in [0.5, 1.0, 2.0, 3.0] {
        let e = casimir_zeta(l, Field::ScalarPerDof).unwrap().energy_per_area;
        assert_relative_eq!(e, -PI * PI / (1440.0 * l * l * l), max_relative = 1e-14);
        let f = casimir_zeta(l, Field::DiracFermion).unwrap().energy_per_area;
        assert_relative_eq!(f, 2.0 * e, max_relative = 1e-15);
    }
    let ratio = casimir_zeta(2.0, Field::ScalarPerDof).unwrap().energy_per_area
        / casimir_zeta(1.0, Field::ScalarPerDof).unwrap().energy_per_area;
    assert_relative_eq!(ratio, 0.125, max_relative = 1e-15);
}

#[test]
fn cutoff_sum_against_brute_force() {
    // (1/4π) Σ_l (a²/δ + 2a/δ² + 2/δ³) e^{−δa}, a = πl/L, summed term by term
    let (l, delta) = (1.3, 0.07);
    let mut acc = 0.0;
    for n in (1..20_000).rev() {
        let a = PI * n as f64 / l;
        acc += (a * a / delta + 2.0 * a / (delta * delta) + 2.0 / delta.powi(3)) * (-delta * a).exp();
    }
    assert_relative_eq!(cutoff_energy(l, delta), acc / (4.0 * PI), max_relative = 1e-12);
}

#[test]
fn cutoff_oracle_rejects_bad_grids_and_agrees() {
    let r = casimir_cutoff_oracle(1.0, &CutoffConfig::default()).unwrap();
    assert_relative_eq!(r.energy_per_area, -PI * PI / 1440.0, max_relative = 1e-3);
    assert!(r.uncertainty > 0.0);
    let bad = CutoffConfig {
        delta_list: vec![0.1, 0.2],
        relative_to_separation: true,
    };
    assert!(casimir_cutoff_oracle(1.0, &bad).is_err());
}

#[test]
fn z_spatial_direct_sum_for_large_q() {
    // m = 0: Σ_l ∫d²k/(2π)² (k² + a_l²)^{−q/2} = Σ_l a_l^{2−q}/(2π(q−2))
    let g = SlabGeometry::unit(1.0);
    let q = 5.0;
    let direct: f64 = (1..100_000).rev().map(|l| (PI * l as f64).powf(2.0 - q)).sum::<f64>() / (2.0 * PI * (q - 2.0));
    let lib = z_spatial_truncated(q, &g, 5_000).unwrap().value;
    assert_relative_eq!(lib, direct, max_relative = 1e-9);
}

#[test]
fn matsubara_log_sum_zero_temperature() {
    for omega in [0.5, 2.0] {
        let beta = 80.0 / omega;
        assert_relative_eq!(matsubara_log_sum(omega, beta) / beta, omega - 2.0 * LN_2 / beta, max_relative = 1e-14);
    }
}

#[test]
fn entropy_pipeline_rejects_short_grids() {
    let g = SlabGeometry::unit(1.0);
    let err = entropy_energy_pipeline(&g, &[8.0, 16.0, 32.0], &ConventionSet::default()).unwrap_err();
    assert!(matches!(err, Error::ExtrapolationUnstable(_)));
    let ok = entropy_energy_pipeline(&g, &[8.0, 16.0, 32.0, 64.0], &ConventionSet::default()).unwrap();
    assert_relative_eq!(ok.extrapolated.abs(), PI * PI / 720.0, max_relative = 1e-3);
    assert_eq!(ok.rows.len(), 4);
}
