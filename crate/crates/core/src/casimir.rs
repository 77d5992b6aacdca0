//! Parallel-plate Casimir energies.
//!
//! Two independent routes to the energy per unit area: the zeta-continued
//! mode sum `½ Σ ω_k`, and an exponential cutoff `Σ ω e^{−δω}` whose bulk
//! (`∝ L`) and surface (`L`-independent) divergences are subtracted before
//! extrapolating `δ → 0`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::clifford::{slash, GammaBasis};
use crate::error::{Error, Result};
use crate::linalg::{Matrix4C, C64};
use crate::modes::{FourMomentum, SlabGeometry};
use crate::par;
use crate::quad;
use crate::sum::NeumaierSum;
use crate::zetareg::{digamma, gamma, z_spatial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    ScalarPerDof,
    DiracFermion,
}

impl Field {
    /// Multiplier relative to one scalar degree of freedom.
    pub fn factor(self) -> f64 {
        match self {
            Field::ScalarPerDof => 1.0,
            Field::DiracFermion => 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ZetaClosed,
    CutoffOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CasimirResult {
    pub energy_per_area: f64,
    pub l: f64,
    pub field: Field,
    pub method: Method,
    /// Zero for the closed form.
    pub uncertainty: f64,
}

/// Regulator grid for [`casimir_cutoff_oracle`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutoffConfig {
    /// Strictly descending, positive.
    pub delta_list: Vec<f64>,
    /// When set, each δ is multiplied by `L`, so the grid is the same in
    /// units of the plate separation.
    pub relative_to_separation: bool,
}

impl Default for CutoffConfig {
    fn default() -> Self {
        Self {
            delta_list: vec![0.2, 0.1, 0.05, 0.025],
            relative_to_separation: true,
        }
    }
}

impl CutoffConfig {
    pub fn validate(&self) -> Result<()> {
        if self.delta_list.len() < 3 {
            return Err(Error::InvalidGeometry("cutoff grid needs at least 3 values".into()));
        }
        if self.delta_list.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return Err(Error::InvalidGeometry("cutoff values must be positive".into()));
        }
        if self.delta_list.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidGeometry("cutoff values must be strictly descending".into()));
        }
        Ok(())
    }

    pub fn deltas(&self, l: f64) -> Vec<f64> {
        let s = if self.relative_to_separation { l } else { 1.0 };
        self.delta_list.iter().map(|d| d * s).collect()
    }
}

fn check_separation(l: f64) -> Result<()> {
    if l.is_finite() && l > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidGeometry(format!("L must be positive, got {l}")))
    }
}

/// `½ Σ ω` per unit area through `𝖹(−1)`; twice that for the Dirac field.
pub fn casimir_zeta(l: f64, field: Field) -> Result<CasimirResult> {
    check_separation(l)?;
    let z = z_spatial(-1.0, &SlabGeometry::unit(l))?;
    Ok(CasimirResult {
        energy_per_area: 0.5 * z.value * field.factor(),
        l,
        field,
        method: Method::ZetaClosed,
        uncertainty: 0.0,
    })
}

/// Cutoff energy per area with bulk and surface terms removed.
///
/// With `a_l = πl/L` the regulated sum is
/// `(1/4π) Σ_l (a_l²/δ + 2a_l/δ² + 2/δ³) e^{−δa_l}`, which is the transverse
/// integral of `½ ω e^{−δω}` done in closed form. The three `l`-sums are
/// geometric series in `x = δπ/L`.
pub fn cutoff_energy(l: f64, delta: f64) -> f64 {
    let x = delta * PI / l;
    let em = x.exp_m1();
    let ex = x.exp();
    let s0 = 1.0 / em;
    let s1 = ex / (em * em);
    let s2 = ex * (ex + 1.0) / (em * em * em);
    let h = PI / l;
    (h * h * s2 / delta + 2.0 * h * s1 / (delta * delta) + 2.0 * s0 / delta.powi(3)) / (4.0 * PI)
}

/// `(1/4π)(L/π)∫₀^∞ (a²/δ + 2a/δ² + 2/δ³) e^{−δa} da = 3L/(2π²δ⁴)`
pub fn cutoff_bulk(l: f64, delta: f64) -> f64 {
    3.0 * l / (2.0 * PI * PI * delta.powi(4))
}

/// `−½ · (1/4π) · (2/δ³)`, the half-weight `l = 0` endpoint.
pub fn cutoff_surface(delta: f64) -> f64 {
    -1.0 / (4.0 * PI * delta.powi(3))
}

pub fn cutoff_subtracted(l: f64, delta: f64) -> f64 {
    cutoff_energy(l, delta) - cutoff_bulk(l, delta) - cutoff_surface(delta)
}

/// Least-squares `y ≈ c₀ + c₂δ²`; returns `(c₀, c₂, max |residual|)`.
fn fit_even(deltas: &[f64], values: &[f64]) -> (f64, f64, f64) {
    let n = deltas.len() as f64;
    let mut sx = NeumaierSum::new();
    let mut sxx = NeumaierSum::new();
    let mut sy = NeumaierSum::new();
    let mut sxy = NeumaierSum::new();
    for (d, y) in deltas.iter().zip(values) {
        let x = d * d;
        sx.add(x);
        sxx.add(x * x);
        sy.add(*y);
        sxy.add(x * y);
    }
    let (sx, sxx, sy, sxy) = (sx.value(), sxx.value(), sy.value(), sxy.value());
    let det = n * sxx - sx * sx;
    let c2 = (n * sxy - sx * sy) / det;
    let c0 = (sy - c2 * sx) / n;
    let worst = deltas
        .iter()
        .zip(values)
        .map(|(d, y)| (y - c0 - c2 * d * d).abs())
        .fold(0.0, f64::max);
    (c0, c2, worst)
}

/// Scalar energy per area from the exponential cutoff, extrapolated to
/// `δ → 0` with `c₀ + c₂δ²`. The uncertainty is the shift of `c₀` when the
/// coarsest δ is dropped.
pub fn casimir_cutoff_oracle(l: f64, cfg: &CutoffConfig) -> Result<CasimirResult> {
    check_separation(l)?;
    cfg.validate()?;
    let deltas = cfg.deltas(l);
    let values = par::map_ordered(&deltas, |&d| cutoff_subtracted(l, d));
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::ExtrapolationUnstable("non-finite cutoff sum".into()));
    }
    let (c0, c2, worst) = fit_even(&deltas, &values);
    let smallest = deltas[deltas.len() - 1];
    let gate = 10.0 * (c2 * smallest * smallest).abs();
    if worst > gate {
        return Err(Error::ExtrapolationUnstable(format!(
            "fit residual {worst:e} exceeds {gate:e}"
        )));
    }
    let uncertainty = if deltas.len() > 3 {
        let (c0_fine, _, _) = fit_even(&deltas[1..], &values[1..]);
        (c0 - c0_fine).abs()
    } else {
        worst
    };
    Ok(CasimirResult {
        energy_per_area: c0,
        l,
        field: Field::ScalarPerDof,
        method: Method::CutoffOracle,
        uncertainty,
    })
}

/// `E_c + C₂(ψ(1) − ψ(−½)) / (32π²ℓ)`
pub fn effective_energy(ec: &CasimirResult, c2: f64, ell: f64) -> Result<f64> {
    if !(ell.is_finite() && ell > 0.0) {
        return Err(Error::InvalidGeometry(format!("scale must be positive, got {ell}")));
    }
    if c2 == 0.0 {
        return Ok(ec.energy_per_area);
    }
    let psi = digamma(1.0)? - digamma(-0.5)?;
    Ok(ec.energy_per_area + c2 * psi / (32.0 * PI * PI * ell))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlpCheck {
    /// `(ω_n² + ω_k²)⁴`
    pub lhs: C64,
    /// `det₄(k̸ + m)²`
    pub rhs: C64,
    pub relative: f64,
}

/// `((k⁰)² − ω_k²)²`, the closed form of `det₄(k̸ + m)`.
pub fn det_slash_closed(p: &FourMomentum) -> C64 {
    let d = p.k0 * p.k0 - p.omega_k * p.omega_k;
    d * d
}

/// Per-mode determinant identity between the scalar operator raised to the
/// spinor dimension and the squared Dirac determinant.
pub fn slp_mode_check(p: &FourMomentum, basis: &GammaBasis) -> SlpCheck {
    let scalar = p.omega_n * p.omega_n + p.omega_k * p.omega_k;
    let lhs = C64::new(scalar.powi(4), 0.0);
    let d = (slash(p, basis) + Matrix4C::identity() * p.mass).det();
    let rhs = d * d;
    SlpCheck {
        lhs,
        rhs,
        relative: (lhs - rhs).norm() / lhs.norm(),
    }
}

/// `∫dω/2π Σ_λ (ω² + λ)^{−s}` against `Γ(s−½)/(Γ(s)√4π) Σ_λ λ^{½−s}`.
///
/// With `beta = Some(β)` the left side is the bosonic Matsubara sum
/// `β⁻¹ Σ_{n∈ℤ}`, which approaches the integral exponentially in `β√λ`.
pub fn zeta_factorization_check(s: f64, spectrum: &[f64], beta: Option<f64>) -> Result<(f64, f64)> {
    if !(s > 1.0) {
        return Err(Error::NonConvergent(format!("s = {s} must exceed 1")));
    }
    if spectrum.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(Error::Unsupported("spectrum must be positive".into()));
    }
    let mut lhs = NeumaierSum::new();
    for &lam in spectrum {
        match beta {
            None => {
                let q = quad::integrate_half_line(|w| (w * w + lam).powf(-s), 0.0, 1e-13)?;
                lhs.add(q.value / PI);
            }
            Some(b) => {
                if !(b > 0.0) {
                    return Err(Error::InvalidGeometry(format!("beta must be positive, got {b}")));
                }
                let term = |n: u64| ((2.0 * PI * n as f64 / b).powi(2) + lam).powf(-s);
                let mut acc = NeumaierSum::new();
                acc.add(term(0));
                let mut n = 1;
                loop {
                    let t = 2.0 * term(n);
                    acc.add(t);
                    if t <= 1e-17 * acc.value() {
                        break;
                    }
                    n += 1;
                    if n > 100_000_000 {
                        return Err(Error::NonConvergent("Matsubara sum".into()));
                    }
                }
                lhs.add(acc.value() / b);
            }
        }
    }
    let ratio = gamma(s - 0.5) / (gamma(s) * (4.0 * PI).sqrt());
    let rhs = ratio * spectrum.iter().map(|lam| lam.powf(0.5 - s)).sum::<f64>();
    Ok((lhs.value(), rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::dirac_basis;
    use crate::linalg::c;
    use std::f64::consts::LN_2;

    #[test]
    fn closed_form_values() {
        let s = casimir_zeta(1.0, Field::ScalarPerDof).unwrap();
        assert!((s.energy_per_area + PI * PI / 1440.0).abs() < 1e-17);
        let f = casimir_zeta(1.0, Field::DiracFermion).unwrap();
        assert_eq!(f.energy_per_area, 2.0 * s.energy_per_area);
        let s2 = casimir_zeta(2.0, Field::ScalarPerDof).unwrap();
        assert!((s2.energy_per_area * 8.0 - s.energy_per_area).abs() < 1e-17);
        assert!(casimir_zeta(0.0, Field::ScalarPerDof).is_err());
    }

    #[test]
    fn cutoff_oracle_unit_separation() {
        let r = casimir_cutoff_oracle(1.0, &CutoffConfig::default()).unwrap();
        let expect = -PI * PI / 1440.0;
        assert!(((r.energy_per_area - expect) / expect).abs() < 1e-3);
        assert!(r.uncertainty > 0.0);
    }

    #[test]
    fn cutoff_differences_shrink() {
        let deltas = [0.2, 0.1, 0.05, 0.025];
        let v: Vec<f64> = deltas.iter().map(|&d| cutoff_subtracted(1.0, d)).collect();
        let d1 = (v[1] - v[0]).abs();
        let d2 = (v[2] - v[1]).abs();
        let d3 = (v[3] - v[2]).abs();
        assert!(d2 < d1 && d3 < d2);
        assert!((d1 / d2 - 4.0).abs() < 0.5);
    }

    #[test]
    fn cutoff_config_validation() {
        let bad = CutoffConfig {
            delta_list: vec![0.1, 0.2, 0.05],
            relative_to_separation: false,
        };
        assert!(bad.validate().is_err());
        let short = CutoffConfig {
            delta_list: vec![0.2, 0.1],
            relative_to_separation: false,
        };
        assert!(short.validate().is_err());
    }

    #[test]
    fn effective_energy_digamma_shift() {
        let ec = casimir_zeta(1.0, Field::ScalarPerDof).unwrap();
        assert_eq!(effective_energy(&ec, 0.0, 1.0).unwrap(), ec.energy_per_area);
        let shifted = effective_energy(&ec, 32.0 * PI * PI, 1.0).unwrap();
        assert!((shifted - (ec.energy_per_area - (2.0 - 2.0 * LN_2))).abs() < 1e-13);
    }

    #[test]
    fn slp_examples() {
        let basis = dirac_basis();
        let p = FourMomentum::new([0.0, 0.0, 1.0], 1.0, 0.0).unwrap();
        let r = slp_mode_check(&p, &basis);
        assert!((r.lhs - c(16.0, 0.0)).norm() < 1e-12);
        assert!(r.relative < 1e-12);
        let p = FourMomentum::new([0.0, 0.0, 2.0], 3.0, 1.0).unwrap();
        let r = slp_mode_check(&p, &basis);
        assert!((r.lhs - c(14f64.powi(4), 0.0)).norm() < 1e-9);
        assert!(r.relative < 1e-12);
        let d = (slash(&p, &basis) + Matrix4C::identity() * p.mass).det();
        assert!((d - det_slash_closed(&p)).norm() < 1e-12);
    }

    #[test]
    fn zeta_factorization_examples() {
        let (l, r) = zeta_factorization_check(2.0, &[1.0], None).unwrap();
        assert!((l - r).abs() <= 1e-8 * r);
        assert!((r - gamma(1.5) / (gamma(2.0) * (4.0 * PI).sqrt())).abs() < 1e-15);
        let (l, r) = zeta_factorization_check(3.0, &[1.0, 4.0, 9.0], None).unwrap();
        assert!((l - r).abs() <= 1e-8 * r);
        let (l, r) = zeta_factorization_check(3.0, &[1.0, 4.0, 9.0], Some(60.0)).unwrap();
        assert!((l - r).abs() <= 1e-8 * r);
        let (_, r4) = zeta_factorization_check(3.0, &[4.0, 16.0, 36.0], None).unwrap();
        assert!((r4 - r * 2f64.powf(1.0 - 6.0)).abs() < 1e-15);
    }
}
