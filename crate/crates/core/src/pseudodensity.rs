//! Per-mode pseudo-density matrices `ρ̌ = (k̸ + m)γ⁰ / (4k⁰) = (I + χB)/4`.
//!
//! `ρ̌` has unit trace and eigenvalues `(1 ± χ)/4`, each twice. It is not
//! hermitian, but it is pseudo-hermitian with respect to `𝔹 = γ¹γ²γ³`, and it
//! can be written in a thermal form `e^{−β̌ℋ} / tr e^{−β̌ℋ}` with a real
//! `β̌`. Both partial traces equal `I₂/2`, yet `ρ̌` is not a single tensor
//! product, which is detected through the rank of its realignment.

use serde::Serialize;

use crate::clifford::{slash, GammaBasis};
use crate::error::{Error, Result};
use crate::linalg::{
    c, eigen, eigenvalues2, inner, kron, mat_log, partial_trace, svd, vec_norm, Matrix2C, Matrix4C,
    Subsystem, Vector4C, C64, ONE, ZERO,
};
use crate::modes::{FourMomentum, Mode};

/// Distance of `χ` from `±1` below which `artanh χ` is rejected.
const ARTANH_GUARD: f64 = 1e-12;
const SINGULAR_EIGENVALUE: f64 = 1e-14;
/// Relative singular-value cut for operator-Schmidt terms and rank-1 pieces.
const SCHMIDT_CUT: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PseudoDensity {
    pub rho: Matrix4C,
    pub b: Matrix4C,
    pub chi: C64,
    pub momentum: FourMomentum,
    pub mode: Option<Mode>,
    /// `(1 + χ)/4`
    pub lambda_plus: C64,
    /// `(1 − χ)/4`
    pub lambda_minus: C64,
    /// Max-entry gap between the momentum form and `(I + χB)/4`.
    pub dual_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalForm {
    pub a: C64,
    pub alpha: C64,
    /// Real part of `α/k⁰`.
    pub beta_check: f64,
    /// Imaginary part of `α/k⁰`, kept so callers can check it vanishes.
    pub beta_check_imag: f64,
    pub h: Matrix4C,
}

/// Boosted rest-frame spinors indexed `[λ_E][λ_s]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinorQuartet {
    pub spinors: [[Vector4C; 2]; 2],
    /// Eigenvalue of `ρ̌` shared by each `λ_E` pair.
    pub eigenvalues: [C64; 2],
    /// Largest `‖ρ̌ψ − λψ‖` over the four spinors.
    pub residual: f64,
}

/// `B = (m − kᵢγⁱ)γ⁰ / (k⁰χ)`.
pub fn build_b(p: &FourMomentum, basis: &GammaBasis) -> Result<Matrix4C> {
    if p.omega_k == 0.0 {
        return Err(Error::ZeroChi);
    }
    let num = (Matrix4C::identity() * p.mass - basis.spatial_contraction(&p.kvec)) * *basis.gamma0();
    Ok(num.scale(ONE / (p.k0 * p.chi)))
}

/// `(k̸ + m)γ⁰ / (4k⁰)`.
pub fn rho_from_momentum(p: &FourMomentum, basis: &GammaBasis) -> Matrix4C {
    let k = slash(p, basis) + Matrix4C::identity() * p.mass;
    (k * *basis.gamma0()).scale(ONE / (p.k0 * 4.0))
}

/// `(I + χB)/4`.
pub fn rho_from_b(b: &Matrix4C, chi: C64) -> Matrix4C {
    (Matrix4C::identity() + b.scale(chi)) * 0.25
}

pub fn build_rho(p: &FourMomentum, basis: &GammaBasis) -> Result<PseudoDensity> {
    let b = build_b(p, basis)?;
    let rho = rho_from_momentum(p, basis);
    let dual_residual = rho.max_abs_diff(&rho_from_b(&b, p.chi));
    Ok(PseudoDensity {
        rho,
        b,
        chi: p.chi,
        momentum: *p,
        mode: p.mode,
        lambda_plus: (ONE + p.chi) * 0.25,
        lambda_minus: (ONE - p.chi) * 0.25,
        dual_residual,
    })
}

impl PseudoDensity {
    pub fn eigenvalues(&self) -> [C64; 2] {
        [self.lambda_plus, self.lambda_minus]
    }

    /// `‖𝔹ρ̌† − ρ̌𝔹‖_max`
    pub fn pseudo_hermiticity_residual(&self, basis: &GammaBasis) -> f64 {
        (basis.metric_b * self.rho.adjoint()).max_abs_diff(&(self.rho * basis.metric_b))
    }

    /// Hermitian and anti-hermitian parts, `ρ̌ = H₊ + H₋`.
    pub fn hermitian_split(&self) -> (Matrix4C, Matrix4C) {
        let adj = self.rho.adjoint();
        ((self.rho + adj) * 0.5, (self.rho - adj) * 0.5)
    }
}

/// `tr ρ̌²`
pub fn purity(rho: &PseudoDensity) -> C64 {
    (rho.rho * rho.rho).trace()
}

/// Principal-branch `artanh χ = ½ ln((1+χ)/(1−χ))`.
pub fn artanh(chi: C64) -> Result<C64> {
    if (chi - ONE).norm() < ARTANH_GUARD || (chi + ONE).norm() < ARTANH_GUARD {
        return Err(Error::ArtanhPole {
            re: chi.re,
            im: chi.im,
        });
    }
    Ok(((ONE + chi) / (ONE - chi)).ln() * 0.5)
}

/// `A = √(1−χ²)/4`, `α = artanh χ`, `β̌ = α/k⁰`, `ℋ = (kᵢγⁱ − m)γ⁰/χ`.
pub fn thermal_decompose(rho: &PseudoDensity, p: &FourMomentum, basis: &GammaBasis) -> Result<ThermalForm> {
    let chi = rho.chi;
    if chi == ZERO {
        return Err(Error::ZeroChi);
    }
    let alpha = artanh(chi)?;
    let a = (ONE - chi * chi).sqrt() * 0.25;
    let beta_check = alpha / p.k0;
    let h = ((basis.spatial_contraction(&p.kvec) - Matrix4C::identity() * p.mass) * *basis.gamma0())
        .scale(ONE / chi);
    Ok(ThermalForm {
        a,
        alpha,
        beta_check: beta_check.re,
        beta_check_imag: beta_check.im,
        h,
    })
}

impl ThermalForm {
    /// `e^{−β̌ℋ} / tr e^{−β̌ℋ}`
    pub fn reconstruct(&self) -> Result<Matrix4C> {
        let e = crate::linalg::mat_exp(&self.h.scale(c(-self.beta_check, 0.0)))?;
        Ok(e.scale(ONE / e.trace()))
    }

    /// `tr(β̌ ℋ)`
    pub fn beta_h_trace(&self) -> C64 {
        self.h.trace() * self.beta_check
    }

    /// `tr(β̌ ρ̌ ℋ)` for the matrix this form was built from.
    pub fn beta_rho_h_trace(&self, rho: &PseudoDensity) -> C64 {
        (rho.rho * self.h).trace() * self.beta_check
    }
}

/// `|ψ̌_{λ_E,λ_s}⟩ = √(m/ω) Ŝ |λ_E, λ_s⟩` with
/// `Ŝ = ((ω+m)I − (−1)^{λ_E} kᵢγⁱγ⁰) / √(2m(ω+m))`.
///
/// The eigenvalue belonging to each energy sign is picked per spinor by the
/// smaller residual and must be the same within each `λ_E` pair.
pub fn boosted_spinors(p: &FourMomentum, basis: &GammaBasis) -> Result<SpinorQuartet> {
    if !(p.mass > 0.0) {
        return Err(Error::MasslessSpinor);
    }
    let rho = build_rho(p, basis)?;
    let (w, m) = (p.omega_k, p.mass);
    let kg0 = basis.spatial_contraction(&p.kvec) * *basis.gamma0();
    let norm = (m / w).sqrt() / (2.0 * m * (w + m)).sqrt();
    let mut spinors = [[[ZERO; 4]; 2]; 2];
    let mut eigenvalues = [ZERO; 2];
    let mut residual: f64 = 0.0;
    for energy in 0..2usize {
        let sign = if energy == 0 { 1.0 } else { -1.0 };
        let s = (Matrix4C::identity() * (w + m) - kg0 * sign) * norm;
        let mut chosen: Option<C64> = None;
        for spin in 0..2usize {
            let psi = s.column(2 * energy + spin);
            let rpsi = rho.rho.mul_vec(&psi);
            let res = |lam: C64| {
                let d: Vector4C = std::array::from_fn(|i| rpsi[i] - psi[i] * lam);
                vec_norm(&d)
            };
            let (lam, r) = [rho.lambda_plus, rho.lambda_minus]
                .into_iter()
                .map(|lam| (lam, res(lam)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("two candidates");
            match chosen {
                None => chosen = Some(lam),
                Some(prev) if prev != lam => {
                    return Err(Error::NonDiagonalizable { residual: r.max(res(prev)) })
                }
                Some(_) => {}
            }
            residual = residual.max(r);
            spinors[energy][spin] = psi;
        }
        eigenvalues[energy] = chosen.expect("two spins visited");
    }
    Ok(SpinorQuartet {
        spinors,
        eigenvalues,
        residual,
    })
}

fn orthonormal_pair(a: &Vector4C, b: &Vector4C) -> [Vector4C; 2] {
    let na = vec_norm(a);
    let q0: Vector4C = std::array::from_fn(|i| a[i] / na);
    let proj = inner(&q0, b);
    let r: Vector4C = std::array::from_fn(|i| b[i] - q0[i] * proj);
    let nr = vec_norm(&r);
    [q0, std::array::from_fn(|i| r[i] / nr)]
}

/// Largest distance of the orthonormalized spin pair for each `λ_E` from the
/// eigenspace that [`eigen`] returns for the same eigenvalue.
pub fn spinor_subspace_residual(q: &SpinorQuartet, rho: &PseudoDensity) -> Result<f64> {
    let es = eigen(&rho.rho)?;
    let mut worst: f64 = 0.0;
    for energy in 0..2 {
        let lam = q.eigenvalues[energy];
        let mut idx: Vec<usize> = (0..4).collect();
        idx.sort_by(|&i, &j| {
            (es.eigenvalues[i] - lam)
                .norm()
                .total_cmp(&(es.eigenvalues[j] - lam).norm())
        });
        let eig = orthonormal_pair(&es.eigenvectors[idx[0]], &es.eigenvectors[idx[1]]);
        let spin = orthonormal_pair(&q.spinors[energy][0], &q.spinors[energy][1]);
        for v in &spin {
            let mut rest = *v;
            for e in &eig {
                let coef = inner(e, v);
                for i in 0..4 {
                    rest[i] -= e[i] * coef;
                }
            }
            worst = worst.max(vec_norm(&rest));
        }
    }
    Ok(worst)
}

/// Realigned matrix `M[(i,k),(j,l)] = ⟨i,j|ρ|k,l⟩`, row `2i+k`, column `2j+l`.
pub fn realign(m: &Matrix4C) -> Matrix4C {
    let mut out = Matrix4C::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = m.0[2 * i + j][2 * k + l];
                }
            }
        }
    }
    out
}

/// Singular values of the realigned matrix, descending.
pub fn realignment_spectrum(m: &Matrix4C) -> [f64; 4] {
    svd(&realign(m)).singular_values
}

/// Operator-Schmidt rank: singular values above `tol · σ₁`.
pub fn realignment_rank_of(m: &Matrix4C, tol: f64) -> usize {
    svd(&realign(m)).rank(tol)
}

pub fn realignment_rank(rho: &PseudoDensity, tol: f64) -> usize {
    realignment_rank_of(&rho.rho, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductTerm {
    pub weight: C64,
    pub first: Matrix2C,
    pub second: Matrix2C,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductDecomposition {
    pub terms: Vec<ProductTerm>,
    /// `‖Σ wᵢ Aᵢ⊗Bᵢ − ρ‖_max`
    pub residual: f64,
    /// `Σ wᵢ tr Aᵢ tr Bᵢ` over terms whose factors both have unit trace.
    pub weight_sum: C64,
    /// Terms with a traceless factor, excluded from `weight_sum`.
    pub traceless_terms: usize,
}

/// Rank-1 pieces of a 2×2 matrix: `(coefficient, piece)` with `Σ cᵢPᵢ = A`.
///
/// Spectral projectors `vᵢwᵢ†` (unit trace) when `A` is diagonalizable;
/// otherwise the SVD split, rescaled to unit trace where the trace is
/// nonzero and to unit norm where it is not.
fn rank_one_split(a: &Matrix2C) -> Vec<(C64, Matrix2C)> {
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Vec::new();
    }
    if let Ok(es) = eigen(a) {
        let v = es.vectors_matrix();
        if let Ok(vinv) = v.inverse() {
            let mut out = Vec::with_capacity(2);
            for i in 0..2 {
                let lam = es.eigenvalues[i];
                if lam.norm() <= SCHMIDT_CUT * scale {
                    continue;
                }
                let mut p = Matrix2C::zeros();
                for r in 0..2 {
                    for col in 0..2 {
                        p.0[r][col] = v.0[r][i] * vinv.0[i][col];
                    }
                }
                out.push((lam, p));
            }
            return out;
        }
    }
    let s = svd(a);
    let mut out = Vec::with_capacity(2);
    for i in 0..2 {
        let sigma = s.singular_values[i];
        if sigma <= SCHMIDT_CUT * scale {
            continue;
        }
        let piece = Matrix2C::outer(&s.u.column(i), &s.v.column(i));
        let tr = piece.trace();
        if tr.norm() > SCHMIDT_CUT {
            out.push((tr * sigma, piece.scale(ONE / tr)));
        } else {
            out.push((c(sigma, 0.0), piece));
        }
    }
    out
}

/// Weighted sum of rank-1 ⊗ rank-1 terms equal to `m`.
///
/// Operator-Schmidt terms come from the SVD of the realigned matrix; each
/// factor is split into rank-1 pieces by [`rank_one_split`].
pub fn product_decomposition_of(m: &Matrix4C) -> Result<ProductDecomposition> {
    let s = svd(&realign(m));
    let sigma1 = s.singular_values[0];
    let mut terms = Vec::new();
    for r in 0..4 {
        let sigma = s.singular_values[r];
        if sigma <= SCHMIDT_CUT * sigma1 || sigma == 0.0 {
            continue;
        }
        let mut a = Matrix2C::zeros();
        let mut b = Matrix2C::zeros();
        for i in 0..2 {
            for k in 0..2 {
                a.0[i][k] = s.u.0[2 * i + k][r] * sigma;
                b.0[i][k] = s.v.0[2 * i + k][r].conj();
            }
        }
        for (ca, pa) in rank_one_split(&a) {
            for (cb, pb) in rank_one_split(&b) {
                terms.push(ProductTerm {
                    weight: ca * cb,
                    first: pa,
                    second: pb,
                });
            }
        }
    }

    let mut sum = Matrix4C::zeros();
    let mut weight_sum = ZERO;
    let mut traceless_terms = 0;
    for t in &terms {
        sum += kron(&t.first, &t.second).scale(t.weight);
        let (ta, tb) = (t.first.trace(), t.second.trace());
        if (ta - ONE).norm() <= 1e-10 && (tb - ONE).norm() <= 1e-10 {
            weight_sum += t.weight;
        } else {
            traceless_terms += 1;
            weight_sum += t.weight * ta * tb;
        }
    }
    let residual = sum.max_abs_diff(m);
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    if residual > 1e-10 * scale.max(1.0) {
        return Err(Error::DecompositionFailure { residual });
    }
    Ok(ProductDecomposition {
        terms,
        residual,
        weight_sum,
        traceless_terms,
    })
}

pub fn product_decomposition(rho: &PseudoDensity) -> Result<ProductDecomposition> {
    product_decomposition_of(&rho.rho)
}

/// `σ₂/σ₁` of a 2×2 factor; zero for an exact rank-1 matrix.
pub fn rank_one_defect(a: &Matrix2C) -> f64 {
    let s = svd(a).singular_values;
    if s[0] == 0.0 {
        0.0
    } else {
        s[1] / s[0]
    }
}

fn check_branch(lam: C64) -> Result<()> {
    if lam.re <= 0.0 && lam.im.abs() <= 1e-15 {
        return Err(Error::BranchCutEigenvalue {
            re: lam.re,
            im: lam.im,
        });
    }
    Ok(())
}

/// `−(2λ₊ ln λ₊ + 2λ₋ ln λ₋)`, principal logs.
pub fn von_neumann_entropy(rho: &PseudoDensity) -> Result<C64> {
    let mut s = ZERO;
    for lam in rho.eigenvalues() {
        check_branch(lam)?;
        s -= lam * lam.ln() * 2.0;
    }
    Ok(s)
}

/// `−tr(ρ ln ρ)` through the matrix logarithm.
pub fn von_neumann_entropy_matrix(rho: &PseudoDensity) -> Result<C64> {
    Ok(-(rho.rho * mat_log(&rho.rho)?).trace())
}

/// `S(ρ) + tr[σ ln σ]` with `σ` the partial trace over `traced`.
pub fn conditional_entropy_over(rho: &PseudoDensity, traced: Subsystem) -> Result<C64> {
    let sigma = partial_trace(&rho.rho, traced);
    let mut reduced = ZERO;
    for lam in eigenvalues2(&sigma) {
        check_branch(lam)?;
        reduced += lam * lam.ln();
    }
    Ok(von_neumann_entropy(rho)? + reduced)
}

pub fn conditional_entropy(rho: &PseudoDensity) -> Result<C64> {
    conditional_entropy_over(rho, Subsystem::First)
}

/// `2 ln λ₊ + 2 ln λ₋`, the sum of principal logs of the spectrum.
pub fn log_det_rho(rho: &PseudoDensity) -> Result<C64> {
    let mut s = ZERO;
    for lam in rho.eigenvalues() {
        if lam.norm() < SINGULAR_EIGENVALUE {
            return Err(Error::SingularRho { modulus: lam.norm() });
        }
        s += lam.ln() * 2.0;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::dirac_basis;
    use crate::linalg::{eigen, Mat};
    use crate::modes::{momentum, Mode, SlabGeometry};
    use std::f64::consts::{LN_2, PI};

    fn lowest() -> (FourMomentum, PseudoDensity) {
        let g = SlabGeometry::unit(1.0);
        let p = momentum(&g, Mode::new(0, 0, 1, 0).unwrap()).unwrap();
        let r = build_rho(&p, &dirac_basis()).unwrap();
        (p, r)
    }

    /// Test point with `χ = 0`: all of `ρ` is `I/4`.
    fn maximally_mixed() -> PseudoDensity {
        let (p, mut r) = lowest();
        r.rho = Matrix4C::identity() * 0.25;
        r.chi = ZERO;
        r.lambda_plus = c(0.25, 0.0);
        r.lambda_minus = c(0.25, 0.0);
        r.momentum = p;
        r
    }

    #[test]
    fn b_at_rest_is_gamma0() {
        let basis = dirac_basis();
        let p = FourMomentum::new([0.0; 3], 1.3, 2.0).unwrap();
        assert!(build_b(&p, &basis).unwrap().max_abs_diff(basis.gamma0()) < 1e-15);
        let p = FourMomentum::new([0.0; 3], 1.3, 0.0).unwrap();
        assert_eq!(build_b(&p, &basis), Err(Error::ZeroChi));
    }

    #[test]
    fn lowest_mode_spectrum_and_purity() {
        let (_, r) = lowest();
        assert!((r.rho.trace() - ONE).norm() < 1e-14);
        assert!(r.dual_residual < 1e-13);
        let es = eigen(&r.rho).unwrap();
        let expect = [c(0.25, -0.25), c(0.25, -0.25), c(0.25, 0.25), c(0.25, 0.25)];
        for (a, b) in es.eigenvalues.iter().zip(expect) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(purity(&r).norm() < 1e-15);
    }

    #[test]
    fn purity_at_frequency_ratio_one_third() {
        let basis = dirac_basis();
        let p = FourMomentum::new([0.0, 0.0, PI], 3.0 * PI, 0.0).unwrap();
        let r = build_rho(&p, &basis).unwrap();
        let direct = (r.rho * r.rho).trace();
        assert!((purity(&r) - c(2.0 / 9.0, 0.0)).norm() < 1e-15);
        assert!((direct - c(2.0 / 9.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn thermal_form_of_lowest_mode() {
        let basis = dirac_basis();
        let (p, r) = lowest();
        let t = thermal_decompose(&r, &p, &basis).unwrap();
        assert!((t.alpha - c(0.0, -PI / 4.0)).norm() < 1e-15);
        assert!((t.beta_check + 0.25).abs() < 1e-15);
        assert!(t.beta_check_imag.abs() < 1e-15);
        assert!((t.a * t.alpha.cosh() - c(0.25, 0.0)).norm() < 1e-13);
        assert!((t.a * t.alpha.sinh() - r.chi * 0.25).norm() < 1e-13);
        assert!(t.reconstruct().unwrap().max_abs_diff(&r.rho) < 1e-10);
        assert_eq!(t.beta_h_trace(), ZERO);
        assert_eq!(artanh(ONE), Err(Error::ArtanhPole { re: 1.0, im: 0.0 }));
    }

    #[test]
    fn spinors_pair_positive_energy_with_lambda_plus() {
        let basis = dirac_basis();
        let p = FourMomentum::new([0.0, 0.0, 1.0], 3.0, 1.0).unwrap();
        let q = boosted_spinors(&p, &basis).unwrap();
        let r = build_rho(&p, &basis).unwrap();
        assert!(q.residual < 1e-12);
        assert_eq!(q.eigenvalues, [r.lambda_plus, r.lambda_minus]);
        assert!(spinor_subspace_residual(&q, &r).unwrap() < 1e-8);

        let rest = FourMomentum::new([0.0; 3], 3.0, 1.0).unwrap();
        let q = boosted_spinors(&rest, &basis).unwrap();
        for e in 0..2 {
            for s in 0..2 {
                let v = q.spinors[e][s];
                assert!((v[2 * e + s] - ONE).norm() < 1e-15);
            }
        }
        let massless = FourMomentum::new([0.0, 0.0, 1.0], 3.0, 0.0).unwrap();
        assert_eq!(boosted_spinors(&massless, &basis), Err(Error::MasslessSpinor));
    }

    #[test]
    fn realignment_rank_controls() {
        let (_, r) = lowest();
        assert!(realignment_rank(&r, 1e-10) >= 2);
        let a = Mat([[c(1.0, 2.0), c(0.5, 0.0)], [c(-0.3, 0.1), c(2.0, -1.0)]]);
        let b = Mat([[c(0.2, 0.0), c(0.0, 1.0)], [c(1.5, 0.5), c(-0.7, 0.3)]]);
        assert_eq!(realignment_rank_of(&kron(&a, &b), 1e-10), 1);
        assert_eq!(realignment_rank_of(&(Matrix4C::identity() * 0.25), 1e-10), 1);
    }

    #[test]
    fn component_obstruction_to_a_single_product() {
        // for A⊗B: ρ₀₂ρ₁₁ − ρ₁₃ρ₀₀ = A₀₁B₀₀A₀₀B₁₁ − A₀₁B₁₁A₀₀B₀₀ = 0
        let basis = dirac_basis();
        let g = SlabGeometry::unit(1.0);
        for mode in [Mode::new(1, 0, 1, 0), Mode::new(1, 1, 2, -1), Mode::new(0, 1, 1, 2)] {
            let p = momentum(&g, mode.unwrap()).unwrap();
            let r = build_rho(&p, &basis).unwrap().rho;
            assert_eq!(r.0[0][1], ZERO);
            let minor = r.0[0][2] * r.0[1][1] - r.0[1][3] * r.0[0][0];
            assert!(minor.norm() > 1e-3);
        }
    }

    #[test]
    fn product_decomposition_of_identity_and_mode() {
        let d = product_decomposition_of(&(Matrix4C::identity() * 0.25)).unwrap();
        assert!(d.residual < 1e-15);
        assert!((d.weight_sum - ONE).norm() < 1e-14);
        let basis = dirac_basis();
        let g = SlabGeometry::unit(1.0).with_mass(0.7);
        let p = momentum(&g, Mode::new(1, -1, 2, 1).unwrap()).unwrap();
        let r = build_rho(&p, &basis).unwrap();
        let d = product_decomposition(&r).unwrap();
        assert!(d.terms.len() <= 8);
        assert!(d.residual < 1e-10);
        assert!((d.weight_sum - ONE).norm() < 1e-10);
        for t in &d.terms {
            assert!(rank_one_defect(&t.first) < 1e-12);
            assert!(rank_one_defect(&t.second) < 1e-12);
        }
    }

    #[test]
    fn entropies_and_log_det() {
        let mixed = maximally_mixed();
        assert!((von_neumann_entropy(&mixed).unwrap() - c(4f64.ln(), 0.0)).norm() < 1e-15);
        assert!((conditional_entropy(&mixed).unwrap() - c(LN_2, 0.0)).norm() < 1e-15);
        assert!((log_det_rho(&mixed).unwrap() + c(256f64.ln(), 0.0)).norm() < 1e-13);

        let (_, r) = lowest();
        let s = von_neumann_entropy(&r).unwrap();
        let expect = (4.0 / 2f64.sqrt()).ln() + PI / 4.0;
        assert!((s - c(expect, 0.0)).norm() < 1e-14);
        assert!((von_neumann_entropy_matrix(&r).unwrap() - s).norm() < 1e-12);
        let first = conditional_entropy_over(&r, Subsystem::First).unwrap();
        let second = conditional_entropy_over(&r, Subsystem::Second).unwrap();
        assert!((first - (s - LN_2)).norm() < 1e-15);
        assert!((first - second).norm() < 1e-15);
        assert!((log_det_rho(&r).unwrap() + c(64f64.ln(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn pseudo_hermiticity_and_split() {
        let basis = dirac_basis();
        let (_, r) = lowest();
        assert!(r.pseudo_hermiticity_residual(&basis) < 1e-13);
        let (hp, hm) = r.hermitian_split();
        assert!(hp.is_hermitian(0.0));
        assert!(hm.adjoint().max_abs_diff(&(-hm)) == 0.0);
        assert!((hp + hm).max_abs_diff(&r.rho) < 1e-16);
        for which in [Subsystem::First, Subsystem::Second] {
            assert!(partial_trace(&r.rho, which).max_abs_diff(&(Matrix2C::identity() * 0.5)) < 1e-13);
        }
    }
}
