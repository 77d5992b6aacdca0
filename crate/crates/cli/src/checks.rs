//! Verification suites behind `casimir-qubit verify`.
//!
//! Each suite returns report entries; per-mode residuals are computed in
//! parallel, collected in sampling order and reduced with `max`, so the
//! report does not depend on the thread count.

use std::f64::consts::{LN_2, PI};

use casimir_qubit::casimir::{
    casimir_cutoff_oracle, casimir_zeta, det_slash_closed, effective_energy, slp_mode_check,
    zeta_factorization_check, CutoffConfig, Field,
};
use casimir_qubit::clifford::{dirac_basis, eta, GammaBasis};
use casimir_qubit::entropyenergy::{
    entropy_energy_pipeline, footnote_identity_check, gamma_equals_minus_entropy_check,
    matsubara_entropy_sum, thermodynamic_entropy, zero_temperature_summand, ConventionSet,
    DEFAULT_NMAX,
};
use casimir_qubit::linalg::{
    eigen, kron, partial_trace, Mat, Matrix2C, Matrix4C, Subsystem, C64, ONE,
};
use casimir_qubit::modes::{momentum, FourMomentum, Mode, ModeWindow, SlabGeometry};
use casimir_qubit::par;
use casimir_qubit::pseudodensity::{
    boosted_spinors, build_rho, conditional_entropy, conditional_entropy_over, log_det_rho,
    product_decomposition, purity, rank_one_defect, realignment_rank, realignment_rank_of,
    realignment_spectrum, spinor_subspace_residual, thermal_decompose, von_neumann_entropy,
    von_neumann_entropy_matrix,
};
use casimir_qubit::report::CheckEntry;
use casimir_qubit::zetareg::{log_cosh, matsubara_log_sum, matsubara_log_sum_truncated};
use casimir_qubit::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;

/// Seeded uniform sample of modes inside a window.
pub fn sample_modes(window: &ModeWindow, count: usize, seed: u64) -> Vec<Mode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (j, k, n) = (window.jmax as i64, window.kmax as i64, window.nmax as i64);
    (0..count)
        .map(|_| Mode {
            j: rng.random_range(-j..=j),
            k: rng.random_range(-k..=k),
            l: rng.random_range(1..=window.lmax as i64),
            n: rng.random_range(-n..=n),
        })
        .collect()
}

/// Seeded off-slab momenta, a third of them massless.
pub fn sample_momenta(count: usize, seed: u64) -> Vec<FourMomentum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let kvec = [
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
            ];
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let omega_n = sign * rng.random_range(0.1..10.0);
            let mass = if i % 3 == 0 { 0.0 } else { rng.random_range(0.1..3.0) };
            FourMomentum::new(kvec, omega_n, mass).expect("nonzero frequency")
        })
        .collect()
}

fn max(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a broken residual fails its check
    values
        .into_iter()
        .fold(0.0, |a: f64, b: f64| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

fn rotate_z(v: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]]
}

fn sorted_by_imag(mut v: Vec<C64>) -> Vec<C64> {
    v.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    v
}

pub fn clifford_suite(cfg: &RunConfig, basis: &GammaBasis) -> Vec<CheckEntry> {
    let g = &basis.gamma;
    let mut anti: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let expect = Matrix4C::identity() * (2.0 * eta(mu, nu));
            anti = anti.max(g[mu].anticommutator(&g[nu]).max_abs_diff(&expect));
        }
    }
    let herm0 = g[0].adjoint().max_abs_diff(&g[0]);
    let anti_herm = max((1..4).map(|i| g[i].adjoint().max_abs_diff(&(-g[i]))));
    let traces = max((0..4).map(|i| g[i].trace().norm()).chain((1..4).map(|i| (g[i] * g[0]).trace().norm())));
    let b = basis.metric_b;
    let involution = (b * b).max_abs_diff(&Matrix4C::identity());
    let b_herm = b.adjoint().max_abs_diff(&b);
    let b_inv = (b * basis.metric_b_inv).max_abs_diff(&Matrix4C::identity());
    let b_gamma0 = (b * g[0] + g[0] * b).max_abs();
    let b_spatial = max((1..4).map(|i| b.commutator(&g[i]).max_abs()));
    vec![
        CheckEntry::measured("clifford.anticommutator", "{gamma^mu, gamma^nu} = 2 eta^{mu nu}", anti, cfg.tol(1e-14)),
        CheckEntry::measured("clifford.gamma0_hermitian", "gamma^0 hermitian", herm0, cfg.tol(1e-15)),
        CheckEntry::measured("clifford.spatial_antihermitian", "gamma^i anti-hermitian", anti_herm, cfg.tol(1e-15)),
        CheckEntry::measured("clifford.traceless", "tr gamma_mu = tr gamma_i gamma^0 = 0", traces, cfg.tol(1e-14)),
        CheckEntry::measured("clifford.metric_b_involution", "metric B = gamma^1 gamma^2 gamma^3, B^2 = I", involution, cfg.tol(1e-14)),
        CheckEntry::measured("clifford.metric_b_inverse", "metric B inverse", b_inv, cfg.tol(1e-14)),
        CheckEntry::measured("clifford.metric_b_hermitian", "metric B hermitian", b_herm, cfg.tol(1e-14))
            .with_detail("B^dagger = +B for the constructed product"),
        CheckEntry::measured("clifford.metric_b_gamma0", "metric B anticommutes with gamma^0", b_gamma0, cfg.tol(1e-14)),
        CheckEntry::measured("clifford.metric_b_spatial", "metric B commutes with gamma^i", b_spatial, cfg.tol(1e-14)),
    ]
}

/// Residuals of the per-mode algebra, one array per mode.
#[derive(Debug, Clone, Copy, Default)]
struct AlgebraResiduals {
    trace: f64,
    b_involution: f64,
    b_trace: f64,
    dual: f64,
    spectrum: f64,
    purity: f64,
    pseudo_hermitian: f64,
    partial_trace: f64,
    split: f64,
    thermal: f64,
    beta_imag: f64,
    a_relations: f64,
    h_trace: f64,
    beta_h_trace: f64,
    entropy_imag: f64,
    entropy_paths: f64,
    conditional: f64,
    conditional_sym: f64,
    log_det: f64,
    rotation: f64,
    beta_negative: bool,
}

fn algebra_residuals(geom: &SlabGeometry, mode: Mode, basis: &GammaBasis) -> Result<AlgebraResiduals, Error> {
    let p = momentum(geom, mode)?;
    let r = build_rho(&p, basis)?;
    let id = Matrix4C::identity();
    let mut out = AlgebraResiduals {
        trace: (r.rho.trace() - ONE).norm(),
        b_involution: (r.b * r.b).max_abs_diff(&id),
        b_trace: r.b.trace().norm(),
        dual: r.dual_residual,
        pseudo_hermitian: r.pseudo_hermiticity_residual(basis),
        ..Default::default()
    };

    let expected = sorted_by_imag(vec![r.lambda_plus, r.lambda_plus, r.lambda_minus, r.lambda_minus]);
    let computed = sorted_by_imag(eigen(&r.rho)?.eigenvalues.to_vec());
    out.spectrum = max(expected.iter().zip(&computed).map(|(a, b)| (a - b).norm()));

    let ratio = p.frequency_ratio_squared();
    out.purity = (purity(&r) - C64::new(0.25 * (1.0 - ratio), 0.0)).norm();

    let half = Matrix2C::identity() * 0.5;
    out.partial_trace = partial_trace(&r.rho, Subsystem::First)
        .max_abs_diff(&half)
        .max(partial_trace(&r.rho, Subsystem::Second).max_abs_diff(&half));
    let (hp, hm) = r.hermitian_split();
    out.split = (hp + hm)
        .max_abs_diff(&r.rho)
        .max(hp.adjoint().max_abs_diff(&hp))
        .max(hm.adjoint().max_abs_diff(&(-hm)));

    let t = thermal_decompose(&r, &p, basis)?;
    out.thermal = t.reconstruct()?.max_abs_diff(&r.rho);
    out.beta_imag = t.beta_check_imag.abs();
    out.beta_negative = t.beta_check < 0.0;
    out.a_relations = (t.a * t.alpha.cosh() - C64::new(0.25, 0.0))
        .norm()
        .max((t.a * t.alpha.sinh() - r.chi * 0.25).norm());
    out.h_trace = t.h.trace().norm();
    out.beta_h_trace = t.beta_h_trace().norm();

    let s = von_neumann_entropy(&r)?;
    out.entropy_imag = s.im.abs();
    out.entropy_paths = (von_neumann_entropy_matrix(&r)? - s).norm();
    let cond = conditional_entropy(&r)?;
    out.conditional = (cond - (s - LN_2)).norm();
    out.conditional_sym = (conditional_entropy_over(&r, Subsystem::Second)? - cond).norm();
    let ld = log_det_rho(&r)?;
    out.log_det = (ld - C64::new(2.0 * ((1.0 + ratio) / 16.0).ln(), 0.0)).norm();

    let mut q = p;
    q.kvec = rotate_z(p.kvec, 0.7 + 0.1 * mode.n as f64);
    let rotated = sorted_by_imag(eigen(&build_rho(&q, basis)?.rho)?.eigenvalues.to_vec());
    out.rotation = max(rotated.iter().zip(&computed).map(|(a, b)| (a - b).norm()));
    Ok(out)
}

pub fn pseudodensity_suite(cfg: &RunConfig, modes: &[Mode], basis: &GammaBasis) -> Vec<CheckEntry> {
    let geom = cfg.geometry;
    let results = par::map_ordered(modes, |&m| algebra_residuals(&geom, m, basis));
    let mut rs = Vec::with_capacity(results.len());
    for (m, r) in modes.iter().zip(results) {
        match r {
            Ok(r) => rs.push(r),
            Err(e) => {
                return vec![CheckEntry::failed(
                    "rho.construction",
                    "rho = (kslash + m) gamma^0 / (4 k^0)",
                    format!("mode {m:?}: {e}"),
                )]
            }
        }
    }
    let m = |f: fn(&AlgebraResiduals) -> f64| max(rs.iter().map(f));
    let count = format!("{} modes", rs.len());
    let negative = rs.iter().filter(|r| r.beta_negative).count();
    vec![
        CheckEntry::measured("rho.trace", "tr rho = 1", m(|r| r.trace), cfg.tol(1e-14)).with_detail(count.clone()),
        CheckEntry::measured("b.involution", "B^2 = I", m(|r| r.b_involution), cfg.tol(1e-13)),
        CheckEntry::measured("b.traceless", "tr B = 0", m(|r| r.b_trace), cfg.tol(1e-13)),
        CheckEntry::measured("rho.dual_construction", "(kslash + m) gamma^0/(4k^0) = (I + chi B)/4", m(|r| r.dual), cfg.tol(1e-13)),
        CheckEntry::measured("rho.spectrum", "lambda = (1 +- chi)/4, multiplicity 2", m(|r| r.spectrum), cfg.tol(1e-12)),
        CheckEntry::measured("rho.purity", "tr rho^2 = (1 - omega_k^2/omega_n^2)/4", m(|r| r.purity), cfg.tol(1e-13)),
        CheckEntry::measured("rho.pseudo_hermiticity", "B rho^dagger = rho B", m(|r| r.pseudo_hermitian), cfg.tol(1e-13)),
        CheckEntry::measured("rho.partial_trace", "tr_A rho = I_2/2", m(|r| r.partial_trace), cfg.tol(1e-13)),
        CheckEntry::measured("rho.hermitian_split", "rho = hermitian + anti-hermitian", m(|r| r.split), cfg.tol(1e-15)),
        CheckEntry::measured("rho.rotation_invariance", "spectrum depends on |k| only", m(|r| r.rotation), cfg.tol(1e-12)),
        CheckEntry::measured("thermal.reconstruction", "rho = exp(-beta H)/tr exp(-beta H)", m(|r| r.thermal), cfg.tol(1e-10)),
        CheckEntry::measured("thermal.beta_real", "pseudo-inverse temperature is real", m(|r| r.beta_imag), cfg.tol(1e-13)),
        CheckEntry::measured("thermal.a_alpha", "A cosh alpha = 1/4, A sinh alpha = chi/4", m(|r| r.a_relations), cfg.tol(1e-13)),
        CheckEntry::measured("thermal.h_traceless", "tr H = 0", m(|r| r.h_trace), cfg.tol(1e-13)),
        CheckEntry::measured("thermal.beta_h_trace", "tr(beta H) = 0", m(|r| r.beta_h_trace), cfg.tol(1e-15)),
        CheckEntry::info(
            "thermal.beta_sign",
            "pseudo-temperature sign",
            format!("beta_check < 0 on {negative} of {} sampled modes (principal branch)", rs.len()),
        ),
        CheckEntry::measured("entropy.real", "S = -tr rho ln rho is real", m(|r| r.entropy_imag), cfg.tol(1e-12)),
        CheckEntry::measured("entropy.two_paths", "eigenvalue and matrix-log entropy agree", m(|r| r.entropy_paths), cfg.tol(1e-12)),
        CheckEntry::measured("entropy.conditional", "conditional entropy = S - ln 2", m(|r| r.conditional), cfg.tol(1e-13)),
        CheckEntry::measured("entropy.conditional_symmetric", "same value tracing either qubit", m(|r| r.conditional_sym), cfg.tol(1e-13)),
        CheckEntry::measured("log_det.identity", "ln det rho = 2 ln((1 + omega_k^2/omega_n^2)/16)", m(|r| r.log_det), cfg.tol(1e-12)),
    ]
}

pub fn spinor_suite(cfg: &RunConfig, modes: &[Mode], basis: &GammaBasis) -> Vec<CheckEntry> {
    let anchor = "boosted spinors sqrt(m/omega) S_k |lambda_E, lambda_s>";
    let geom = cfg.geometry;
    if geom.mass <= 0.0 {
        let reason = Error::MasslessSpinor.to_string();
        return vec![
            CheckEntry::skipped("spinor.eigenvectors", anchor, reason.clone()),
            CheckEntry::skipped("spinor.subspace", anchor, reason),
        ];
    }
    let results = par::map_ordered(modes, |&m| -> Result<(f64, f64, bool), Error> {
        let p = momentum(&geom, m)?;
        let q = boosted_spinors(&p, basis)?;
        let r = build_rho(&p, basis)?;
        let angle = spinor_subspace_residual(&q, &r)?;
        Ok((q.residual, angle, q.eigenvalues == [r.lambda_plus, r.lambda_minus]))
    });
    let mut residual: f64 = 0.0;
    let mut angle: f64 = 0.0;
    let mut plus_first = 0;
    for (m, r) in modes.iter().zip(results) {
        match r {
            Ok((a, b, c)) => {
                residual = residual.max(a);
                angle = angle.max(b);
                plus_first += c as usize;
            }
            Err(e) => return vec![CheckEntry::failed("spinor.eigenvectors", anchor, format!("mode {m:?}: {e}"))],
        }
    }
    vec![
        CheckEntry::measured("spinor.eigenvectors", anchor, residual, cfg.tol(1e-10)),
        CheckEntry::measured("spinor.subspace", "spin pairs span the eigenspaces", angle, cfg.tol(1e-8)),
        CheckEntry::measured(
            "spinor.energy_assignment",
            "lambda_E = 0 pairs with (1 + chi)/4",
            (modes.len() - plus_first) as f64,
            0.0,
        )
        .with_detail(format!("{plus_first} of {} modes pair positive energy with lambda_plus", modes.len())),
    ]
}

pub fn separability_suite(cfg: &RunConfig, modes: &[Mode], basis: &GammaBasis) -> Vec<CheckEntry> {
    let geom = cfg.geometry;
    let results = par::map_ordered(modes, |&m| -> Result<(f64, usize), Error> {
        let r = build_rho(&momentum(&geom, m)?, basis)?;
        let s = realignment_spectrum(&r.rho);
        Ok((s[1] / s[0], realignment_rank(&r, 1e-10)))
    });
    let mut ratio = f64::INFINITY;
    let mut rank = usize::MAX;
    for r in results {
        match r {
            Ok((a, b)) => {
                ratio = ratio.min(a);
                rank = rank.min(b);
            }
            Err(e) => return vec![CheckEntry::failed("separability.rank", "realignment rank", e.to_string())],
        }
    }
    // control: explicit products of seeded random 2×2 factors
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let mut control: f64 = 0.0;
    let mut control_rank = 0;
    for _ in 0..50 {
        let mut f = || -> Matrix2C {
            Mat(std::array::from_fn(|_| {
                std::array::from_fn(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            }))
        };
        let (a, b) = (f(), f());
        let prod = kron(&a, &b);
        let s = realignment_spectrum(&prod);
        control = control.max(s[1] / s[0]);
        control_rank = control_rank.max(realignment_rank_of(&prod, 1e-10));
    }
    let ident = realignment_rank_of(&(Matrix4C::identity() * 0.25), 1e-10);
    vec![
        CheckEntry::at_least("separability.sigma_ratio", "rho is not a single tensor product", ratio, 0.1)
            .with_detail(format!("minimum sigma_2/sigma_1 over {} modes", modes.len())),
        CheckEntry::at_least("separability.rank", "realignment rank >= 2", rank as f64, 1.0),
        CheckEntry::measured("separability.product_control", "realignment rank 1 for A x B", control, cfg.tol(1e-12))
            .with_detail(format!("max rank {control_rank}, identity rank {ident}")),
    ]
}

pub fn decomposition_suite(cfg: &RunConfig, modes: &[Mode], basis: &GammaBasis) -> Vec<CheckEntry> {
    let anchor = "rho = sum_k p_k rho_1^k x rho_2^k with rank-1 factors";
    let geom = cfg.geometry;
    let results = par::map_ordered(modes, |&m| -> Result<(f64, f64, f64, usize, bool), Error> {
        let r = build_rho(&momentum(&geom, m)?, basis)?;
        let d = product_decomposition(&r)?;
        let defect = max(d.terms.iter().map(|t| rank_one_defect(&t.first).max(rank_one_defect(&t.second))));
        let non_positive = d
            .terms
            .iter()
            .any(|t| t.weight.im.abs() > 1e-12 || t.weight.re < 0.0);
        Ok((d.residual, (d.weight_sum - ONE).norm(), defect, d.terms.len(), non_positive))
    });
    let (mut res, mut wsum, mut defect, mut terms, mut nonpos) = (0.0f64, 0.0f64, 0.0f64, 0usize, 0usize);
    for r in results {
        match r {
            Ok((a, b, c, d, e)) => {
                res = res.max(a);
                wsum = wsum.max(b);
                defect = defect.max(c);
                terms = terms.max(d);
                nonpos += e as usize;
            }
            Err(e) => return vec![CheckEntry::failed("decomposition.residual", anchor, e.to_string())],
        }
    }
    vec![
        CheckEntry::measured("decomposition.residual", anchor, res, cfg.tol(1e-10)),
        CheckEntry::measured("decomposition.weight_sum", "sum_k p_k = 1", wsum, cfg.tol(1e-10)),
        CheckEntry::measured("decomposition.rank_one", "factors are rank 1", defect, cfg.tol(1e-12)),
        CheckEntry::measured("decomposition.term_count", "at most 8 terms", terms as f64, 8.0),
        CheckEntry::info(
            "decomposition.weights",
            "weights need not be real and positive",
            format!("{nonpos} of {} modes have a weight off the positive real axis", modes.len()),
        ),
    ]
}

pub fn slp_suite(cfg: &RunConfig, count: usize, basis: &GammaBasis) -> Vec<CheckEntry> {
    let momenta = sample_momenta(count, cfg.seed ^ 0x51f);
    let results = par::map_ordered(&momenta, |p| {
        let r = slp_mode_check(p, basis);
        let det = (casimir_qubit::clifford::slash(p, basis) + Matrix4C::identity() * p.mass).det();
        let closed = det_slash_closed(p);
        (r.relative, (det - closed).norm() / closed.norm())
    });
    let massive = momenta.iter().filter(|p| p.mass > 0.0).count();
    vec![
        CheckEntry::measured("slp.mode_identity", "(omega_n^2 + omega_k^2)^4 = det(kslash + m)^2", max(results.iter().map(|r| r.0)), cfg.tol(1e-12))
            .with_detail(format!("{count} momenta, {massive} massive")),
        CheckEntry::measured("slp.det_closed_form", "det(kslash + m) = ((k^0)^2 - omega_k^2)^2", max(results.iter().map(|r| r.1)), cfg.tol(1e-12)),
    ]
}

pub fn footnote_suite(cfg: &RunConfig) -> Vec<CheckEntry> {
    match footnote_identity_check(&cfg.geometry, cfg.pmax.max(2)) {
        Ok(entries) => entries
            .into_iter()
            .map(|e| match cfg.tolerance {
                Some(t) => e.with_tolerance(t),
                None => e,
            })
            .collect(),
        Err(e) => vec![CheckEntry::failed("footnote", "footnote identities", e.to_string())],
    }
}

/// The fixed 20-point `(β, ω)` grid for the Matsubara closed form.
pub fn matsubara_grid() -> Vec<(f64, f64)> {
    let mut grid = Vec::with_capacity(20);
    for beta in [0.5, 1.0, 2.0, 4.0, 8.0] {
        for omega in [0.3, 1.0, PI, 7.0] {
            grid.push((beta, omega));
        }
    }
    grid
}

pub fn matsubara_suite(cfg: &RunConfig) -> Vec<CheckEntry> {
    let grid = matsubara_grid();
    let closed = par::map_ordered(&grid, |&(beta, omega)| -> Result<f64, Error> {
        let t = matsubara_log_sum_truncated(omega, beta, 5000)?;
        Ok((t.value - matsubara_log_sum(omega, beta)).abs())
    });
    let closed: Result<Vec<f64>, Error> = closed.into_iter().collect();
    let mut out = Vec::new();
    match closed {
        Ok(v) => out.push(
            CheckEntry::measured("matsubara.closed_form", "sum_n ln(1 + omega^2/omega_n^2) = 2 ln cosh(beta omega/2)", max(v), cfg.tol(1e-9))
                .with_detail(format!("{} (beta, omega) points", grid.len())),
        ),
        Err(e) => out.push(CheckEntry::failed("matsubara.closed_form", "Matsubara closed form", e.to_string())),
    }
    let zero_t: Result<Vec<f64>, Error> = [0.3, 1.0, PI, 7.0]
        .iter()
        .map(|&w| Ok((zero_temperature_summand(w, 50.0 / w)? - 2.0 * w).abs() / (2.0 * w)))
        .collect();
    match zero_t {
        Ok(v) => out.push(CheckEntry::measured(
            "matsubara.zero_temperature",
            "beta^-1 sum_n 2 ln(omega_n^2 + omega^2) -> 2 omega",
            max(v),
            cfg.tol(1e-9),
        )),
        Err(e) => out.push(CheckEntry::failed("matsubara.zero_temperature", "zero temperature", e.to_string())),
    }
    let conv = ConventionSet::default();
    let spatial = [(0, 0, 1), (1, 0, 1), (1, -1, 2)];
    let per_mode: Result<Vec<f64>, Error> = spatial
        .iter()
        .map(|&s| {
            let r = matsubara_entropy_sum(&cfg.geometry, s, &conv, DEFAULT_NMAX, 1e-9)?;
            Ok((r.value - r.closed_form).abs())
        })
        .collect();
    match per_mode {
        Ok(v) => out.push(CheckEntry::measured(
            "matsubara.entropy_sum",
            "sum_n ln det rho (regularized constant) = 4 ln cosh(beta omega_k/2)",
            max(v),
            cfg.tol(1e-9),
        )),
        Err(e) => out.push(CheckEntry::failed("matsubara.entropy_sum", "entropy sum", e.to_string())),
    }
    out
}

pub fn casimir_suite(cfg: &RunConfig) -> Vec<CheckEntry> {
    let mut out = Vec::new();
    let cutoff = CutoffConfig {
        delta_list: cfg.delta_grid.clone(),
        relative_to_separation: true,
    };
    let mut ls = vec![0.5, 1.0, 2.0];
    if !ls.contains(&cfg.geometry.l) {
        ls.push(cfg.geometry.l);
    }
    let anchor = "E_c = -pi^2/(1440 L^3) per scalar dof";
    let mut zeta_err: f64 = 0.0;
    let mut fermion_err: f64 = 0.0;
    let mut agree: f64 = 0.0;
    let mut scaling: f64 = 0.0;
    for &l in &ls {
        let expect = -PI * PI / (1440.0 * l.powi(3));
        match (casimir_zeta(l, Field::ScalarPerDof), casimir_zeta(l, Field::DiracFermion)) {
            (Ok(s), Ok(f)) => {
                zeta_err = zeta_err.max(((s.energy_per_area - expect) / expect).abs());
                fermion_err = fermion_err.max(((f.energy_per_area - 2.0 * expect) / expect).abs());
                match casimir_cutoff_oracle(l, &cutoff) {
                    Ok(c) => {
                        agree = agree.max(((c.energy_per_area - s.energy_per_area) / s.energy_per_area).abs());
                        if let Ok(c2) = casimir_cutoff_oracle(2.0 * l, &cutoff) {
                            scaling = scaling.max(((8.0 * c2.energy_per_area - c.energy_per_area) / c.energy_per_area).abs());
                        }
                    }
                    Err(e) => out.push(CheckEntry::failed(format!("casimir.cutoff.L{l}"), "cutoff oracle", e.to_string())),
                }
            }
            (Err(e), _) | (_, Err(e)) => out.push(CheckEntry::failed(format!("casimir.zeta.L{l}"), anchor, e.to_string())),
        }
    }
    let ls_txt = format!("L in {ls:?}");
    out.push(CheckEntry::measured("casimir.zeta_scalar", anchor, zeta_err, cfg.tol(1e-14)).with_detail(ls_txt.clone()));
    out.push(CheckEntry::measured("casimir.zeta_fermion", "E_c = -pi^2/(720 L^3) for the Dirac field", fermion_err, cfg.tol(1e-14)));
    out.push(
        CheckEntry::measured("casimir.cutoff_agreement", "exponential cutoff oracle matches zeta", agree, cfg.tol(1e-3))
            .with_detail(format!("{ls_txt}, delta/L grid {:?}", cfg.delta_grid)),
    );
    out.push(CheckEntry::measured("casimir.cutoff_scaling", "cutoff energy scales as L^-3", scaling, cfg.tol(1e-3)));

    match casimir_zeta(cfg.geometry.l, Field::ScalarPerDof) {
        Ok(ec) => {
            let same = effective_energy(&ec, 0.0, 1.0).map(|v| (v - ec.energy_per_area).abs());
            let shift = effective_energy(&ec, 32.0 * PI * PI, 1.0)
                .map(|v| (v - (ec.energy_per_area - (2.0 - 2.0 * LN_2))).abs());
            match (same, shift) {
                (Ok(a), Ok(b)) => {
                    out.push(CheckEntry::measured("casimir.effective_identity", "E_eff = E_c when C_2 = 0", a, 0.0));
                    out.push(CheckEntry::measured(
                        "casimir.effective_digamma",
                        "E_eff = E_c + C_2 (psi(1) - psi(-1/2))/(32 pi^2 l)",
                        b,
                        cfg.tol(1e-13),
                    ));
                }
                (Err(e), _) | (_, Err(e)) => out.push(CheckEntry::failed("casimir.effective", "effective energy", e.to_string())),
            }
        }
        Err(e) => out.push(CheckEntry::failed("casimir.effective", "effective energy", e.to_string())),
    }

    let fact: Result<Vec<f64>, Error> = [(2.0, vec![1.0]), (3.0, vec![1.0, 4.0, 9.0])]
        .iter()
        .map(|(s, spec)| {
            let (l, r) = zeta_factorization_check(*s, spec, None)?;
            Ok(((l - r) / r).abs())
        })
        .collect();
    match fact {
        Ok(v) => out.push(CheckEntry::measured(
            "casimir.zeta_factorization",
            "zeta[D](s) = Gamma(s - 1/2)/(Gamma(s) sqrt(4 pi)) zeta[D_spatial](s - 1/2)",
            max(v),
            cfg.tol(1e-8),
        )),
        Err(e) => out.push(CheckEntry::failed("casimir.zeta_factorization", "zeta factorization", e.to_string())),
    }
    out
}

pub fn entropy_energy_suite(cfg: &RunConfig) -> Vec<CheckEntry> {
    let conv = ConventionSet::default();
    let stamps = conv.stamps();
    let anchor = "E_c = lim beta^-1 S_check";
    let mut out = Vec::new();
    if cfg.geometry.mass != 0.0 {
        out.push(CheckEntry::skipped("entropy_energy.magnitude", anchor, "pipeline needs m = 0"));
        return out;
    }
    let mut values = Vec::new();
    let mut worst: f64 = 0.0;
    for l in [0.5, 1.0, 2.0] {
        let g = cfg.geometry.with_separation(l);
        match entropy_energy_pipeline(&g, &cfg.beta_grid, &conv) {
            Ok(r) => {
                worst = worst.max(r.magnitude_relative_error);
                values.push((l, r));
            }
            Err(e) => {
                out.push(CheckEntry::failed(format!("entropy_energy.L{l}"), anchor, e.to_string()).with_stamps(stamps.clone()));
                return out;
            }
        }
    }
    let unit = &values[1].1;
    let unit_err = ((unit.extrapolated.abs() - PI * PI / 720.0) / (PI * PI / 720.0)).abs();
    out.push(
        CheckEntry::measured("entropy_energy.magnitude", "|beta^-1 S_check| = pi^2/(720 L^3) at L = 1", unit_err, cfg.tol(1e-3))
            .with_stamps(stamps.clone())
            .with_detail(format!("extrapolated {:.16e}, uncertainty {:e}", unit.extrapolated, unit.uncertainty)),
    );
    out.push(
        CheckEntry::measured("entropy_energy.reference", "|beta^-1 S_check| matches |casimir_zeta(L, fermion)|", worst, cfg.tol(1e-3))
            .with_stamps(stamps.clone()),
    );
    let scaling = max(values.iter().map(|(l, r)| ((r.extrapolated * l.powi(3) - unit.extrapolated) / unit.extrapolated).abs()));
    out.push(
        CheckEntry::measured("entropy_energy.scaling", "beta^-1 S_check scales as L^-3", scaling, cfg.tol(1e-3))
            .with_stamps(stamps.clone()),
    );
    out.push(
        CheckEntry::info(
            "entropy_energy.sign",
            "Gamma = -S_check sign chain",
            format!(
                "under the recorded conventions beta^-1 S_check -> {:.16e} while E_c = {:.16e}; the magnitude is asserted, the sign is recorded",
                unit.extrapolated, unit.reference
            ),
        )
        .with_stamps(stamps.clone()),
    );
    out.push(CheckEntry::info(
        "entropy_energy.ln2_ordering",
        "ln 2 adjustment before or after the mode sum",
        format!(
            "the orderings differ by -4 ln 2 x Z(0) = {}; Z(0) per area vanishes via zeta(-2) = 0",
            unit.ln2_bucket
        ),
    ));
    out
}

pub fn thermodynamic_suite(cfg: &RunConfig) -> Vec<CheckEntry> {
    let omega = (PI / cfg.geometry.l).hypot(cfg.geometry.mass);
    let values: Vec<f64> = cfg.beta_grid.iter().map(|&b| thermodynamic_entropy(omega, b)).collect();
    let monotone = values.windows(2).all(|w| w[1] < w[0]);
    let last = values.last().copied().unwrap_or(f64::NAN);
    let mut e = CheckEntry::measured("thermo.zero_temperature", "S_T -> 0 as beta -> infinity", last, cfg.tol(1e-6))
        .with_detail(format!("lowest mode omega = {omega}, beta grid {:?}", cfg.beta_grid));
    if !monotone {
        e = CheckEntry::failed("thermo.zero_temperature", "S_T decreases with beta", format!("values {values:?}"));
    }
    // one closed-form spot check: x = 1 gives 4[ln(2 cosh 1) − tanh 1]
    let spot = (thermodynamic_entropy(2.0, 1.0) - 4.0 * (LN_2 + log_cosh(1.0) - 1f64.tanh())).abs();
    vec![
        e,
        CheckEntry::measured("thermo.closed_form", "S_T = 4[ln(2 cosh x) - x tanh x]", spot, cfg.tol(1e-14)),
    ]
}

pub fn gamma_chain_suite(cfg: &RunConfig, basis: &GammaBasis) -> Vec<CheckEntry> {
    let spatial = [(0, 0, 1), (1, 0, 1), (-1, 2, 2)];
    match gamma_equals_minus_entropy_check(&cfg.geometry, &spatial, 16, &ConventionSet::default(), basis) {
        Ok(entries) => entries
            .into_iter()
            .map(|e| match cfg.tolerance {
                Some(t) => e.with_tolerance(t),
                None => e,
            })
            .collect(),
        Err(e) => vec![CheckEntry::failed("gamma_entropy", "Gamma = -S_check", e.to_string())],
    }
}

/// Every suite, in report order.
pub fn run_all(cfg: &RunConfig) -> Vec<CheckEntry> {
    let basis = dirac_basis();
    let modes = sample_modes(&cfg.window, cfg.samples, cfg.seed);
    let few = &modes[..modes.len().min(200)];
    let mut out = clifford_suite(cfg, &basis);
    out.extend(pseudodensity_suite(cfg, &modes, &basis));
    out.extend(spinor_suite(cfg, few, &basis));
    out.extend(separability_suite(cfg, &modes, &basis));
    out.extend(decomposition_suite(cfg, few, &basis));
    out.extend(slp_suite(cfg, 500, &basis));
    out.extend(footnote_suite(cfg));
    out.extend(matsubara_suite(cfg));
    out.extend(casimir_suite(cfg));
    out.extend(entropy_energy_suite(cfg));
    out.extend(thermodynamic_suite(cfg));
    out.extend(gamma_chain_suite(cfg, &basis));
    out
}
