//! Subcommand bodies. Each returns the full text to write.

use casimir_qubit::casimir::{casimir_cutoff_oracle, casimir_zeta, CasimirResult, CutoffConfig, Field};
use casimir_qubit::clifford::dirac_basis;
use casimir_qubit::entropyenergy::{entropy_energy_pipeline, ConventionSet, EntropyEnergyResult};
use casimir_qubit::linalg::eigen;
use casimir_qubit::modes::{momentum, Mode};
use casimir_qubit::pseudodensity::{
    boosted_spinors, build_rho, conditional_entropy, log_det_rho, purity, thermal_decompose,
    von_neumann_entropy,
};
use casimir_qubit::report::summarize;
use casimir_qubit::zetareg;
use casimir_qubit::MatsubaraFamily;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::checks::run_all;
use crate::config::{Format, MethodArg, RunConfig};
use crate::output::{self, sci, sci_json, to_json, Cx, VerificationReport, SCHEMA, TOOL};
use crate::{CliError, Outcome};

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let checks = run_all(cfg);
    let summary = summarize(&checks);
    let text = match cfg.format {
        Format::Json => to_json(&VerificationReport {
            schema: SCHEMA,
            tool: TOOL,
            config: cfg,
            summary,
            checks: &checks,
        })?,
        Format::Csv => output::checks_csv(&checks)?,
    };
    Ok(Outcome {
        text,
        failed: summary.fail > 0,
    })
}

/// Casimir energy per area for the configured field, method and `L`.
pub fn energy(cfg: &RunConfig) -> Result<CasimirResult, CliError> {
    let field: Field = cfg.field.into();
    let l = cfg.geometry.l;
    Ok(match cfg.method {
        MethodArg::Zeta => casimir_zeta(l, field)?,
        MethodArg::Cutoff => {
            let cutoff = CutoffConfig {
                delta_list: cfg.delta_grid.clone(),
                relative_to_separation: true,
            };
            let scalar = casimir_cutoff_oracle(l, &cutoff)?;
            CasimirResult {
                energy_per_area: scalar.energy_per_area * field.factor(),
                uncertainty: scalar.uncertainty * field.factor(),
                field,
                ..scalar
            }
        }
    })
}

#[derive(Serialize)]
struct EnergyRecord {
    schema: &'static str,
    energy_per_area: Box<RawValue>,
    uncertainty: Box<RawValue>,
    l: f64,
    field: Field,
    method: casimir_qubit::casimir::Method,
}

pub fn cmd_energy(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let r = energy(cfg)?;
    let text = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string(&EnergyRecord {
                schema: SCHEMA,
                energy_per_area: sci_json(r.energy_per_area)?,
                uncertainty: sci_json(r.uncertainty)?,
                l: r.l,
                field: r.field,
                method: r.method,
            })?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["l", "field", "method", "energy_per_area", "uncertainty"])?;
            w.write_record([
                r.l.to_string(),
                serde_json::to_value(r.field)?.as_str().unwrap_or_default().to_string(),
                serde_json::to_value(r.method)?.as_str().unwrap_or_default().to_string(),
                sci(r.energy_per_area),
                sci(r.uncertainty),
            ])?;
            output::finish_csv(w)?
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeView {
    Rho,
    Thermal,
    Spectrum,
    Entropy,
    Spinors,
}

#[derive(Serialize)]
struct ModeHeader {
    schema: &'static str,
    mode: Mode,
    k0: Cx,
    kvec: [f64; 3],
    omega_n: f64,
    omega_k: f64,
    chi: Cx,
}

#[derive(Serialize)]
struct ModeRecord<T: Serialize> {
    #[serde(flatten)]
    header: ModeHeader,
    #[serde(flatten)]
    body: T,
}

pub fn cmd_mode(cfg: &RunConfig, mode: Mode, view: ModeView) -> Result<Outcome, CliError> {
    let basis = dirac_basis();
    let p = momentum(&cfg.geometry, mode)?;
    let r = build_rho(&p, &basis)?;
    let header = ModeHeader {
        schema: SCHEMA,
        mode,
        k0: p.k0.into(),
        kvec: p.kvec,
        omega_n: p.omega_n,
        omega_k: p.omega_k,
        chi: r.chi.into(),
    };
    let body = match view {
        ModeView::Rho => serde_json::json!({
            "rho": output::matrix(&r.rho),
            "b": output::matrix(&r.b),
            "trace": Cx::from(r.rho.trace()),
            "purity": Cx::from(purity(&r)),
        }),
        ModeView::Thermal => {
            let t = thermal_decompose(&r, &p, &basis)?;
            serde_json::json!({
                "a": Cx::from(t.a),
                "alpha": Cx::from(t.alpha),
                "beta_check": t.beta_check,
                "beta_check_imag": t.beta_check_imag,
                "h": output::matrix(&t.h),
                "reconstruction_residual": t.reconstruct()?.max_abs_diff(&r.rho),
            })
        }
        ModeView::Spectrum => {
            let es = eigen(&r.rho)?;
            serde_json::json!({
                "eigenvalues": output::vector(&es.eigenvalues),
                "lambda_plus": Cx::from(r.lambda_plus),
                "lambda_minus": Cx::from(r.lambda_minus),
            })
        }
        ModeView::Entropy => {
            let s = von_neumann_entropy(&r)?;
            serde_json::json!({
                "entropy": s.re,
                "entropy_imag": s.im,
                "conditional_entropy": conditional_entropy(&r)?.re,
                "log_det": Cx::from(log_det_rho(&r)?),
            })
        }
        ModeView::Spinors => {
            let q = boosted_spinors(&p, &basis)?;
            let spinors: Vec<Vec<Vec<Cx>>> = q
                .spinors
                .iter()
                .map(|pair| pair.iter().map(|v| output::vector(v)).collect())
                .collect();
            serde_json::json!({
                "spinors": spinors,
                "eigenvalues": output::vector(&q.eigenvalues),
                "residual": q.residual,
            })
        }
    };
    let mut text = serde_json::to_string_pretty(&ModeRecord { header, body })?;
    text.push('\n');
    Ok(Outcome::ok(text))
}

pub fn entropy_energy(cfg: &RunConfig) -> Result<EntropyEnergyResult, CliError> {
    Ok(entropy_energy_pipeline(&cfg.geometry, &cfg.beta_grid, &ConventionSet::default())?)
}

#[derive(Serialize)]
struct EntropyRowOut {
    beta: f64,
    s_per_area: Box<RawValue>,
    beta_inv_s: Box<RawValue>,
}

#[derive(Serialize)]
struct EntropyRecord {
    schema: &'static str,
    l: f64,
    rows: Vec<EntropyRowOut>,
    extrapolated: Box<RawValue>,
    uncertainty: Box<RawValue>,
    reference: Box<RawValue>,
    magnitude_relative_error: f64,
    ln2_bucket: f64,
    conventions: Vec<String>,
}

pub fn cmd_entropy_energy(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let r = entropy_energy(cfg)?;
    let text = match cfg.format {
        Format::Json => {
            let rows = r
                .rows
                .iter()
                .map(|row| {
                    Ok(EntropyRowOut {
                        beta: row.beta,
                        s_per_area: sci_json(row.s_per_area)?,
                        beta_inv_s: sci_json(row.beta_inv_s)?,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            to_json(&EntropyRecord {
                schema: SCHEMA,
                l: r.l,
                rows,
                extrapolated: sci_json(r.extrapolated)?,
                uncertainty: sci_json(r.uncertainty)?,
                reference: sci_json(r.reference)?,
                magnitude_relative_error: r.magnitude_relative_error,
                ln2_bucket: r.ln2_bucket,
                conventions: r.conventions.clone(),
            })?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["kind", "beta", "s_per_area", "beta_inv_s", "reference", "uncertainty", "conventions"])?;
            for row in &r.rows {
                w.write_record(["row", &row.beta.to_string(), &sci(row.s_per_area), &sci(row.beta_inv_s), "", "", ""])?;
            }
            w.write_record([
                "extrapolated",
                "inf",
                "",
                &sci(r.extrapolated),
                &sci(r.reference),
                &sci(r.uncertainty),
                &r.conventions.join(";"),
            ])?;
            output::finish_csv(w)?
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaFunction {
    /// ζ(s)
    Riemann,
    /// ζ_H(s, a)
    Hurwitz,
    /// B_n with n = s
    Bernoulli,
    /// B_n(a) with n = s
    BernoulliPoly,
    Gamma,
    Digamma,
    /// Fermionic Z_β(s) at the configured β
    ZBeta,
    /// Spatial Z(s) at the configured geometry
    ZSpatial,
}

#[derive(Serialize)]
struct ZetaRecord {
    schema: &'static str,
    function: String,
    s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    value: Box<RawValue>,
}

fn order(s: f64) -> Result<usize, CliError> {
    if s >= 0.0 && s.fract() == 0.0 {
        Ok(s as usize)
    } else {
        Err(CliError::Config(format!("order must be a non-negative integer, got {s}")))
    }
}

pub fn zeta_value(cfg: &RunConfig, function: ZetaFunction, s: f64, a: f64) -> Result<f64, CliError> {
    Ok(match function {
        ZetaFunction::Riemann => zetareg::riemann_zeta(s)?,
        ZetaFunction::Hurwitz => zetareg::hurwitz_zeta(s, a)?,
        ZetaFunction::Bernoulli => zetareg::bernoulli_number(order(s)?)?,
        ZetaFunction::BernoulliPoly => zetareg::bernoulli_poly(order(s)?, a)?,
        ZetaFunction::Gamma => zetareg::gamma(s),
        ZetaFunction::Digamma => zetareg::digamma(s)?,
        ZetaFunction::ZBeta => zetareg::z_beta(s, cfg.geometry.beta, MatsubaraFamily::Fermionic)?.value,
        ZetaFunction::ZSpatial => zetareg::z_spatial(s, &cfg.geometry)?.value,
    })
}

pub fn cmd_zeta(cfg: &RunConfig, function: ZetaFunction, s: f64, a: f64) -> Result<Outcome, CliError> {
    let value = zeta_value(cfg, function, s, a)?;
    let uses_a = matches!(function, ZetaFunction::Hurwitz | ZetaFunction::BernoulliPoly);
    let name = function
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let text = match cfg.format {
        Format::Json => {
            let mut t = serde_json::to_string(&ZetaRecord {
                schema: SCHEMA,
                function: name,
                s,
                a: uses_a.then_some(a),
                value: sci_json(value)?,
            })?;
            t.push('\n');
            t
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["function", "s", "a", "value"])?;
            let a_txt = if uses_a { a.to_string() } else { String::new() };
            w.write_record([name, s.to_string(), a_txt, sci(value)])?;
            output::finish_csv(w)?
        }
    };
    Ok(Outcome::ok(text))
}
