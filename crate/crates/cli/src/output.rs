//! Serialized shapes for reports and records.
//!
//! Complex numbers are `{re, im}` objects and matrices are row-major nested
//! arrays. Energies are written with 17 significant digits.

use casimir_qubit::linalg::Mat;
use casimir_qubit::report::{CheckEntry, Summary};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::config::RunConfig;
use crate::CliError;

pub const SCHEMA: &str = "casimir-qubit/1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

pub fn matrix<const N: usize>(m: &Mat<N>) -> Vec<Vec<Cx>> {
    m.0.iter()
        .map(|row| row.iter().map(|&z| Cx::from(z)).collect())
        .collect()
}

pub fn vector(v: &[Complex64]) -> Vec<Cx> {
    v.iter().map(|&z| z.into()).collect()
}

/// `{:.16e}`: 17 significant digits, lowercase exponent.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number carrying the [`sci`] text verbatim.
pub fn sci_json(x: f64) -> Result<Box<RawValue>, CliError> {
    if !x.is_finite() {
        return Err(CliError::Config(format!("cannot serialize non-finite value {x}")));
    }
    Ok(RawValue::from_string(sci(x))?)
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool {
    name: "casimir-qubit",
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Debug, Serialize)]
pub struct VerificationReport<'a> {
    pub schema: &'static str,
    pub tool: Tool,
    pub config: &'a RunConfig,
    pub summary: Summary,
    pub checks: &'a [CheckEntry],
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:e}")).unwrap_or_default()
}

pub fn checks_csv(entries: &[CheckEntry]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "anchor", "status", "residual", "tolerance", "stamps", "detail"])?;
    for e in entries {
        let status = serde_json::to_value(e.status)?;
        w.write_record([
            e.id.as_str(),
            e.anchor.as_str(),
            status.as_str().unwrap_or_default(),
            &opt(e.residual),
            &opt(e.tolerance),
            &e.stamps.join(";"),
            e.detail.as_deref().unwrap_or(""),
        ])?;
    }
    finish_csv(w)
}

pub fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_format() {
        assert_eq!(sci(-0.006853891945200942), "-6.8538919452009418e-3");
        assert_eq!(sci_json(1.0).unwrap().get(), "1.0000000000000000e0");
        let v: f64 = serde_json::from_str(sci_json(-1.25e-7).unwrap().get()).unwrap();
        assert_eq!(v, -1.25e-7);
    }

    #[test]
    fn complex_as_object() {
        let s = serde_json::to_string(&Cx::from(Complex64::new(0.25, -0.25))).unwrap();
        assert_eq!(s, r#"{"re":0.25,"im":-0.25}"#);
    }
}
