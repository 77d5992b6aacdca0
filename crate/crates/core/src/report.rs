//! Named check results shared by the verification suites.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Info,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    /// Which formula or statement the check exercises.
    pub anchor: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub stamps: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Set for [`CheckEntry::at_least`] entries, where the comparison is
    /// reversed.
    #[serde(skip)]
    pub lower_bound: bool,
}

impl CheckEntry {
    /// Pass iff `residual ≤ tolerance`; a NaN residual fails.
    pub fn measured(id: impl Into<String>, anchor: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            id: id.into(),
            anchor: anchor.into(),
            status,
            residual: Some(residual),
            tolerance: Some(tolerance),
            stamps: Vec::new(),
            detail: None,
            lower_bound: false,
        }
    }

    /// Pass iff `value > threshold`; the value goes in `residual` and the
    /// threshold in `tolerance`.
    pub fn at_least(id: impl Into<String>, anchor: impl Into<String>, value: f64, threshold: f64) -> Self {
        let status = if value > threshold {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            status,
            lower_bound: true,
            ..Self::measured(id, anchor, value, threshold)
        }
    }

    /// Re-evaluates a measured entry against a new tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        if let (Some(r), Some(_)) = (self.residual, self.tolerance) {
            if matches!(self.status, Status::Pass | Status::Fail) {
                self.tolerance = Some(tolerance);
                let ok = if self.lower_bound { r > tolerance } else { r <= tolerance };
                self.status = if ok { Status::Pass } else { Status::Fail };
            }
        }
        self
    }

    pub fn info(id: impl Into<String>, anchor: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Info,
            residual: None,
            tolerance: None,
            stamps: Vec::new(),
            detail: Some(detail.into()),
            lower_bound: false,
        }
    }

    pub fn skipped(id: impl Into<String>, anchor: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            status: Status::Skipped,
            ..Self::info(id, anchor, reason)
        }
    }

    pub fn failed(id: impl Into<String>, anchor: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            ..Self::info(id, anchor, reason)
        }
    }

    pub fn with_stamps<I, S>(mut self, stamps: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.stamps.extend(stamps.into_iter().map(Into::into));
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
    pub skipped: usize,
}

pub fn summarize(entries: &[CheckEntry]) -> Summary {
    let mut s = Summary::default();
    for e in entries {
        match e.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Info => s.info += 1,
            Status::Skipped => s.skipped += 1,
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measured_status_and_nan() {
        assert_eq!(CheckEntry::measured("a", "x", 1e-15, 1e-14).status, Status::Pass);
        assert_eq!(CheckEntry::measured("a", "x", 1e-13, 1e-14).status, Status::Fail);
        assert_eq!(CheckEntry::measured("a", "x", f64::NAN, 1.0).status, Status::Fail);
        let s = summarize(&[
            CheckEntry::measured("a", "x", 0.0, 0.0),
            CheckEntry::info("b", "y", "note"),
            CheckEntry::skipped("c", "z", "why"),
        ]);
        assert_eq!(s, Summary { pass: 1, fail: 0, info: 1, skipped: 1 });
    }
}
