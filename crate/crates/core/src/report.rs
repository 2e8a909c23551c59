//! Machine-readable results of property checks.

use serde::{Deserialize, Serialize};

/// Outcome of one named check.
///
/// `passed` holds exactly when every recorded residual is within `tolerance`
/// and no instance failed outright.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// The identity or property being tested, in words.
    pub identity: String,
    pub passed: bool,
    /// Infinite when an instance could not be evaluated; written as `null` in JSON.
    #[serde(with = "residual_json")]
    pub worst_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub seed: u64,
    /// Failing instances, with elements written in the element grammar.
    pub details: Vec<String>,
    /// Informational verdict for checks that report rather than test.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

const MAX_DETAILS: usize = 20;

mod residual_json {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
        if value.is_finite() {
            s.serialize_f64(*value)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl CheckReport {
    pub fn new(name: &str, identity: &str, tolerance: f64, seed: u64) -> Self {
        Self {
            name: name.to_string(),
            identity: identity.to_string(),
            passed: true,
            worst_residual: 0.0,
            tolerance,
            samples: 0,
            seed,
            details: Vec::new(),
            note: None,
        }
    }

    /// Records one sample. `describe` runs only for failing samples.
    pub fn record(&mut self, residual: f64, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if residual.is_nan() || residual > self.worst_residual {
            self.worst_residual = if residual.is_nan() { f64::INFINITY } else { residual };
        }
        if residual.is_nan() || residual > self.tolerance {
            self.passed = false;
            self.push_detail(format!("residual {residual:e}: {}", describe()));
        }
    }

    /// Records an instance that could not be evaluated.
    pub fn fail(&mut self, detail: impl Into<String>) {
        self.samples += 1;
        self.passed = false;
        self.worst_residual = f64::INFINITY;
        self.push_detail(detail.into());
    }

    fn push_detail(&mut self, detail: String) {
        if self.details.len() < MAX_DETAILS {
            self.details.push(detail);
        }
    }

    /// A report that failed before any sample was taken.
    pub fn failed(name: &str, identity: &str, seed: u64, detail: impl Into<String>) -> Self {
        let mut report = Self::new(name, identity, 0.0, seed);
        report.fail(detail);
        report.samples = 0;
        report
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {}: worst residual {:.3e} (tol {:.0e}) over {} samples",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.worst_residual,
            self.tolerance,
            self.samples
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_tracks_worst_and_failures() {
        let mut r = CheckReport::new("demo", "x = x", 1e-9, 7);
        r.record(1e-12, || unreachable!());
        assert!(r.passed);
        r.record(1e-6, || "bad".into());
        assert!(!r.passed);
        assert_eq!(r.samples, 2);
        assert_eq!(r.worst_residual, 1e-6);
        assert_eq!(r.details.len(), 1);
        r.record(f64::NAN, || "nan".into());
        assert!(r.worst_residual.is_infinite());
    }

    #[test]
    fn serde_roundtrip() {
        let r = CheckReport::failed("k", "id", 3, "could not parse");
        let text = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.name, "k");
        assert!(!back.passed);
        assert!(back.worst_residual.is_infinite());
    }
}
