use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Version of the report JSON layout; bump on any breaking change.
pub const SCHEMA_VERSION: &str = "1.0.0";

/// Outcome of one named verification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub cone: String,
    pub inputs: serde_json::Value,
    /// Complex values serialized as `[re, im]`.
    pub lhs: Vec<[f64; 2]>,
    pub rhs: Vec<[f64; 2]>,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: u64,
    /// Acceptance criterion the report belongs to, set by the desk suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u32>,
    /// Free-form numeric metadata (node-doubling deltas, permutations, ...).
    pub metadata: serde_json::Value,
}

pub fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Components below this fraction of the larger of 1 and the largest entry are
/// compared absolutely rather than relatively.
pub const TINY: f64 = 1e-12;

/// Max componentwise absolute residual and the max relative residual. A component
/// whose scale is below [`TINY`]·max(1, largest entry on either side) contributes
/// its absolute residual measured in units of that floor's reference scale.
pub fn residuals(lhs: &[Complex64], rhs: &[Complex64]) -> (f64, f64) {
    let vmax = lhs.iter().chain(rhs).map(|z| z.norm()).fold(1.0, f64::max);
    let mut abs_max = 0.0f64;
    let mut rel_max = 0.0f64;
    for (a, b) in lhs.iter().zip(rhs) {
        let diff = (a - b).norm();
        let scale = a.norm().max(b.norm());
        abs_max = abs_max.max(diff);
        let rel = if scale < TINY * vmax { diff / vmax } else { diff / scale };
        rel_max = rel_max.max(rel);
    }
    (abs_max, rel_max)
}

impl VerificationReport {
    /// Builds a report from two value arrays; `pass` follows from the residuals.
    pub fn compare(
        check_id: &str,
        cone: &str,
        inputs: serde_json::Value,
        lhs: &[Complex64],
        rhs: &[Complex64],
        tolerance: f64,
    ) -> Self {
        let (abs_residual, rel_residual) = residuals(lhs, rhs);
        VerificationReport {
            check_id: check_id.to_string(),
            cone: cone.to_string(),
            inputs,
            lhs: pairs(lhs),
            rhs: pairs(rhs),
            abs_residual,
            rel_residual,
            tolerance,
            pass: rel_residual <= tolerance,
            runtime_ms: 0,
            criterion: None,
            metadata: serde_json::Value::Null,
        }
    }

    /// A report that carries only a scalar residual (no value arrays).
    pub fn scalar(check_id: &str, cone: &str, inputs: serde_json::Value, residual: f64, tolerance: f64) -> Self {
        VerificationReport {
            check_id: check_id.to_string(),
            cone: cone.to_string(),
            inputs,
            lhs: Vec::new(),
            rhs: Vec::new(),
            abs_residual: residual,
            rel_residual: residual,
            tolerance,
            pass: residual <= tolerance,
            runtime_ms: 0,
            criterion: None,
            metadata: serde_json::Value::Null,
        }
    }

    pub fn with_metadata(mut self, metadata: serde_json::Value) -> Self {
        self.metadata = metadata;
        self
    }

    /// Replaces the tolerance and recomputes `pass`.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.rel_residual <= tolerance;
        self
    }

    /// Merges the entries of `extra` into the metadata object.
    pub fn add_metadata(&mut self, extra: serde_json::Value) {
        if !self.metadata.is_object() {
            self.metadata = serde_json::json!({});
        }
        if let (Some(m), Some(e)) = (self.metadata.as_object_mut(), extra.as_object()) {
            m.extend(e.clone());
        }
    }
}
