//! Outcome records for identity checks and transformation-law checks.

use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub label: String,
    pub mode: Mode,
    pub pass: bool,
    /// Estimated constant for numeric ratio checks.
    pub constant: Option<Complex64>,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub samples: Vec<Complex64>,
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn exact(label: impl Into<String>, pass: bool) -> Self {
        VerificationReport {
            label: label.into(),
            mode: Mode::Exact,
            pass,
            constant: None,
            residual: None,
            tolerance: None,
            samples: Vec::new(),
            detail: None,
        }
    }

    /// Numeric check; passes iff `residual < tolerance` (NaN never passes).
    pub fn numeric(label: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        VerificationReport {
            label: label.into(),
            mode: Mode::Numeric,
            pass: residual < tolerance,
            constant: None,
            residual: Some(residual),
            tolerance: Some(tolerance),
            samples: Vec::new(),
            detail: None,
        }
    }

    pub fn with_constant(mut self, c: Complex64) -> Self {
        self.constant = Some(c);
        self
    }

    pub fn with_samples(mut self, samples: Vec<Complex64>) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "label": self.label,
            "mode": match self.mode { Mode::Exact => "exact", Mode::Numeric => "numeric" },
            "pass": self.pass,
        });
        let obj = v.as_object_mut().expect("object");
        if let Some(c) = self.constant {
            obj.insert("constant".into(), json!([c.re, c.im]));
        }
        if let Some(r) = self.residual {
            obj.insert("residual".into(), json!(r));
        }
        if let Some(t) = self.tolerance {
            obj.insert("tolerance".into(), json!(t));
        }
        if self.mode == Mode::Numeric {
            let s: Vec<_> = self.samples.iter().map(|z| json!([z.re, z.im])).collect();
            obj.insert("samples".into(), Value::Array(s));
        }
        if let Some(d) = &self.detail {
            obj.insert("detail".into(), json!(d));
        }
        v
    }
}
