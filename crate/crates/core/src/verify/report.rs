use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one named check. `pass` holds exactly when `max_residual <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub witness: Value,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, samples: usize, max_residual: f64, tolerance: f64, witness: Value) -> Self {
        Self {
            name: name.into(),
            samples,
            max_residual,
            tolerance,
            // NaN residuals fail
            pass: max_residual <= tolerance,
            witness,
        }
    }
}

/// Running maximum that remembers the first sample attaining it.
#[derive(Clone, Debug)]
pub struct Worst {
    pub value: f64,
    pub witness: Value,
    pub samples: usize,
}

impl Default for Worst {
    fn default() -> Self {
        Self {
            value: 0.0,
            witness: Value::Null,
            samples: 0,
        }
    }
}

impl Worst {
    /// Records a sample; the witness closure only runs for a new maximum.
    pub fn observe(&mut self, value: f64, witness: impl FnOnce() -> Value) {
        self.samples += 1;
        if value > self.value || value.is_nan() && !self.value.is_nan() || self.samples == 1 {
            self.value = value;
            self.witness = witness();
        }
    }

    pub fn merge(&mut self, other: Worst) {
        let samples = self.samples + other.samples;
        if other.samples > 0 && (self.samples == 0 || other.value > self.value || other.value.is_nan()) {
            *self = other;
        }
        self.samples = samples;
    }

    pub fn report(self, name: impl Into<String>, tolerance: f64) -> CheckReport {
        CheckReport::new(name, self.samples, self.value, tolerance, self.witness)
    }
}
