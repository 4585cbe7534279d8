//! JSON reports. Every numeric check carries its tolerance.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::SceneConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    /// `None` when the quantity could not be formed.
    pub value: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl Residual {
    /// Passes when `value < tolerance`.
    pub fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        let ok = value.is_finite();
        Residual {
            name: name.into(),
            value: ok.then_some(value),
            tolerance,
            pass: ok && value < tolerance,
        }
    }

    pub fn missing(name: impl Into<String>, tolerance: f64) -> Self {
        Residual { name: name.into(), value: None, tolerance, pass: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: SceneConfig,
    pub verdicts: Map<String, Value>,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: f64,
    pub version: String,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: &SceneConfig) -> Self {
        Report {
            command: command.into(),
            inputs: inputs.clone(),
            verdicts: Map::new(),
            residuals: Vec::new(),
            data: None,
            error: None,
            timing_ms: 0.0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn verdict(&mut self, key: &str, value: impl Into<Value>) {
        self.verdicts.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, r: Residual) {
        self.residuals.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = Residual>) {
        self.residuals.extend(rs);
    }

    pub fn all_pass(&self) -> bool {
        self.error.is_none() && self.residuals.iter().all(|r| r.pass)
    }

    /// 0 when every residual passes, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
