//! Scene configuration: JSON file values overridden by command-line flags.

use serde::{Deserialize, Serialize};
use std::path::Path;

use closure_core::chain::Word;
use closure_core::tol;
use closure_core::Annulus;

use crate::CliError;

/// Optional settings as read from a config file or from flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    #[serde(rename = "R")]
    pub big_r: Option<f64>,
    pub r: Option<f64>,
    pub d: Option<f64>,
    pub word: Option<String>,
    pub theta0: Option<f64>,
    pub nr: Option<usize>,
    pub nd: Option<usize>,
    pub tol: Option<f64>,
    pub workers: Option<usize>,
    pub thetas: Option<usize>,
    pub cert_points: Option<usize>,
    pub max_len: Option<usize>,
    pub degree: Option<usize>,
    pub delta1: Option<f64>,
    pub delta2: Option<f64>,
    pub steps: Option<usize>,
    pub gamma: Option<bool>,
}

impl Overrides {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: Overrides) -> Overrides {
        Overrides {
            big_r: self.big_r.or(base.big_r),
            r: self.r.or(base.r),
            d: self.d.or(base.d),
            word: self.word.or(base.word),
            theta0: self.theta0.or(base.theta0),
            nr: self.nr.or(base.nr),
            nd: self.nd.or(base.nd),
            tol: self.tol.or(base.tol),
            workers: self.workers.or(base.workers),
            thetas: self.thetas.or(base.thetas),
            cert_points: self.cert_points.or(base.cert_points),
            max_len: self.max_len.or(base.max_len),
            degree: self.degree.or(base.degree),
            delta1: self.delta1.or(base.delta1),
            delta2: self.delta2.or(base.delta2),
            steps: self.steps.or(base.steps),
            gamma: self.gamma.or(base.gamma),
        }
    }
}

/// Fully resolved settings. Every field is echoed in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneConfig {
    #[serde(rename = "R")]
    pub big_r: f64,
    pub r: f64,
    pub d: f64,
    pub word: String,
    pub theta0: f64,
    pub nr: usize,
    pub nd: usize,
    pub tol: f64,
    pub workers: usize,
    /// Seed angles per closure check.
    pub thetas: usize,
    /// Locus points certified per word.
    pub cert_points: usize,
    pub max_len: usize,
    pub degree: usize,
    /// Per-increment rotations of the two driven ellipses.
    pub delta1: f64,
    pub delta2: f64,
    pub steps: usize,
    /// Draw the fitted envelope in figures.
    pub gamma: bool,
}

impl Default for SceneConfig {
    fn default() -> Self {
        Self {
            big_r: 3.0,
            r: 1.0,
            d: 0.0,
            word: "cscs".into(),
            theta0: 0.0,
            nr: 64,
            nd: 64,
            tol: tol::CLOSURE,
            workers: 1,
            thetas: 32,
            cert_points: 16,
            max_len: 4,
            degree: 2,
            delta1: 0.01,
            delta2: 0.006,
            steps: 50,
            gamma: false,
        }
    }
}

impl SceneConfig {
    pub fn resolve(o: Overrides) -> Result<Self, CliError> {
        let d = SceneConfig::default();
        let c = SceneConfig {
            big_r: o.big_r.unwrap_or(d.big_r),
            r: o.r.unwrap_or(d.r),
            d: o.d.unwrap_or(d.d),
            word: o.word.unwrap_or(d.word),
            theta0: o.theta0.unwrap_or(d.theta0),
            nr: o.nr.unwrap_or(d.nr),
            nd: o.nd.unwrap_or(d.nd),
            tol: o.tol.unwrap_or(d.tol),
            workers: o.workers.unwrap_or(d.workers),
            thetas: o.thetas.unwrap_or(d.thetas),
            cert_points: o.cert_points.unwrap_or(d.cert_points),
            max_len: o.max_len.unwrap_or(d.max_len),
            degree: o.degree.unwrap_or(d.degree),
            delta1: o.delta1.unwrap_or(d.delta1),
            delta2: o.delta2.unwrap_or(d.delta2),
            steps: o.steps.unwrap_or(d.steps),
            gamma: o.gamma.unwrap_or(d.gamma),
        };
        c.word()?;
        if !(c.tol > 0.0) || !c.tol.is_finite() {
            return Err(CliError::Invalid(format!("tolerance must be positive, got {}", c.tol)));
        }
        if c.workers == 0 {
            return Err(CliError::Invalid("workers must be at least 1".into()));
        }
        if c.thetas < 8 {
            return Err(CliError::Invalid(format!("thetas must be at least 8, got {}", c.thetas)));
        }
        if ![c.theta0, c.delta1, c.delta2].iter().all(|x| x.is_finite()) {
            return Err(CliError::Invalid("angles must be finite".into()));
        }
        Ok(c)
    }

    pub fn annulus(&self) -> Result<Annulus, CliError> {
        Annulus::from_radii(self.big_r, self.r, self.d)
            .map_err(|e| CliError::Invalid(format!("annulus (R={}, r={}, d={}): {e}", self.big_r, self.r, self.d)))
    }

    pub fn word(&self) -> Result<Word, CliError> {
        self.word.parse().map_err(|e| CliError::Invalid(format!("word {:?}: {e}", self.word)))
    }
}
