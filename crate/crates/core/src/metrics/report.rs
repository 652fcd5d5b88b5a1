use serde::{Deserialize, Serialize};

use super::mc::MCEstimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    McSphere,
    McGrassmann,
    McVolume,
    Bracket,
}

/// Whether an estimator may use closed-form evaluation when one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Auto,
    ForceMc,
}

/// Value of a deviation functional with how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub value: f64,
    /// zero for exact values
    pub stderr: f64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<(f64, f64)>,
    pub samples: usize,
    pub seed: u64,
    /// false for sampled quantities that are only heuristic (no error model)
    pub certified: bool,
}

impl MetricReport {
    pub fn exact(value: f64) -> Self {
        MetricReport {
            value,
            stderr: 0.0,
            method: Method::Exact,
            bracket: None,
            samples: 0,
            seed: 0,
            certified: true,
        }
    }

    pub fn sampled(est: MCEstimate, method: Method) -> Self {
        MetricReport {
            value: est.mean,
            stderr: est.stderr,
            method,
            bracket: None,
            samples: est.samples,
            seed: est.seed,
            certified: true,
        }
    }

    pub fn estimate(&self) -> MCEstimate {
        MCEstimate {
            mean: self.value,
            stderr: self.stderr,
            samples: self.samples,
            seed: self.seed,
        }
    }

    /// Conservative lower end used in certification.
    pub fn lower(&self, sigmas: f64) -> f64 {
        self.value - sigmas * self.stderr
    }
}
