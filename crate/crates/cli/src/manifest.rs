use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

/// Everything needed to reproduce a run: the effective configuration, the input digest
/// and what the fit reported. Holds no timestamps or paths outside the config, so
/// identical runs write identical manifests.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub input_sha256: Option<String>,
    pub n_attributes: Option<usize>,
    pub n_regions: Option<usize>,
    pub fit: Option<FitSummary>,
    pub composite: Option<Vec<CompositeSummary>>,
    pub warnings: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FitSummary {
    pub converged: bool,
    pub iterations_used: usize,
    pub n_factors: usize,
    /// How the factor count was chosen.
    pub retention: String,
    pub eigenvalues: Vec<f64>,
    pub cumulative_variance_percent: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositeSummary {
    pub factor: usize,
    pub dimension: String,
    pub sign: i8,
}

impl RunManifest {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config: config.clone(),
            input_sha256: None,
            n_attributes: None,
            n_regions: None,
            fit: None,
            composite: None,
            warnings: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest is serializable");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
