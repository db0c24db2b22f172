use std::path::{Path, PathBuf};

use lfa_core::composite::{alpha_grid, CompositeDefinition, TypologyConfig};
use lfa_core::datamodel::{IngestConfig, MissingPolicy};
use lfa_core::engine::EngineConfig;
use lfa_core::synth::SynthConfig;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Every setting of a run. Keys are flat; the same names are accepted as command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    #[serde(skip_serializing)]
    pub out: PathBuf,
    pub missing: MissingPolicy,

    pub epsilon: f64,
    pub max_iterations: usize,
    pub kaiser_threshold: f64,
    pub ridge_fallback: bool,
    pub varimax_tolerance: f64,
    pub varimax_max_sweeps: usize,
    /// 1-based internal factor shown as reported factor 1, 2, ...
    pub factor_order: Option<Vec<usize>>,

    /// Composite definition file; the built-in six-factor default when absent.
    pub composite: Option<PathBuf>,
    /// Force every composite sign to +1.
    pub binary_composite: bool,
    pub balance_band: f64,
    pub bias_band: f64,

    pub alpha: f64,
    pub alpha_start: f64,
    pub alpha_stop: f64,
    pub alpha_step: f64,
    pub thetas: Vec<f64>,
    pub top_k: usize,
    pub top_v: usize,

    pub seed: u64,
    pub synth_regions: usize,
    pub synth_noise: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let engine = EngineConfig::default();
        let typology = TypologyConfig::default();
        let synth = SynthConfig::default();
        Self {
            input: None,
            out: PathBuf::from("lfa-out"),
            missing: MissingPolicy::Reject,
            epsilon: engine.epsilon,
            max_iterations: engine.max_iterations,
            kaiser_threshold: engine.kaiser_threshold,
            ridge_fallback: engine.ridge_fallback,
            varimax_tolerance: engine.varimax_tolerance,
            varimax_max_sweeps: engine.varimax_max_sweeps,
            factor_order: None,
            composite: None,
            binary_composite: false,
            balance_band: typology.balance_band,
            bias_band: typology.bias_band,
            alpha: 0.5,
            alpha_start: 0.0,
            alpha_stop: 1.0,
            alpha_step: 0.2,
            thetas: vec![1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0],
            top_k: 10,
            top_v: 30,
            seed: synth.seed,
            synth_regions: synth.regions,
            synth_noise: synth.noise_std,
        }
    }
}

#[derive(Deserialize)]
struct ManifestConfig {
    config: RunConfig,
}

impl RunConfig {
    /// Reads a TOML config file, or the `config` object of a previous run's `manifest.json`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str::<ManifestConfig>(&text)
                .map(|m| m.config)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {}", path.display(), e.message())))
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.engine().validate()?;
        self.alphas()?;
        if self.thetas.is_empty() {
            return Err(CliError::Config("thetas must not be empty".into()));
        }
        if self.thetas.iter().any(|t| !t.is_finite()) || self.thetas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Config(format!(
                "thetas must be finite and strictly ascending, got {:?}",
                self.thetas
            )));
        }
        if self.top_k == 0 || self.top_v == 0 {
            return Err(CliError::Config("top_k and top_v must be at least 1".into()));
        }
        if !(self.balance_band >= 0.0 && self.bias_band >= 0.0) {
            return Err(CliError::Config("balance_band and bias_band must be non-negative".into()));
        }
        if !(self.synth_noise >= 0.0) || self.synth_regions == 0 {
            return Err(CliError::Config("synth_noise must be >= 0 and synth_regions >= 1".into()));
        }
        if let Some(order) = &self.factor_order {
            if order.contains(&0) {
                return Err(CliError::Config("factor_order labels start at 1".into()));
            }
        }
        Ok(())
    }

    pub fn ingest(&self) -> IngestConfig {
        IngestConfig {
            missing: self.missing,
        }
    }

    pub fn engine(&self) -> EngineConfig {
        EngineConfig {
            epsilon: self.epsilon,
            max_iterations: self.max_iterations,
            kaiser_threshold: self.kaiser_threshold,
            ridge_fallback: self.ridge_fallback,
            varimax_tolerance: self.varimax_tolerance,
            varimax_max_sweeps: self.varimax_max_sweeps,
        }
    }

    pub fn typology(&self) -> TypologyConfig {
        TypologyConfig {
            balance_band: self.balance_band,
            bias_band: self.bias_band,
        }
    }

    pub fn synth(&self) -> SynthConfig {
        SynthConfig {
            seed: self.seed,
            regions: self.synth_regions,
            noise_std: self.synth_noise,
        }
    }

    pub fn alphas(&self) -> Result<Vec<f64>, CliError> {
        let grid = alpha_grid(self.alpha_start, self.alpha_stop, self.alpha_step)?;
        if grid.is_empty() || grid.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(CliError::Config(format!(
                "alpha grid {}..{} step {} must be non-empty and inside [0, 1]",
                self.alpha_start, self.alpha_stop, self.alpha_step
            )));
        }
        Ok(grid)
    }

    pub fn composite_definition(&self) -> Result<CompositeDefinition, CliError> {
        let def = match &self.composite {
            Some(path) => CompositeDefinition::load(path)?,
            None => CompositeDefinition::vertiport_default(),
        };
        Ok(if self.binary_composite { def.binary() } else { def })
    }

    pub fn input_path(&self) -> Result<&Path, CliError> {
        self.input
            .as_deref()
            .ok_or_else(|| CliError::Config("no input file given (use --input or the `input` key)".into()))
    }
}
