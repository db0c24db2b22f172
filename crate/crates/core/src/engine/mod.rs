//! Latent factor extraction: correlation, squared multiple correlations,
//! iterative principal-axis factoring, Varimax rotation and regression scoring.

mod communality;
mod correlation;
mod dominant;
mod model;
mod paf;
mod scoring;
mod varimax;

use serde::{Deserialize, Serialize};

pub use communality::{initial_communalities, smc_from_inverse, CommunalityVector};
pub use correlation::{correlation, CorrelationMatrix};
pub use dominant::{dominant_attributes, DominantAssignment, DominantAttributeMap};
pub use model::{canonical_column_signs, sign_canonicalize, variance_accounting, FactorModel};
pub use paf::{paf_iterate, PafIteration, PafSolution};
pub use scoring::{factor_scores, scoring_weights, scoring_weights_with_inverse, FactorScores};
pub use varimax::{varimax, varimax_criterion, VarimaxConfig, VarimaxResult};

use crate::datamodel::StandardizedMatrix;
use crate::linalg::spd_inverse;
use crate::{Error, Result, Warning};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    /// Convergence threshold on the summed absolute communality change.
    pub epsilon: f64,
    pub max_iterations: usize,
    /// Factors whose first-iteration eigenvalue reaches this are retained.
    pub kaiser_threshold: f64,
    /// Regularize ill-conditioned correlation matrices instead of failing.
    pub ridge_fallback: bool,
    pub varimax_tolerance: f64,
    pub varimax_max_sweeps: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-5,
            max_iterations: 200,
            kaiser_threshold: 1.0,
            ridge_fallback: false,
            varimax_tolerance: 1e-8,
            varimax_max_sweeps: 100,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::Config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if !(self.varimax_tolerance > 0.0) || self.varimax_max_sweeps == 0 {
            return Err(Error::Config(
                "varimax_tolerance must be positive and varimax_max_sweeps at least 1".into(),
            ));
        }
        if !self.kaiser_threshold.is_finite() {
            return Err(Error::Config("kaiser_threshold must be finite".into()));
        }
        Ok(())
    }

    pub fn varimax(&self) -> VarimaxConfig {
        VarimaxConfig {
            tolerance: self.varimax_tolerance,
            max_sweeps: self.varimax_max_sweeps,
            normalize: true,
        }
    }
}

/// Everything produced by [`fit`], including the per-iteration traces.
#[derive(Debug, Clone)]
pub struct Fit {
    pub correlation: CorrelationMatrix,
    pub initial_communalities: CommunalityVector,
    pub paf: PafSolution,
    pub varimax: VarimaxResult,
    pub model: FactorModel,
}

/// Runs correlation → SMC → principal-axis factoring → Varimax → sign
/// canonicalization → regression scoring weights.
pub fn fit(a: &StandardizedMatrix, config: &EngineConfig) -> Result<Fit> {
    config.validate()?;
    let names = a.attribute_names();
    let r = correlation(a);
    let inv = spd_inverse(r.values(), config.ridge_fallback)?;
    let mut warnings = Vec::new();
    if let Some(ridge) = inv.ridge {
        warnings.push(Warning::Ridge {
            condition: inv.condition,
            ridge,
        });
    }

    let c0 = smc_from_inverse(&inv);
    let paf = paf_iterate(&r, &c0, config)?;
    warnings.extend(paf.warnings.iter().cloned().map(|w| match w {
        Warning::Heywood {
            attribute,
            iteration,
            value,
        } => {
            let idx: usize = attribute.trim_start_matches('#').parse().unwrap_or(1);
            Warning::Heywood {
                attribute: names[idx - 1].clone(),
                iteration,
                value,
            }
        }
        other => other,
    }));

    let rot = varimax(&paf.loadings, &config.varimax());
    let m = paf.n_factors;
    let eigenvalues: Vec<f64> = paf.initial_eigenvalues.iter().take(m).copied().collect();
    let (variance_percent, cumulative_variance_percent) = variance_accounting(&eigenvalues, names.len());

    let mut model = sign_canonicalize(FactorModel {
        attribute_names: names.to_vec(),
        unrotated_loadings: paf.loadings.clone(),
        rotated_loadings: rot.rotated.clone(),
        rotation: rot.rotation.clone(),
        eigenvalues,
        extraction_eigenvalues: paf.extraction_eigenvalues.clone(),
        communalities: paf.communalities.clone(),
        scoring_weights: nalgebra::DMatrix::zeros(0, 0),
        iterations_used: paf.iterations_used,
        converged: paf.converged,
        variance_percent,
        cumulative_variance_percent,
        warnings,
    });
    model.scoring_weights = scoring_weights_with_inverse(&inv.inverse, &model.rotated_loadings)?;

    Ok(Fit {
        correlation: r,
        initial_communalities: c0,
        paf,
        varimax: rot,
        model,
    })
}
