use nalgebra::DMatrix;

use crate::datamodel::StandardizedMatrix;
use crate::engine::CorrelationMatrix;
use crate::linalg::{invert, spd_condition, spd_inverse};
use crate::{Error, Result};

/// Regression-method weights `B = (LᵀR⁻¹L)⁻¹ LᵀR⁻¹` (M×N).
pub fn scoring_weights(
    r: &CorrelationMatrix,
    rotated: &DMatrix<f64>,
    ridge_fallback: bool,
) -> Result<DMatrix<f64>> {
    let inv = spd_inverse(r.values(), ridge_fallback)?;
    scoring_weights_with_inverse(&inv.inverse, rotated)
}

/// Same as [`scoring_weights`] given a precomputed `R⁻¹`.
pub fn scoring_weights_with_inverse(
    r_inv: &DMatrix<f64>,
    rotated: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    if rotated.nrows() != r_inv.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "loadings have {} rows, correlation matrix is {}x{}",
            rotated.nrows(),
            r_inv.nrows(),
            r_inv.ncols()
        )));
    }
    let lt_rinv = rotated.transpose() * r_inv;
    let gram = &lt_rinv * rotated;
    let gram_inv = invert(&gram).ok_or_else(|| Error::SingularCorrelation {
        condition: spd_condition(&gram),
    })?;
    Ok(gram_inv * lt_rinv)
}

/// Per-region factor scores `F = B·A` (M×R).
#[derive(Debug, Clone, PartialEq)]
pub struct FactorScores {
    pub values: DMatrix<f64>,
    pub region_ids: Vec<String>,
}

impl FactorScores {
    pub fn n_factors(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_regions(&self) -> usize {
        self.values.ncols()
    }

    pub fn region_index(&self, id: &str) -> Option<usize> {
        self.region_ids.iter().position(|r| r == id)
    }
}

pub fn factor_scores(weights: &DMatrix<f64>, a: &StandardizedMatrix) -> Result<FactorScores> {
    if weights.ncols() != a.n_attributes() {
        return Err(Error::DimensionMismatch(format!(
            "weights have {} columns but the data has {} attributes",
            weights.ncols(),
            a.n_attributes()
        )));
    }
    Ok(FactorScores {
        values: weights * a.values(),
        region_ids: a.region_ids().to_vec(),
    })
}
