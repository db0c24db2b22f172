use nalgebra::DVector;

use crate::engine::CorrelationMatrix;
use crate::linalg::{spd_inverse, SpdInverse};
use crate::Result;

/// Communality estimates `ĉᵢ²` at a given iteration (0 = squared multiple correlations).
#[derive(Debug, Clone, PartialEq)]
pub struct CommunalityVector {
    pub values: DVector<f64>,
    pub iteration: usize,
}

/// Squared multiple correlations `1 - 1/rⁱⁱ` from the diagonal of `R⁻¹`.
pub fn initial_communalities(r: &CorrelationMatrix, ridge_fallback: bool) -> Result<CommunalityVector> {
    let inv = spd_inverse(r.values(), ridge_fallback)?;
    Ok(smc_from_inverse(&inv))
}

pub fn smc_from_inverse(inv: &SpdInverse) -> CommunalityVector {
    let n = inv.inverse.nrows();
    let values = DVector::from_fn(n, |i, _| (1.0 - 1.0 / inv.inverse[(i, i)]).clamp(0.0, 1.0));
    CommunalityVector { values, iteration: 0 }
}
