use nalgebra::DMatrix;

use crate::datamodel::StandardizedMatrix;
use crate::{Error, Result};

const TOL: f64 = 1e-12;

/// Symmetric N×N correlation matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix(DMatrix<f64>);

impl CorrelationMatrix {
    /// Validates an externally supplied matrix.
    pub fn new(values: DMatrix<f64>) -> Result<Self> {
        let n = values.nrows();
        if values.ncols() != n || n == 0 {
            return Err(Error::DimensionMismatch(format!(
                "correlation matrix must be square, got {}x{}",
                n,
                values.ncols()
            )));
        }
        for i in 0..n {
            if (values[(i, i)] - 1.0).abs() > TOL {
                return Err(Error::Config(format!(
                    "correlation diagonal entry {i} is {}, expected 1",
                    values[(i, i)]
                )));
            }
            for j in 0..n {
                let v = values[(i, j)];
                if !v.is_finite() || v.abs() > 1.0 + TOL {
                    return Err(Error::Config(format!("correlation entry ({i}, {j}) = {v} outside [-1, 1]")));
                }
                if (v - values[(j, i)]).abs() > TOL {
                    return Err(Error::Config(format!("correlation matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

/// `A·Aᵀ / (R - 1)` for a standardized matrix, symmetrized with an exact unit diagonal.
pub fn correlation(a: &StandardizedMatrix) -> CorrelationMatrix {
    let values = a.values();
    let n = values.nrows();
    let scale = 1.0 / (values.ncols() as f64 - 1.0);
    let raw = values * values.transpose() * scale;
    let mut r = DMatrix::zeros(n, n);
    for i in 0..n {
        r[(i, i)] = 1.0;
        for j in 0..i {
            let v = (0.5 * (raw[(i, j)] + raw[(j, i)])).clamp(-1.0, 1.0);
            r[(i, j)] = v;
            r[(j, i)] = v;
        }
    }
    CorrelationMatrix(r)
}
