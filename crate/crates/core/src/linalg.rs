//! Thin wrappers over nalgebra for the dense symmetric operations the engine needs.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::{Error, Result};

/// Condition number above which a correlation matrix is treated as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Ridge added to the diagonal when the fallback is enabled.
pub const RIDGE: f64 = 1e-8;

/// Symmetric eigendecomposition with eigenvalues sorted in descending order.
///
/// Column `m` of the returned matrix is the unit eigenvector for eigenvalue `m`.
/// Ties keep the solver's relative order, so the result is deterministic.
pub fn symmetric_eigen_desc(a: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(a.clone());
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));

    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Ratio of largest to smallest eigenvalue of a symmetric positive semi-definite matrix.
///
/// Returns infinity when the smallest eigenvalue is not strictly positive.
pub fn spd_condition(a: &DMatrix<f64>) -> f64 {
    let eig = SymmetricEigen::new(a.clone());
    let max = eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Inverse of a symmetric positive-definite matrix, optionally regularized.
#[derive(Debug, Clone)]
pub struct SpdInverse {
    pub inverse: DMatrix<f64>,
    pub condition: f64,
    /// `Some(ridge)` when the diagonal was shifted before inversion.
    pub ridge: Option<f64>,
}

/// Inverts `a`, refusing (or regularizing, when `ridge_fallback` is set) matrices
/// whose condition number exceeds [`MAX_CONDITION`].
pub fn spd_inverse(a: &DMatrix<f64>, ridge_fallback: bool) -> Result<SpdInverse> {
    let condition = spd_condition(a);
    let (work, ridge) = if condition > MAX_CONDITION {
        if !ridge_fallback {
            return Err(Error::SingularCorrelation { condition });
        }
        let mut shifted = a.clone();
        for i in 0..shifted.nrows() {
            shifted[(i, i)] += RIDGE;
        }
        (shifted, Some(RIDGE))
    } else {
        (a.clone(), None)
    };
    let inverse = invert(&work).ok_or(Error::SingularCorrelation { condition })?;
    Ok(SpdInverse {
        inverse: symmetrize(&inverse),
        condition,
        ridge,
    })
}

/// General inverse via Cholesky, falling back to LU when the matrix is not numerically SPD.
pub fn invert(a: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    match a.clone().cholesky() {
        Some(chol) => Some(chol.inverse()),
        None => a.clone().try_inverse(),
    }
}

pub fn symmetrize(a: &DMatrix<f64>) -> DMatrix<f64> {
    (a + a.transpose()) * 0.5
}
