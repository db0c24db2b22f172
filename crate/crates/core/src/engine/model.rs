use nalgebra::DMatrix;

use crate::engine::{CommunalityVector, DominantAttributeMap};
use crate::format::f6;
use crate::{Error, Result, Warning};

/// A fitted, rotated factor solution.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorModel {
    pub attribute_names: Vec<String>,
    /// N×M principal-axis loadings `L*`.
    pub unrotated_loadings: DMatrix<f64>,
    /// N×M rotated loadings `Lᴿ = L*·V`.
    pub rotated_loadings: DMatrix<f64>,
    /// M×M orthogonal rotation `V`.
    pub rotation: DMatrix<f64>,
    /// Eigenvalues of the first reduced correlation matrix for the retained factors;
    /// these drive the retention rule and the variance report.
    pub eigenvalues: Vec<f64>,
    /// Retained eigenvalues at the final iteration (sums of squared unrotated loadings).
    pub extraction_eigenvalues: Vec<f64>,
    pub communalities: CommunalityVector,
    /// M×N regression scoring weights `B`.
    pub scoring_weights: DMatrix<f64>,
    pub iterations_used: usize,
    pub converged: bool,
    pub variance_percent: Vec<f64>,
    pub cumulative_variance_percent: Vec<f64>,
    pub warnings: Vec<Warning>,
}

impl FactorModel {
    pub fn n_factors(&self) -> usize {
        self.rotated_loadings.ncols()
    }

    pub fn n_attributes(&self) -> usize {
        self.rotated_loadings.nrows()
    }

    /// Reorders factors so that reported factor `k` is internal factor `order[k]` (0-based).
    ///
    /// Every factor-indexed quantity is permuted together, so `Lᴿ = L*·V` and
    /// `B·Lᴿ = I` still hold, and cumulative percentages follow the new order.
    pub fn reorder(&self, order: &[usize]) -> Result<FactorModel> {
        let m = self.n_factors();
        let mut seen = vec![false; m];
        if order.len() != m || order.iter().any(|&q| q >= m || std::mem::replace(&mut seen[q], true)) {
            return Err(Error::Config(format!(
                "factor order {order:?} is not a permutation of {m} factors"
            )));
        }
        let cols = |a: &DMatrix<f64>| DMatrix::from_fn(a.nrows(), m, |i, k| a[(i, order[k])]);
        let rows = |a: &DMatrix<f64>| DMatrix::from_fn(m, a.ncols(), |k, j| a[(order[k], j)]);
        let pick = |v: &[f64]| order.iter().map(|&q| v[q]).collect::<Vec<_>>();
        let eigenvalues = pick(&self.eigenvalues);
        let (variance_percent, cumulative_variance_percent) =
            variance_accounting(&eigenvalues, self.n_attributes());
        Ok(FactorModel {
            attribute_names: self.attribute_names.clone(),
            unrotated_loadings: cols(&self.unrotated_loadings),
            rotated_loadings: cols(&self.rotated_loadings),
            rotation: rows(&cols(&self.rotation)),
            eigenvalues,
            extraction_eigenvalues: pick(&self.extraction_eigenvalues),
            communalities: self.communalities.clone(),
            scoring_weights: rows(&self.scoring_weights),
            iterations_used: self.iterations_used,
            converged: self.converged,
            variance_percent,
            cumulative_variance_percent,
            warnings: self.warnings.clone(),
        })
    }

    /// `attribute,factor_1,...,factor_M,communality,dominant_factor`
    pub fn loadings_csv(&self, dominant: &DominantAttributeMap) -> String {
        let m = self.n_factors();
        let mut out = String::from("attribute");
        for q in 1..=m {
            out.push_str(&format!(",factor_{q}"));
        }
        out.push_str(",communality,dominant_factor\n");
        for (i, name) in self.attribute_names.iter().enumerate() {
            out.push_str(name);
            for q in 0..m {
                out.push(',');
                out.push_str(&f6(self.rotated_loadings[(i, q)]));
            }
            out.push_str(&format!(
                ",{},{}\n",
                f6(self.communalities.values[i]),
                dominant.assignments[i].factor + 1
            ));
        }
        out
    }

    /// `factor,eigenvalue,pct_variance,cumulative_pct`
    pub fn eigenvalues_csv(&self) -> String {
        let mut out = String::from("factor,eigenvalue,pct_variance,cumulative_pct\n");
        for q in 0..self.n_factors() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                q + 1,
                f6(self.eigenvalues[q]),
                f6(self.variance_percent[q]),
                f6(self.cumulative_variance_percent[q])
            ));
        }
        out
    }

    /// `factor,<attribute_1>,...,<attribute_N>`, one row of `B` per factor.
    pub fn weights_csv(&self) -> String {
        let mut out = String::from("factor");
        for name in &self.attribute_names {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for q in 0..self.n_factors() {
            out.push_str(&(q + 1).to_string());
            for v in self.scoring_weights.row(q).iter() {
                out.push(',');
                out.push_str(&f6(*v));
            }
            out.push('\n');
        }
        out
    }
}

/// Percentage of total variance per factor (`λ / N × 100`) and its running sum.
pub fn variance_accounting(eigenvalues: &[f64], n_attributes: usize) -> (Vec<f64>, Vec<f64>) {
    let pct: Vec<f64> = eigenvalues
        .iter()
        .map(|l| l / n_attributes as f64 * 100.0)
        .collect();
    let cumulative = pct
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    (pct, cumulative)
}

/// `-1.0` for columns whose largest-magnitude entry is negative, else `1.0`.
/// The first entry wins among equal magnitudes.
pub fn canonical_column_signs(a: &DMatrix<f64>) -> Vec<f64> {
    a.column_iter()
        .map(|col| {
            let mut best = 0;
            for i in 1..col.len() {
                if col[i].abs() > col[best].abs() {
                    best = i;
                }
            }
            if !col.is_empty() && col[best] < 0.0 {
                -1.0
            } else {
                1.0
            }
        })
        .collect()
}

/// Flips factors so the largest-magnitude rotated loading of each is positive.
///
/// The rotated loading column, the matching column of `V` and row of `B` are flipped
/// together; factor scores computed from the result inherit the same signs.
pub fn sign_canonicalize(model: FactorModel) -> FactorModel {
    let signs = canonical_column_signs(&model.rotated_loadings);
    let mut out = model;
    for (q, &s) in signs.iter().enumerate() {
        if s < 0.0 {
            out.rotated_loadings.column_mut(q).neg_mut();
            out.rotation.column_mut(q).neg_mut();
            if out.scoring_weights.nrows() == signs.len() {
                out.scoring_weights.row_mut(q).neg_mut();
            }
        }
    }
    out
}
