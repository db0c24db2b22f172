use nalgebra::{DMatrix, DVector};

use crate::engine::{canonical_column_signs, CommunalityVector, CorrelationMatrix, EngineConfig};
use crate::linalg::symmetric_eigen_desc;
use crate::{Error, Result, Warning};

/// Snapshot of one principal-axis iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct PafIteration {
    /// 1-based iteration number.
    pub iteration: usize,
    /// Leading eigenvalues of the reduced matrix, one per retained factor.
    pub eigenvalues: Vec<f64>,
    /// N×M loadings, columns sign-canonicalized.
    pub loadings: DMatrix<f64>,
    /// Communalities derived from these loadings (clamped to [0, 1]).
    pub communalities: DVector<f64>,
    /// `Σᵢ |ĉᵢ²⁽ᵏ⁺¹⁾ - ĉᵢ²⁽ᵏ⁾|`.
    pub change: f64,
}

/// Unrotated principal-axis solution.
#[derive(Debug, Clone, PartialEq)]
pub struct PafSolution {
    pub loadings: DMatrix<f64>,
    pub communalities: CommunalityVector,
    /// All N eigenvalues of the first reduced matrix; the retention rule is applied to these.
    pub initial_eigenvalues: DVector<f64>,
    /// Retained eigenvalues of the reduced matrix at the final iteration.
    pub extraction_eigenvalues: Vec<f64>,
    pub n_factors: usize,
    pub iterations_used: usize,
    pub converged: bool,
    pub trace: Vec<PafIteration>,
    pub warnings: Vec<Warning>,
}

/// Iterative principal-axis factoring.
///
/// The factor count is fixed by applying the Kaiser threshold to the eigenvalues of the
/// first reduced matrix and held constant afterwards. Loadings use only retained
/// eigenpairs; a retained eigenvalue that later turns non-positive contributes a zero column.
pub fn paf_iterate(
    r: &CorrelationMatrix,
    initial: &CommunalityVector,
    config: &EngineConfig,
) -> Result<PafSolution> {
    config.validate()?;
    let n = r.dim();
    if initial.values.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} communalities for a {n}x{n} correlation matrix",
            initial.values.len()
        )));
    }
    let names = attribute_labels(n);

    let mut current = initial.values.clone();
    let mut n_factors: Option<usize> = None;
    let mut initial_eigenvalues: Option<DVector<f64>> = None;
    let mut trace: Vec<PafIteration> = Vec::new();
    let mut warnings = Vec::new();
    let mut heywood_seen = vec![false; n];
    let mut converged = false;

    for k in 1..=config.max_iterations {
        let mut reduced = r.values().clone();
        reduced.set_diagonal(&current);
        let (vals, vecs) = symmetric_eigen_desc(&reduced);

        let m = match n_factors {
            Some(m) => m,
            None => {
                let m = vals.iter().filter(|&&v| v >= config.kaiser_threshold).count();
                if m == 0 {
                    return Err(Error::NoFactorRetained {
                        threshold: config.kaiser_threshold,
                        largest: vals[0],
                    });
                }
                initial_eigenvalues = Some(vals.clone());
                n_factors = Some(m);
                m
            }
        };

        let mut loadings = DMatrix::zeros(n, m);
        for q in 0..m {
            let scale = vals[q].max(0.0).sqrt();
            loadings.set_column(q, &(vecs.column(q) * scale));
        }
        for (q, sign) in canonical_column_signs(&loadings).into_iter().enumerate() {
            if sign < 0.0 {
                loadings.column_mut(q).neg_mut();
            }
        }

        let mut next = DVector::zeros(n);
        for i in 0..n {
            let h2 = loadings.row(i).norm_squared();
            if !(0.0..=1.0).contains(&h2) {
                if !heywood_seen[i] {
                    heywood_seen[i] = true;
                    warnings.push(Warning::Heywood {
                        attribute: names[i].clone(),
                        iteration: k,
                        value: h2,
                    });
                }
                if h2 > 1.0 {
                    // keep row sums of squares equal to the clamped communality
                    let shrink = 1.0 / h2.sqrt();
                    loadings.row_mut(i).scale_mut(shrink);
                }
            }
            next[i] = h2.clamp(0.0, 1.0);
        }

        let change: f64 = (&next - &current).abs().sum();
        trace.push(PafIteration {
            iteration: k,
            eigenvalues: vals.iter().take(m).copied().collect(),
            loadings,
            communalities: next.clone(),
            change,
        });
        current = next;
        if change < config.epsilon {
            converged = true;
            break;
        }
    }

    let last = trace.last().expect("max_iterations >= 1");
    if !converged {
        warnings.push(Warning::NonConvergence {
            iterations: last.iteration,
            last_change: last.change,
        });
    }
    Ok(PafSolution {
        loadings: last.loadings.clone(),
        communalities: CommunalityVector {
            values: last.communalities.clone(),
            iteration: last.iteration,
        },
        initial_eigenvalues: initial_eigenvalues.expect("set on first iteration"),
        extraction_eigenvalues: last.eigenvalues.clone(),
        n_factors: n_factors.expect("set on first iteration"),
        iterations_used: last.iteration,
        converged,
        trace,
        warnings,
    })
}

// PAF only sees the correlation matrix; warnings name attributes by 1-based position
// and the fit driver substitutes real names.
fn attribute_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("#{i}")).collect()
}
