//! Property checks shared by the proptest suite and the acceptance report.
#![allow(dead_code)]

use lfa_core::composite::{quadrant_classify, sweep, top_k, CompositeScores, Quadrant, RankKey, TypologyConfig};
use lfa_core::datamodel::{describe, standardize, AttributeTable, StandardizedMatrix};
use lfa_core::engine::{
    correlation, factor_scores, initial_communalities, paf_iterate, scoring_weights, varimax,
    CorrelationMatrix, EngineConfig, VarimaxConfig,
};
use lfa_core::linalg::symmetric_eigen_desc;
use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Outcome = Result<(), TestCaseError>;

/// Attribute-major random data, N in 2..=7 and R in N+3..=40.
pub fn data_matrix() -> impl Strategy<Value = DMatrix<f64>> {
    (2usize..=7)
        .prop_flat_map(|n| (Just(n), n + 3..=40))
        .prop_flat_map(|(n, r)| {
            prop::collection::vec(-10.0f64..10.0, n * r)
                .prop_map(move |v| DMatrix::from_row_slice(n, r, &v))
        })
}

/// N×M loadings with N in 2..=10, M in 1..=min(N, 4).
pub fn loading_matrix() -> impl Strategy<Value = DMatrix<f64>> {
    (2usize..=10)
        .prop_flat_map(|n| (Just(n), 1..=n.min(4)))
        .prop_flat_map(|(n, m)| {
            prop::collection::vec(-1.0f64..1.0, n * m)
                .prop_map(move |v| DMatrix::from_row_slice(n, m, &v))
        })
}

/// Per-region suitability and attractiveness; half of the sets are coarsely rounded so
/// ties are common.
pub fn score_set() -> impl Strategy<Value = CompositeScores> {
    let raw = (1usize..=60).prop_flat_map(|r| {
        (
            prop::collection::vec(-5.0f64..5.0, r),
            prop::collection::vec(-5.0f64..5.0, r),
            any::<bool>(),
        )
    });
    raw.prop_map(|(s, a, coarse)| {
        let q = |v: Vec<f64>| {
            if coarse {
                v.into_iter().map(|x| (x * 2.0).round() / 2.0).collect()
            } else {
                v
            }
        };
        let r = s.len();
        CompositeScores {
            // ids are unique but out of creation order, so ties exercise the id rule
            region_ids: (0..r).map(|j| format!("g{}", (j * 7919) % 1000)).collect(),
            suitability: q(s),
            attractiveness: q(a),
        }
    })
}

fn table(x: &DMatrix<f64>) -> AttributeTable {
    let (n, r) = x.shape();
    AttributeTable::new(
        (0..n).map(|i| format!("x{i}")).collect(),
        (0..r).map(|j| format!("r{j:03}")).collect(),
        x.clone(),
    )
    .unwrap()
}

fn standardized(x: &DMatrix<f64>) -> Result<StandardizedMatrix, TestCaseError> {
    standardize(&table(x)).map_err(|e| TestCaseError::reject(e.to_string()))
}

fn well_conditioned(a: &StandardizedMatrix) -> Result<CorrelationMatrix, TestCaseError> {
    let r = correlation(a);
    if lfa_core::linalg::spd_condition(r.values()) > 1e8 {
        return Err(TestCaseError::reject("ill-conditioned sample"));
    }
    Ok(r)
}

pub fn rotation_orthogonal(l: &DMatrix<f64>) -> Outcome {
    let v = varimax(l, &VarimaxConfig::default()).rotation;
    let m = v.ncols();
    let err = (v.transpose() * &v - DMatrix::identity(m, m)).amax();
    prop_assert!(err < 1e-10, "‖VᵀV − I‖∞ = {err:e}");
    Ok(())
}

pub fn rotation_preserves_communalities(l: &DMatrix<f64>) -> Outcome {
    let rotated = varimax(l, &VarimaxConfig::default()).rotated;
    for i in 0..l.nrows() {
        let d = (l.row(i).norm_squared() - rotated.row(i).norm_squared()).abs();
        prop_assert!(d < 1e-10, "row {i} communality moved by {d:e}");
    }
    Ok(())
}

pub fn varimax_monotone(l: &DMatrix<f64>) -> Outcome {
    let trace = varimax(l, &VarimaxConfig::default()).criterion_trace;
    for w in trace.windows(2) {
        prop_assert!(w[1] >= w[0] - 1e-12, "criterion fell from {} to {}", w[0], w[1]);
    }
    Ok(())
}

pub fn weights_invert_loadings(x: &DMatrix<f64>, l: &DMatrix<f64>) -> Outcome {
    let a = standardized(x)?;
    let r = well_conditioned(&a)?;
    let n = r.dim();
    // fit the random loadings to the attribute count of the sample
    let l = DMatrix::from_fn(n, l.ncols().min(n), |i, q| l[(i % l.nrows(), q)] + 0.1 * (i as f64));
    if lfa_core::linalg::spd_condition(&(l.transpose() * &l)) > 1e8 {
        return Err(TestCaseError::reject("rank-deficient loadings"));
    }
    let b = scoring_weights(&r, &l, false).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let m = l.ncols();
    let err = (b * &l - DMatrix::identity(m, m)).amax();
    prop_assert!(err < 1e-8, "‖B·L − I‖∞ = {err:e}");
    Ok(())
}

pub fn score_rows_centered(x: &DMatrix<f64>, l: &DMatrix<f64>) -> Outcome {
    let a = standardized(x)?;
    let r = well_conditioned(&a)?;
    let n = r.dim();
    let l = DMatrix::from_fn(n, l.ncols().min(n), |i, q| l[(i % l.nrows(), q)] + 0.1 * (i as f64));
    if lfa_core::linalg::spd_condition(&(l.transpose() * &l)) > 1e8 {
        return Err(TestCaseError::reject("rank-deficient loadings"));
    }
    let b = scoring_weights(&r, &l, false).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let f = factor_scores(&b, &a).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for q in 0..f.n_factors() {
        let mean = f.values.row(q).mean();
        prop_assert!(mean.abs() < 1e-8, "factor {q} score mean {mean:e}");
    }
    Ok(())
}

pub fn eigen_residuals(x: &DMatrix<f64>) -> Outcome {
    let a = standardized(x)?;
    let r = correlation(&a);
    let c0 = match initial_communalities(&r, true) {
        Ok(c) => c,
        Err(e) => return Err(TestCaseError::reject(e.to_string())),
    };
    let mut reduced = r.values().clone();
    reduced.set_diagonal(&c0.values);
    let (vals, vecs) = symmetric_eigen_desc(&reduced);
    for m in 0..vals.len() {
        let q = vecs.column(m);
        let res = (&reduced * q - q * vals[m]).amax();
        prop_assert!(res < 1e-8, "eigenpair {m} residual {res:e}");
    }
    for w in vals.as_slice().windows(2) {
        prop_assert!(w[0] >= w[1], "eigenvalues not descending");
    }
    Ok(())
}

pub fn communalities_clamped(x: &DMatrix<f64>) -> Outcome {
    let a = standardized(x)?;
    let r = correlation(&a);
    let c0 = initial_communalities(&r, true).map_err(|e| TestCaseError::reject(e.to_string()))?;
    let cfg = EngineConfig {
        max_iterations: 50,
        ..EngineConfig::default()
    };
    let paf = match paf_iterate(&r, &c0, &cfg) {
        Ok(p) => p,
        Err(e) => return Err(TestCaseError::reject(e.to_string())),
    };
    for it in &paf.trace {
        prop_assert!(it.communalities.iter().all(|&c| (0.0..=1.0).contains(&c)));
    }
    for ev in paf.initial_eigenvalues.iter().take(paf.n_factors) {
        prop_assert!(*ev >= cfg.kaiser_threshold);
    }
    Ok(())
}

pub fn standardize_idempotent(x: &DMatrix<f64>) -> Outcome {
    let a = standardized(x)?;
    let again = standardize(&a.to_table().unwrap()).unwrap();
    let err = (a.values() - again.values()).amax();
    prop_assert!(err < 1e-10, "standardize twice moved values by {err:e}");
    for row in describe(&a.to_table().unwrap()).rows {
        prop_assert!((row.std - 1.0).abs() < 1e-10);
        prop_assert!(row.mean.abs() < 1e-10);
        prop_assert!(row.min <= row.median && row.median <= row.max);
    }
    Ok(())
}

pub fn v_score_linear(c: &CompositeScores, a1: f64, a2: f64, t: f64) -> Outcome {
    let mix = (t * a1 + (1.0 - t) * a2).clamp(0.0, 1.0);
    let v1 = c.v_scores(a1).unwrap();
    let v2 = c.v_scores(a2).unwrap();
    let vm = c.v_scores(mix).unwrap();
    for j in 0..c.len() {
        let d = (vm[j] - (t * v1[j] + (1.0 - t) * v2[j])).abs();
        prop_assert!(d < 1e-12, "region {j}: linearity gap {d:e}");
    }
    Ok(())
}

pub fn sweep_monotone(c: &CompositeScores, mut thetas: Vec<f64>) -> Outcome {
    thetas.sort_by(f64::total_cmp);
    thetas.dedup();
    let alphas = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
    let grid = sweep(c, &alphas, &thetas).unwrap();
    for k in 0..alphas.len() {
        for t in 1..thetas.len() {
            prop_assert!(grid.counts[t][k] <= grid.counts[t - 1][k]);
        }
        for t in 0..thetas.len() {
            prop_assert!(grid.counts[t][k] <= c.len());
        }
    }
    Ok(())
}

pub fn quadrants_partition(c: &CompositeScores) -> Outcome {
    let classes = quadrant_classify(c, &TypologyConfig::default());
    prop_assert_eq!(classes.len(), c.len());
    let med = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        let n = s.len();
        if n % 2 == 1 {
            s[n / 2]
        } else {
            (s[n / 2 - 1] + s[n / 2]) / 2.0
        }
    };
    let (ms, ma) = (med(&c.suitability), med(&c.attractiveness));
    let mut counts = [0usize; 4];
    for (j, cl) in classes.iter().enumerate() {
        let want = match (c.suitability[j] >= ms, c.attractiveness[j] >= ma) {
            (true, true) => Quadrant::BothHigh,
            (true, false) => Quadrant::SuitabilityBiased,
            (false, true) => Quadrant::AttractivenessBiased,
            (false, false) => Quadrant::BothLow,
        };
        prop_assert_eq!(cl.quadrant, want);
        counts[want as usize] += 1;
    }
    prop_assert_eq!(counts.iter().sum::<usize>(), c.len());
    Ok(())
}

pub fn endpoint_rankings(c: &CompositeScores) -> Outcome {
    let k = c.len();
    let ids = |key| {
        top_k(c, k, key)
            .unwrap()
            .into_iter()
            .map(|r| r.region_id)
            .collect::<Vec<_>>()
    };
    prop_assert_eq!(ids(RankKey::VScore(1.0)), ids(RankKey::Suitability));
    prop_assert_eq!(ids(RankKey::VScore(0.0)), ids(RankKey::Attractiveness));
    Ok(())
}
