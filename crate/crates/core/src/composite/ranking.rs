use crate::composite::{CompositeDefinition, CompositeScores};
use crate::engine::FactorScores;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RankKey {
    Suitability,
    Attractiveness,
    VScore(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ranked {
    pub region_id: String,
    pub value: f64,
}

/// The `k` best regions by `key`, descending; equal values are ordered by region id.
pub fn top_k(scores: &CompositeScores, k: usize, key: RankKey) -> Result<Vec<Ranked>> {
    let n = scores.len();
    if k == 0 || k > n {
        return Err(Error::KRange { k, max: n });
    }
    let values = match key {
        RankKey::Suitability => scores.suitability.clone(),
        RankKey::Attractiveness => scores.attractiveness.clone(),
        RankKey::VScore(alpha) => scores.v_scores(alpha)?,
    };
    // adding 0.0 folds -0.0 into 0.0 so the two compare equal under total_cmp
    let values: Vec<f64> = values.into_iter().map(|v| v + 0.0).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        values[y]
            .total_cmp(&values[x])
            .then_with(|| scores.region_ids[x].cmp(&scores.region_ids[y]))
    });
    Ok(order
        .into_iter()
        .take(k)
        .map(|j| Ranked {
            region_id: scores.region_ids[j].clone(),
            value: values[j],
        })
        .collect())
}

/// Share of each factor in a region's total absolute (signed) factor score, in percent.
#[derive(Debug, Clone, PartialEq)]
pub struct Contribution {
    pub region_id: String,
    pub percent: Vec<f64>,
}

pub fn factor_contributions(
    f: &FactorScores,
    def: &CompositeDefinition,
    regions: &[String],
) -> Result<Vec<Contribution>> {
    def.check_factor_count(f.n_factors())?;
    regions
        .iter()
        .map(|id| {
            let j = f
                .region_index(id)
                .ok_or_else(|| Error::UnknownRegion(id.clone()))?;
            let abs: Vec<f64> = def
                .entries()
                .iter()
                .enumerate()
                .map(|(m, e)| (e.weight() * f.values[(m, j)]).abs())
                .collect();
            let total: f64 = abs.iter().sum();
            if total == 0.0 {
                return Err(Error::ZeroDenominator(id.clone()));
            }
            Ok(Contribution {
                region_id: id.clone(),
                percent: abs.iter().map(|v| v / total * 100.0).collect(),
            })
        })
        .collect()
}
