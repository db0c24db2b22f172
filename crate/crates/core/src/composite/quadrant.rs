use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composite::CompositeScores;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrant {
    BothHigh,
    /// High suitability, low attractiveness.
    SuitabilityBiased,
    /// Low suitability, high attractiveness.
    AttractivenessBiased,
    BothLow,
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quadrant::BothHigh => "both_high",
            Quadrant::SuitabilityBiased => "suitability_biased",
            Quadrant::AttractivenessBiased => "attractiveness_biased",
            Quadrant::BothLow => "both_low",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Typology {
    Balanced,
    SuitabilityBiased,
    AttractivenessBiased,
    None,
}

impl fmt::Display for Typology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Typology::Balanced => "balanced",
            Typology::SuitabilityBiased => "suitability_biased",
            Typology::AttractivenessBiased => "attractiveness_biased",
            Typology::None => "none",
        })
    }
}

/// Bands on rank-normalized scores (both in [0, 1]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypologyConfig {
    pub balance_band: f64,
    pub bias_band: f64,
}

impl Default for TypologyConfig {
    fn default() -> Self {
        Self {
            balance_band: 0.1,
            bias_band: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub quadrant: Quadrant,
    pub typology: Typology,
}

/// Maps values to `(rank - 1) / (R - 1)` with average ranks for ties; a single value maps to 0.5.
pub fn rank_normalize(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    if n == 1 {
        return vec![0.5];
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end share the average 0-based rank
        let avg = (start + end - 1) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = avg / (n - 1) as f64;
        }
        start = end;
    }
    ranks
}

fn median(values: &[f64]) -> f64 {
    crate::datamodel::median_of(values)
}

/// Median splits of both composites (values at the median count as high), then
/// typologies from the rank-normalized gap `s̃ − ã`:
/// balanced inside the high/high quadrant when `|gap| ≤ balance_band`,
/// suitability- or attractiveness-biased anywhere when the gap exceeds `bias_band`.
pub fn quadrant_classify(scores: &CompositeScores, config: &TypologyConfig) -> Vec<Classification> {
    if scores.is_empty() {
        return Vec::new();
    }
    let med_s = median(&scores.suitability);
    let med_a = median(&scores.attractiveness);
    let rs = rank_normalize(&scores.suitability);
    let ra = rank_normalize(&scores.attractiveness);
    (0..scores.len())
        .map(|j| {
            let high_s = scores.suitability[j] >= med_s;
            let high_a = scores.attractiveness[j] >= med_a;
            let quadrant = match (high_s, high_a) {
                (true, true) => Quadrant::BothHigh,
                (true, false) => Quadrant::SuitabilityBiased,
                (false, true) => Quadrant::AttractivenessBiased,
                (false, false) => Quadrant::BothLow,
            };
            let gap = rs[j] - ra[j];
            let typology = if gap > config.bias_band {
                Typology::SuitabilityBiased
            } else if -gap > config.bias_band {
                Typology::AttractivenessBiased
            } else if quadrant == Quadrant::BothHigh && gap.abs() <= config.balance_band {
                Typology::Balanced
            } else {
                Typology::None
            };
            Classification { quadrant, typology }
        })
        .collect()
}
