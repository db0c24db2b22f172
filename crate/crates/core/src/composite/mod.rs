//! Signed suitability/attractiveness composites, v-scores, quadrant typologies,
//! rankings and weight/threshold sweeps.

mod definition;
mod quadrant;
mod ranking;
mod scores;
mod sweep;

pub use definition::{CompositeDefinition, CompositeEntry, Dimension};
pub use quadrant::{quadrant_classify, rank_normalize, Classification, Quadrant, Typology, TypologyConfig};
pub use ranking::{factor_contributions, top_k, Contribution, RankKey, Ranked};
pub use scores::{composite_scores, region_scores, scores_csv, v_score, CompositeScores, RegionScore};
pub use sweep::{alpha_grid, sweep, SweepGrid};
