use crate::composite::{quadrant_classify, CompositeDefinition, Dimension, Quadrant, Typology, TypologyConfig};
use crate::engine::FactorScores;
use crate::format::f6;
use crate::{Error, Result};

/// Per-region suitability and attractiveness composites.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeScores {
    pub region_ids: Vec<String>,
    pub suitability: Vec<f64>,
    pub attractiveness: Vec<f64>,
}

impl CompositeScores {
    pub fn len(&self) -> usize {
        self.region_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.region_ids.is_empty()
    }

    pub fn v_scores(&self, alpha: f64) -> Result<Vec<f64>> {
        check_alpha(alpha)?;
        Ok(self
            .suitability
            .iter()
            .zip(&self.attractiveness)
            .map(|(&s, &a)| blend(s, a, alpha))
            .collect())
    }
}

/// Signed sums of the factor scores assigned to each dimension.
pub fn composite_scores(f: &FactorScores, def: &CompositeDefinition) -> Result<CompositeScores> {
    def.check_factor_count(f.n_factors())?;
    let r = f.n_regions();
    let mut suitability = vec![0.0; r];
    let mut attractiveness = vec![0.0; r];
    for (m, entry) in def.entries().iter().enumerate() {
        let target = match entry.dimension {
            Dimension::Suitability => &mut suitability,
            Dimension::Attractiveness => &mut attractiveness,
        };
        let w = entry.weight();
        for (j, acc) in target.iter_mut().enumerate() {
            *acc += w * f.values[(m, j)];
        }
    }
    Ok(CompositeScores {
        region_ids: f.region_ids.clone(),
        suitability,
        attractiveness,
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AlphaRange(alpha))
    }
}

#[inline]
fn blend(s: f64, a: f64, alpha: f64) -> f64 {
    alpha * s + (1.0 - alpha) * a
}

/// `α·s + (1 − α)·a`.
pub fn v_score(suitability: f64, attractiveness: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(blend(suitability, attractiveness, alpha))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionScore {
    pub region_id: String,
    pub factor_scores: Vec<f64>,
    pub suitability: f64,
    pub attractiveness: f64,
    pub v_score: f64,
    pub quadrant: Quadrant,
    pub typology: Typology,
}

/// Joins factor scores, composites, v-scores at `alpha` and the quadrant typology.
pub fn region_scores(
    f: &FactorScores,
    def: &CompositeDefinition,
    alpha: f64,
    typology: &TypologyConfig,
) -> Result<Vec<RegionScore>> {
    check_alpha(alpha)?;
    let comp = composite_scores(f, def)?;
    let v = comp.v_scores(alpha)?;
    let classes = quadrant_classify(&comp, typology);
    Ok((0..comp.len())
        .map(|j| RegionScore {
            region_id: comp.region_ids[j].clone(),
            factor_scores: f.values.column(j).iter().copied().collect(),
            suitability: comp.suitability[j],
            attractiveness: comp.attractiveness[j],
            v_score: v[j],
            quadrant: classes[j].quadrant,
            typology: classes[j].typology,
        })
        .collect())
}

/// `region_id,f_1..f_M,suitability,attractiveness,v_score,quadrant,typology`
pub fn scores_csv(rows: &[RegionScore]) -> String {
    let m = rows.first().map_or(0, |r| r.factor_scores.len());
    let mut out = String::from("region_id");
    for q in 1..=m {
        out.push_str(&format!(",f_{q}"));
    }
    out.push_str(",suitability,attractiveness,v_score,quadrant,typology\n");
    for row in rows {
        out.push_str(&row.region_id);
        for v in &row.factor_scores {
            out.push(',');
            out.push_str(&f6(*v));
        }
        out.push_str(&format!(
            ",{},{},{},{},{}\n",
            f6(row.suitability),
            f6(row.attractiveness),
            f6(row.v_score),
            row.quadrant,
            row.typology
        ));
    }
    out
}
