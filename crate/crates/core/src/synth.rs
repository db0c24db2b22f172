//! Synthetic region-by-attribute tables with a planted simple-structure factor model.
//!
//! Each attribute loads on exactly one factor. Standardized data are
//! `L·F + σ·E`, where the factor scores `F` are centered and orthonormalized across
//! regions so that the planted factors are exactly uncorrelated in the sample, and `E`
//! is i.i.d. standard normal noise. Rows are then mapped to raw units with a per-attribute
//! mean and standard deviation.

use self::perm::permutations;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::datamodel::AttributeTable;
use crate::{Error, Result};

/// Attribute names, raw-unit mean and std, and planted factor (1-based) of the
/// 25-attribute urban schema.
const URBAN_SCHEMA: [(&str, f64, f64, usize); 25] = [
    ("HOUS_DEN", 7109.123, 3811.969, 2),
    ("FL_POP_DEN", 23216.819, 12506.621, 2),
    ("FOR_POP_DEN", 347.584, 1061.019, 5),
    ("CMM_POP_RATIO", 4445.137, 2485.035, 6),
    ("I_POP_RATIO", 0.970, 0.833, 5),
    ("DIS_POP_P", 0.041, 0.017, 3),
    ("BEN_POP_P", 0.040, 0.031, 3),
    ("SEN_POP_P", 0.182, 0.040, 3),
    ("AVG_INC", 3.308, 1.099, 3),
    ("SPEND_P", 2128.242, 10895.023, 1),
    ("TR_EXP_P", 0.067, 0.107, 6),
    ("BUS_ST_DEN", 24.289, 12.967, 2),
    ("METRO_COV_P", 0.662, 0.319, 2),
    ("METRO_USR_DEN", 5538.780, 11683.466, 1),
    ("BUS_USR_DEN", 465.426, 268.217, 6),
    ("PS_DEN", 9794.966, 5851.015, 2),
    ("TOUR_DEN", 1.620, 2.489, 5),
    ("CULT_DEN", 4.636, 13.141, 5),
    ("EN_USE_INT", 1.000, 1.001, 1),
    ("EMPL_DEN", 11269.860, 12975.330, 1),
    ("LAND_PR", 4.663, 3.092, 1),
    ("HELI_DIST", 1.946, 1.486, 4),
    ("HOSP_DIST", 3.421, 2.073, 4),
    ("VFR_DIST", 3.103, 2.169, 4),
    ("FS_DIST", 2.037, 1.143, 4),
];

/// Which factor each attribute loads on, and how strongly.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedStructure {
    pub attribute_names: Vec<String>,
    /// 0-based factor per attribute.
    pub factor_of: Vec<usize>,
    pub n_factors: usize,
    pub loading: f64,
    pub raw_mean: Vec<f64>,
    pub raw_std: Vec<f64>,
}

impl PlantedStructure {
    /// The 25-attribute urban schema with six planted factors.
    pub fn urban() -> Self {
        Self {
            attribute_names: URBAN_SCHEMA.iter().map(|r| r.0.to_string()).collect(),
            factor_of: URBAN_SCHEMA.iter().map(|r| r.3 - 1).collect(),
            n_factors: 6,
            loading: 0.8,
            raw_mean: URBAN_SCHEMA.iter().map(|r| r.1).collect(),
            raw_std: URBAN_SCHEMA.iter().map(|r| r.2).collect(),
        }
    }

    /// `n_attributes` split into `n_factors` contiguous, near-equal blocks in standard units.
    pub fn blocks(n_attributes: usize, n_factors: usize, loading: f64) -> Result<Self> {
        if n_factors == 0 || n_factors > n_attributes {
            return Err(Error::Config(format!(
                "cannot plant {n_factors} factors on {n_attributes} attributes"
            )));
        }
        Ok(Self {
            attribute_names: (1..=n_attributes).map(|i| format!("X{i}")).collect(),
            factor_of: (0..n_attributes).map(|i| i * n_factors / n_attributes).collect(),
            n_factors,
            loading,
            raw_mean: vec![0.0; n_attributes],
            raw_std: vec![1.0; n_attributes],
        })
    }

    pub fn n_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    /// N×K planted loadings with entries in `{0, loading}`.
    pub fn loading_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n_attributes(), self.n_factors, |i, m| {
            if self.factor_of[i] == m {
                self.loading
            } else {
                0.0
            }
        })
    }

    /// Loadings the planted model implies on the correlation scale once each attribute
    /// is standardized: `loading / sqrt(loading² + noise²)`.
    pub fn correlation_scale_loadings(&self, noise_std: f64) -> DMatrix<f64> {
        let scale = 1.0 / (self.loading * self.loading + noise_std * noise_std).sqrt();
        self.loading_matrix() * scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub seed: u64,
    pub regions: usize,
    pub noise_std: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            regions: 426,
            noise_std: 0.05,
        }
    }
}

/// Draws a table from the planted model. Deterministic for a given seed.
pub fn generate(structure: &PlantedStructure, config: &SynthConfig) -> Result<AttributeTable> {
    let n = structure.n_attributes();
    let k = structure.n_factors;
    let r = config.regions;
    if r <= k || r < n + 1 {
        return Err(Error::Config(format!(
            "{r} regions are too few for {n} attributes and {k} factors"
        )));
    }
    if !(config.noise_std >= 0.0) {
        return Err(Error::Config("noise_std must be non-negative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut draw = |rows: usize, cols: usize| {
        // row-major fill keeps the stream order independent of storage layout
        let mut m = DMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = StandardNormal.sample(&mut rng);
            }
        }
        m
    };
    let factors = orthonormal_scores(draw(k, r));
    let noise = draw(n, r);

    let signal = structure.loading_matrix() * factors + noise * config.noise_std;
    let values = DMatrix::from_fn(n, r, |i, j| {
        structure.raw_mean[i] + structure.raw_std[i] * signal[(i, j)]
    });
    let width = r.to_string().len().max(3);
    let regions = (1..=r).map(|j| format!("R{j:0width$}")).collect();
    AttributeTable::new(structure.attribute_names.clone(), regions, values)
}

/// Centers each row and orthonormalizes the rows so that `F·Fᵀ / (R - 1) = I`.
fn orthonormal_scores(raw: DMatrix<f64>) -> DMatrix<f64> {
    let (k, r) = raw.shape();
    let mut f = raw;
    for mut row in f.row_iter_mut() {
        let mean = row.mean();
        row.add_scalar_mut(-mean);
    }
    let scale = ((r - 1) as f64).sqrt();
    for i in 0..k {
        for p in 0..i {
            let proj = f.row(i).dot(&f.row(p));
            let updated = f.row(i) - f.row(p) * proj;
            f.set_row(i, &updated);
        }
        let norm = f.row(i).norm();
        f.row_mut(i).scale_mut(1.0 / norm);
    }
    f * scale
}

/// CSV text with a `#` header documenting the planted structure.
pub fn to_csv(table: &AttributeTable, structure: &PlantedStructure, config: &SynthConfig) -> String {
    let mut out = String::new();
    out.push_str("# synthetic region-by-attribute table\n");
    out.push_str(&format!(
        "# seed={} regions={} factors={} loading={} noise_std={}\n",
        config.seed,
        config.regions,
        structure.n_factors,
        structure.loading,
        config.noise_std
    ));
    out.push_str("# model: z = L*F + noise_std*E per attribute, F orthonormal across regions; raw = mean + std*z\n");
    out.push_str("# planted factor (1-based) per attribute:");
    for (name, f) in structure.attribute_names.iter().zip(&structure.factor_of) {
        out.push_str(&format!(" {name}={}", f + 1));
    }
    out.push('\n');

    out.push_str("region_id");
    for name in table.attribute_names() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    let values = table.values();
    for (j, id) in table.region_ids().iter().enumerate() {
        out.push_str(id);
        for i in 0..table.n_attributes() {
            out.push_str(&format!(",{}", values[(i, j)]));
        }
        out.push('\n');
    }
    out
}

/// Smallest max-abs deviation between `recovered` and `target` over all column
/// permutations and column sign flips, or `None` when the factor counts differ.
pub fn recovery_error(recovered: &DMatrix<f64>, target: &DMatrix<f64>) -> Option<f64> {
    if recovered.shape() != target.shape() {
        return None;
    }
    let k = target.ncols();
    // cost[a][b]: deviation of recovered column a against target column b, best sign
    let cost: Vec<Vec<f64>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    let plus = (recovered.column(a) - target.column(b)).amax();
                    let minus = (recovered.column(a) + target.column(b)).amax();
                    plus.min(minus)
                })
                .collect()
        })
        .collect();
    permutations(k)
        .map(|perm| perm.iter().enumerate().map(|(a, &b)| cost[a][b]).fold(0.0, f64::max))
        .min_by(f64::total_cmp)
}

mod perm {
    /// All permutations of `0..k` in lexicographic order.
    pub fn permutations(k: usize) -> impl Iterator<Item = Vec<usize>> {
        let mut next = Some((0..k).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut p = current.clone();
            // standard next-permutation step
            if let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) {
                let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
                p.swap(i - 1, j);
                p[i..].reverse();
                next = Some(p);
            }
            Some(current)
        })
    }
}
