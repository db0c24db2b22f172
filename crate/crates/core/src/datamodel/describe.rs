use crate::datamodel::table::{median, AttributeTable};
use crate::format::f6;
use crate::Warning;

/// Moments of one attribute in raw units.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeStats {
    pub attribute: String,
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (denominator `count - 1`).
    pub std: f64,
    pub min: f64,
    pub median: f64,
    pub max: f64,
    /// Adjusted Fisher–Pearson skewness (G1).
    pub skewness: f64,
    /// Bias-adjusted excess kurtosis (G2); zero for a normal population.
    pub kurtosis: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescriptiveStats {
    pub rows: Vec<AttributeStats>,
    pub warnings: Vec<Warning>,
}

impl DescriptiveStats {
    pub const CSV_HEADER: &'static str = "attribute,count,mean,std,min,median,max,skewness,kurtosis";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for s in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                s.attribute,
                s.count,
                f6(s.mean),
                f6(s.std),
                f6(s.min),
                f6(s.median),
                f6(s.max),
                f6(s.skewness),
                f6(s.kurtosis)
            ));
        }
        out
    }
}

pub fn describe(table: &AttributeTable) -> DescriptiveStats {
    let mut warnings = Vec::new();
    let rows = table
        .attribute_names()
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let stats = row_stats(name, &table.attribute_row(i));
            if stats.skewness.is_nan() {
                warnings.push(Warning::UndefinedMoment {
                    attribute: name.clone(),
                    moment: "skewness",
                });
            }
            if stats.kurtosis.is_nan() {
                warnings.push(Warning::UndefinedMoment {
                    attribute: name.clone(),
                    moment: "kurtosis",
                });
            }
            stats
        })
        .collect();
    DescriptiveStats { rows, warnings }
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation with denominator `n - 1`.
pub(crate) fn sample_std(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return f64::NAN;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (n - 1) as f64).sqrt()
}

fn row_stats(name: &str, xs: &[f64]) -> AttributeStats {
    let n = xs.len();
    let nf = n as f64;
    let m = mean(xs);
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in xs {
        let d = x - m;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= nf;
    m3 /= nf;
    m4 /= nf;

    let skewness = if n < 3 || m2 == 0.0 {
        f64::NAN
    } else {
        let g1 = m3 / m2.powf(1.5);
        (nf * (nf - 1.0)).sqrt() / (nf - 2.0) * g1
    };
    let kurtosis = if n < 4 || m2 == 0.0 {
        f64::NAN
    } else {
        let g2 = m4 / (m2 * m2) - 3.0;
        (nf - 1.0) / ((nf - 2.0) * (nf - 3.0)) * ((nf + 1.0) * g2 + 6.0)
    };

    AttributeStats {
        attribute: name.to_string(),
        count: n,
        mean: m,
        std: sample_std(xs),
        min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        median: median(xs),
        max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        skewness,
        kurtosis,
    }
}
