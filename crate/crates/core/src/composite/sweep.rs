use crate::composite::CompositeScores;
use crate::format::{f6, fixed};
use crate::{Error, Result};

/// Region counts with `v_score > θ` for every (θ, α) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub alphas: Vec<f64>,
    pub thetas: Vec<f64>,
    /// `counts[t][k]` for `thetas[t]`, `alphas[k]`.
    pub counts: Vec<Vec<usize>>,
    pub percentages: Vec<Vec<f64>>,
    pub n_regions: usize,
}

/// Evenly spaced weights `start, start + step, ..., ≤ stop`, each rounded to 12 decimals
/// so that e.g. `3 × 0.2` lands on `0.6`.
pub fn alpha_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Config(format!("alpha step must be positive, got {step}")));
    }
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) || start > stop {
        return Err(Error::Config(format!(
            "alpha range [{start}, {stop}] must satisfy 0 <= start <= stop <= 1"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// Counts regions whose v-score strictly exceeds each threshold.
pub fn sweep(scores: &CompositeScores, alphas: &[f64], thetas: &[f64]) -> Result<SweepGrid> {
    if alphas.is_empty() || thetas.is_empty() {
        return Err(Error::Config("sweep grids must be non-empty".into()));
    }
    let n = scores.len();
    let v_by_alpha = alphas
        .iter()
        .map(|&alpha| scores.v_scores(alpha))
        .collect::<Result<Vec<_>>>()?;
    let counts: Vec<Vec<usize>> = thetas
        .iter()
        .map(|&theta| {
            v_by_alpha
                .iter()
                .map(|v| v.iter().filter(|&&x| x > theta).count())
                .collect()
        })
        .collect();
    let percentages = counts
        .iter()
        .map(|row| {
            row.iter()
                .map(|&c| if n == 0 { 0.0 } else { c as f64 / n as f64 * 100.0 })
                .collect()
        })
        .collect();
    Ok(SweepGrid {
        alphas: alphas.to_vec(),
        thetas: thetas.to_vec(),
        counts,
        percentages,
        n_regions: n,
    })
}

fn label(x: f64) -> String {
    format!("{x:?}")
}

impl SweepGrid {
    /// θ rows × α columns, cells `count (pct%)` with one decimal.
    pub fn wide_csv(&self) -> String {
        let mut out = String::from("theta");
        for &a in &self.alphas {
            out.push(',');
            out.push_str(&label(a));
        }
        out.push('\n');
        for (t, &theta) in self.thetas.iter().enumerate() {
            out.push_str(&label(theta));
            for k in 0..self.alphas.len() {
                out.push_str(&format!(
                    ",{} ({}%)",
                    self.counts[t][k],
                    fixed(self.percentages[t][k], 1)
                ));
            }
            out.push('\n');
        }
        out
    }

    /// `theta,alpha,count,pct`, θ-major.
    pub fn long_csv(&self) -> String {
        let mut out = String::from("theta,alpha,count,pct\n");
        for (t, &theta) in self.thetas.iter().enumerate() {
            for (k, &alpha) in self.alphas.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    label(theta),
                    label(alpha),
                    self.counts[t][k],
                    f6(self.percentages[t][k])
                ));
            }
        }
        out
    }
}
