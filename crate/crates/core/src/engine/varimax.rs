use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarimaxConfig {
    /// Stop once a full sweep improves the criterion by less than this.
    pub tolerance: f64,
    pub max_sweeps: usize,
    /// Kaiser row normalization before rotating.
    pub normalize: bool,
}

impl Default for VarimaxConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_sweeps: 100,
            normalize: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarimaxResult {
    /// `L·V`.
    pub rotated: DMatrix<f64>,
    /// Orthogonal M×M rotation `V`.
    pub rotation: DMatrix<f64>,
    /// Criterion before the first sweep followed by its value after every sweep.
    pub criterion_trace: Vec<f64>,
    pub sweeps: usize,
    pub converged: bool,
}

impl VarimaxResult {
    pub fn criterion(&self) -> f64 {
        *self.criterion_trace.last().expect("trace holds the starting value")
    }
}

/// Sum over factors of the variance of squared loadings.
///
/// With `normalize`, each row is first scaled to unit length (zero rows are left alone),
/// which is the quantity the Kaiser-normalized rotation maximizes.
pub fn varimax_criterion(loadings: &DMatrix<f64>, normalize: bool) -> f64 {
    let x = if normalize {
        kaiser_normalize(loadings)
    } else {
        loadings.clone()
    };
    raw_criterion(&x)
}

fn raw_criterion(x: &DMatrix<f64>) -> f64 {
    let p = x.nrows() as f64;
    x.column_iter()
        .map(|col| {
            let (s2, s4) = col.iter().fold((0.0, 0.0), |(a, b), v| {
                let v2 = v * v;
                (a + v2, b + v2 * v2)
            });
            s4 / p - (s2 / p) * (s2 / p)
        })
        .sum()
}

fn kaiser_normalize(loadings: &DMatrix<f64>) -> DMatrix<f64> {
    let mut x = loadings.clone();
    for mut row in x.row_iter_mut() {
        let h = row.norm();
        if h > 0.0 {
            row /= h;
        }
    }
    x
}

/// Orthogonal Varimax rotation by cyclic planar (pairwise) rotations.
///
/// Each planar step sets the angle that maximizes the criterion for that pair of
/// columns, so the criterion never decreases from one sweep to the next.
pub fn varimax(loadings: &DMatrix<f64>, config: &VarimaxConfig) -> VarimaxResult {
    let m = loadings.ncols();
    let mut rotation = DMatrix::identity(m, m);
    let mut x = if config.normalize {
        kaiser_normalize(loadings)
    } else {
        loadings.clone()
    };
    let mut trace = vec![raw_criterion(&x)];
    if m < 2 {
        return VarimaxResult {
            rotated: loadings.clone(),
            rotation,
            criterion_trace: trace,
            sweeps: 0,
            converged: true,
        };
    }

    let p = x.nrows() as f64;
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < config.max_sweeps {
        sweeps += 1;
        for j in 0..m - 1 {
            for k in j + 1..m {
                let (mut a, mut b, mut c, mut d) = (0.0, 0.0, 0.0, 0.0);
                for i in 0..x.nrows() {
                    let (xj, xk) = (x[(i, j)], x[(i, k)]);
                    let u = xj * xj - xk * xk;
                    let v = 2.0 * xj * xk;
                    a += u;
                    b += v;
                    c += u * u - v * v;
                    d += 2.0 * u * v;
                }
                let num = d - 2.0 * a * b / p;
                let den = c - (a * a - b * b) / p;
                if num.abs() < 1e-15 && den.abs() < 1e-15 {
                    continue;
                }
                let phi = 0.25 * num.atan2(den);
                if phi.abs() < 1e-15 {
                    continue;
                }
                let (s, co) = phi.sin_cos();
                rotate_columns(&mut x, j, k, co, s);
                rotate_columns(&mut rotation, j, k, co, s);
            }
        }
        let value = raw_criterion(&x);
        let gain = value - trace.last().copied().unwrap_or(value);
        trace.push(value);
        if gain < config.tolerance {
            converged = true;
            break;
        }
    }

    VarimaxResult {
        rotated: loadings * &rotation,
        rotation,
        criterion_trace: trace,
        sweeps,
        converged,
    }
}

fn rotate_columns(a: &mut DMatrix<f64>, j: usize, k: usize, c: f64, s: f64) {
    for i in 0..a.nrows() {
        let (x, y) = (a[(i, j)], a[(i, k)]);
        a[(i, j)] = c * x + s * y;
        a[(i, k)] = -s * x + c * y;
    }
}
