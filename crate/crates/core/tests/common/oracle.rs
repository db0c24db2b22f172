//! Brute-force reference computations over plain nested vectors.
//!
//! Nothing here calls into the library: means and deviations are summed in loops,
//! inverses come from Gauss-Jordan elimination and eigenpairs from cyclic Jacobi
//! rotations, so agreement with the library is evidence rather than tautology.
#![allow(dead_code)]

pub type Mat = Vec<Vec<f64>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0.0; c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for i in 0..n {
        m[i][i] = 1.0;
    }
    m
}

pub fn transpose(a: &Mat) -> Mat {
    let mut t = zeros(a[0].len(), a.len());
    for i in 0..a.len() {
        for j in 0..a[0].len() {
            t[j][i] = a[i][j];
        }
    }
    t
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let mut c = zeros(a.len(), b[0].len());
    for i in 0..a.len() {
        for j in 0..b[0].len() {
            let mut s = 0.0;
            for k in 0..b.len() {
                s += a[i][k] * b[k][j];
            }
            c[i][j] = s;
        }
    }
    c
}

pub fn mean(x: &[f64]) -> f64 {
    let mut s = 0.0;
    for v in x {
        s += v;
    }
    s / x.len() as f64
}

pub fn sample_std(x: &[f64]) -> f64 {
    let m = mean(x);
    let mut s = 0.0;
    for v in x {
        s += (v - m) * (v - m);
    }
    (s / (x.len() as f64 - 1.0)).sqrt()
}

pub fn median(x: &[f64]) -> f64 {
    let mut s = x.to_vec();
    // insertion sort
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j - 1] > s[j] {
            s.swap(j - 1, j);
            j -= 1;
        }
    }
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / 2.0
    }
}

/// Adjusted Fisher-Pearson skewness and bias-corrected excess kurtosis.
pub fn skew_kurt(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = mean(x);
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in x {
        let d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    let g1 = m3 / m2.powf(1.5);
    let g2 = m4 / (m2 * m2) - 3.0;
    let skew = g1 * (n * (n - 1.0)).sqrt() / (n - 2.0);
    let kurt = (n - 1.0) / ((n - 2.0) * (n - 3.0)) * ((n + 1.0) * g2 + 6.0);
    (skew, kurt)
}

pub fn standardize(x: &Mat) -> Mat {
    x.iter()
        .map(|row| {
            let m = mean(row);
            let s = sample_std(row);
            row.iter().map(|v| (v - m) / s).collect()
        })
        .collect()
}

pub fn correlation(a: &Mat) -> Mat {
    let n = a.len();
    let r = a[0].len();
    let mut c = zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..r {
                s += a[i][k] * a[j][k];
            }
            c[i][j] = s / (r as f64 - 1.0);
        }
    }
    c
}

/// Gauss-Jordan elimination with partial pivoting.
pub fn inverse(a: &Mat) -> Mat {
    let n = a.len();
    let mut m: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let mut p = col;
        for r in col + 1..n {
            if m[r][col].abs() > m[p][col].abs() {
                p = r;
            }
        }
        m.swap(col, p);
        let d = m[col][col];
        assert!(d.abs() > 1e-300, "singular matrix in oracle");
        for v in m[col].iter_mut() {
            *v /= d;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    for c in 0..2 * n {
                        m[r][c] -= f * m[col][c];
                    }
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn smc(r: &Mat) -> Vec<f64> {
    let inv = inverse(r);
    (0..r.len()).map(|i| (1.0 - 1.0 / inv[i][i]).clamp(0.0, 1.0)).collect()
}

/// Cyclic Jacobi eigendecomposition; eigenvalues descending, eigenvectors as columns.
pub fn jacobi_eigen(a: &Mat) -> (Vec<f64>, Mat) {
    let n = a.len();
    let mut a = a.clone();
    let mut v = identity(n);
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[i][j] * a[i][j];
                }
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k][p], v[k][q]);
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[y][y].partial_cmp(&a[x][x]).unwrap());
    let vals = order.iter().map(|&i| a[i][i]).collect();
    let mut vecs = zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        for k in 0..n {
            vecs[k][c] = v[k][i];
        }
    }
    (vals, vecs)
}

/// Flips each column so its largest-magnitude entry (first on ties) is positive.
pub fn canonical_columns(l: &mut Mat) {
    for q in 0..l[0].len() {
        let mut best = 0;
        for i in 1..l.len() {
            if l[i][q].abs() > l[best][q].abs() {
                best = i;
            }
        }
        if l[best][q] < 0.0 {
            for row in l.iter_mut() {
                row[q] = -row[q];
            }
        }
    }
}

pub struct PafStep {
    pub loadings: Mat,
    pub communalities: Vec<f64>,
    pub change: f64,
}

pub struct PafTrace {
    pub n_factors: usize,
    pub first_eigenvalues: Vec<f64>,
    pub steps: Vec<PafStep>,
}

pub fn paf(r: &Mat, c0: &[f64], eps: f64, max_iter: usize) -> PafTrace {
    let n = r.len();
    let mut c = c0.to_vec();
    let mut m = 0;
    let mut first = Vec::new();
    let mut steps = Vec::new();
    for k in 0..max_iter {
        let mut rs = r.clone();
        for i in 0..n {
            rs[i][i] = c[i];
        }
        let (vals, vecs) = jacobi_eigen(&rs);
        if k == 0 {
            m = vals.iter().filter(|&&v| v >= 1.0).count();
            first = vals.clone();
        }
        let mut l = zeros(n, m);
        for q in 0..m {
            let s = vals[q].max(0.0).sqrt();
            for i in 0..n {
                l[i][q] = vecs[i][q] * s;
            }
        }
        canonical_columns(&mut l);
        let mut next = vec![0.0; n];
        for i in 0..n {
            let mut h = 0.0;
            for q in 0..m {
                h += l[i][q] * l[i][q];
            }
            if h > 1.0 {
                for q in 0..m {
                    l[i][q] /= h.sqrt();
                }
            }
            next[i] = h.clamp(0.0, 1.0);
        }
        let mut change = 0.0;
        for i in 0..n {
            change += (next[i] - c[i]).abs();
        }
        c = next.clone();
        steps.push(PafStep {
            loadings: l,
            communalities: next,
            change,
        });
        if change < eps {
            break;
        }
    }
    PafTrace {
        n_factors: m,
        first_eigenvalues: first,
        steps,
    }
}

/// Raw varimax criterion after row normalization.
pub fn varimax_criterion(l: &Mat) -> f64 {
    let p = l.len() as f64;
    let mut total = 0.0;
    for q in 0..l[0].len() {
        let (mut s2, mut s4) = (0.0, 0.0);
        for row in l {
            let mut h = 0.0;
            for v in row {
                h += v * v;
            }
            let x = if h > 0.0 { row[q] / h.sqrt() } else { 0.0 };
            s2 += x * x;
            s4 += x * x * x * x;
        }
        total += s4 / p - (s2 / p) * (s2 / p);
    }
    total
}

pub fn rotate2(l: &Mat, theta: f64) -> Mat {
    let (s, c) = theta.sin_cos();
    l.iter()
        .map(|r| vec![c * r[0] + s * r[1], -s * r[0] + c * r[1]])
        .collect()
}

/// Best planar rotation of a two-column loading matrix found on a grid of angles in
/// `[0, π/2)` with the given step. Returns the criterion and rotated loadings.
pub fn varimax_grid(l: &Mat, step: f64) -> (f64, Mat) {
    let mut best = (f64::NEG_INFINITY, 0.0);
    let mut t = 0.0;
    while t < std::f64::consts::FRAC_PI_2 {
        let c = varimax_criterion(&rotate2(l, t));
        if c > best.0 {
            best = (c, t);
        }
        t += step;
    }
    // golden-section refinement inside the winning cell
    let (mut lo, mut hi) = (best.1 - step, best.1 + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if varimax_criterion(&rotate2(l, a)) > varimax_criterion(&rotate2(l, b)) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let t = (lo + hi) / 2.0;
    let rotated = rotate2(l, t);
    (varimax_criterion(&rotated), rotated)
}

/// `(LᵀR⁻¹L)⁻¹ LᵀR⁻¹`.
pub fn scoring_weights(r: &Mat, l: &Mat) -> Mat {
    let ri = inverse(r);
    let lt_ri = matmul(&transpose(l), &ri);
    matmul(&inverse(&matmul(&lt_ri, l)), &lt_ri)
}

pub fn composites(f: &Mat, signs: &[(bool, f64)]) -> (Vec<f64>, Vec<f64>) {
    let r = f[0].len();
    let mut s = vec![0.0; r];
    let mut a = vec![0.0; r];
    for j in 0..r {
        for (m, &(is_suit, sign)) in signs.iter().enumerate() {
            if is_suit {
                s[j] += sign * f[m][j];
            } else {
                a[j] += sign * f[m][j];
            }
        }
    }
    (s, a)
}

pub fn sweep_counts(s: &[f64], a: &[f64], alphas: &[f64], thetas: &[f64]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; alphas.len()]; thetas.len()];
    for (t, theta) in thetas.iter().enumerate() {
        for (k, alpha) in alphas.iter().enumerate() {
            for j in 0..s.len() {
                if alpha * s[j] + (1.0 - alpha) * a[j] > *theta {
                    out[t][k] += 1;
                }
            }
        }
    }
    out
}

/// Indices sorted by descending value, ties by ascending id.
pub fn ranking(values: &[f64], ids: &[String]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    // selection sort keeps the rule explicit
    for i in 0..idx.len() {
        let mut best = i;
        for j in i + 1..idx.len() {
            let (x, y) = (idx[j], idx[best]);
            if values[x] > values[y] || (values[x] == values[y] && ids[x] < ids[y]) {
                best = j;
            }
        }
        idx.swap(i, best);
    }
    idx
}
