use nalgebra::DMatrix;

use crate::Warning;

/// The factor an attribute loads on most strongly.
#[derive(Debug, Clone, PartialEq)]
pub struct DominantAssignment {
    pub attribute: String,
    /// 0-based factor index.
    pub factor: usize,
    pub loading: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominantAttributeMap {
    pub assignments: Vec<DominantAssignment>,
    /// Attribute indices per factor, by descending absolute loading.
    pub by_factor: Vec<Vec<usize>>,
    pub warnings: Vec<Warning>,
}

/// Assigns each attribute to the factor with the largest absolute loading.
/// Exact ties go to the lowest factor index and are reported as warnings.
pub fn dominant_attributes(rotated: &DMatrix<f64>, attribute_names: &[String]) -> DominantAttributeMap {
    let (n, m) = rotated.shape();
    let mut assignments = Vec::with_capacity(n);
    let mut warnings = Vec::new();
    for i in 0..n {
        let row = rotated.row(i);
        let mut best = 0;
        for q in 1..m {
            if row[q].abs() > row[best].abs() {
                best = q;
            }
        }
        let tied: Vec<usize> = (0..m).filter(|&q| row[q].abs() == row[best].abs()).collect();
        if tied.len() > 1 {
            warnings.push(Warning::DominantTie {
                attribute: attribute_names[i].clone(),
                factors: tied,
            });
        }
        assignments.push(DominantAssignment {
            attribute: attribute_names[i].clone(),
            factor: best,
            loading: row[best],
        });
    }
    let mut by_factor = vec![Vec::new(); m];
    for (i, a) in assignments.iter().enumerate() {
        by_factor[a.factor].push(i);
    }
    for list in &mut by_factor {
        list.sort_by(|&x, &y| {
            assignments[y]
                .loading
                .abs()
                .total_cmp(&assignments[x].loading.abs())
                .then(x.cmp(&y))
        });
    }
    DominantAttributeMap {
        assignments,
        by_factor,
        warnings,
    }
}
