use nalgebra::DMatrix;

use crate::datamodel::describe::{mean, sample_std};
use crate::datamodel::table::AttributeTable;
use crate::{Error, Result};

/// Z-scored attribute matrix: every row has mean 0 and sample standard deviation 1.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedMatrix {
    attribute_names: Vec<String>,
    region_ids: Vec<String>,
    values: DMatrix<f64>,
}

impl StandardizedMatrix {
    /// Wraps an already-standardized matrix without re-checking the moments.
    pub fn from_parts(
        attribute_names: Vec<String>,
        region_ids: Vec<String>,
        values: DMatrix<f64>,
    ) -> Result<Self> {
        if values.nrows() != attribute_names.len() || values.ncols() != region_ids.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {} attributes and {} regions",
                values.nrows(),
                values.ncols(),
                attribute_names.len(),
                region_ids.len()
            )));
        }
        Ok(Self {
            attribute_names,
            region_ids,
            values,
        })
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn region_ids(&self) -> &[String] {
        &self.region_ids
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn n_attributes(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_regions(&self) -> usize {
        self.values.ncols()
    }

    /// Re-wraps the standardized values as a raw table.
    pub fn to_table(&self) -> Result<AttributeTable> {
        AttributeTable::new(
            self.attribute_names.clone(),
            self.region_ids.clone(),
            self.values.clone(),
        )
    }
}

/// Transforms each attribute row to `(x - mean) / std` with the `R - 1` sample std.
pub fn standardize(table: &AttributeTable) -> Result<StandardizedMatrix> {
    let n = table.n_attributes();
    let r = table.n_regions();
    let mut values = DMatrix::zeros(n, r);
    for i in 0..n {
        let row = table.attribute_row(i);
        let m = mean(&row);
        let s = sample_std(&row);
        if !(s > 0.0) {
            return Err(Error::ZeroVariance(table.attribute_names()[i].clone()));
        }
        for (j, x) in row.iter().enumerate() {
            values[(i, j)] = (x - m) / s;
        }
    }
    Ok(StandardizedMatrix {
        attribute_names: table.attribute_names().to_vec(),
        region_ids: table.region_ids().to_vec(),
        values,
    })
}
