use std::collections::HashSet;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// What to do with cells that are empty, non-numeric or non-finite.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MissingPolicy {
    #[default]
    Reject,
    DropRegion,
    ImputeMedian,
}

impl FromStr for MissingPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reject" => Ok(Self::Reject),
            "drop-region" => Ok(Self::DropRegion),
            "impute-median" => Ok(Self::ImputeMedian),
            other => Err(Error::Config(format!(
                "unknown missing-value policy `{other}` (expected reject, drop-region or impute-median)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IngestConfig {
    #[serde(default)]
    pub missing: MissingPolicy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MissingAction {
    DropRegion,
    ImputeMedian,
}

impl fmt::Display for MissingAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MissingAction::DropRegion => "drop-region",
            MissingAction::ImputeMedian => "impute-median",
        })
    }
}

/// One missing-value intervention, rendered as `<region_id>,<attribute>,<action>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenanceEntry {
    pub region_id: String,
    pub attribute: String,
    pub action: MissingAction,
}

impl fmt::Display for ProvenanceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.region_id, self.attribute, self.action)
    }
}

/// Raw observations: attribute `i` of region `j` lives at `values[(i, j)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeTable {
    attribute_names: Vec<String>,
    region_ids: Vec<String>,
    values: DMatrix<f64>,
    units: Vec<Option<String>>,
    provenance: Vec<ProvenanceEntry>,
}

impl AttributeTable {
    /// Builds a validated table from an N×R matrix.
    pub fn new(
        attribute_names: Vec<String>,
        region_ids: Vec<String>,
        values: DMatrix<f64>,
    ) -> Result<Self> {
        let n = attribute_names.len();
        let r = region_ids.len();
        if values.nrows() != n || values.ncols() != r {
            return Err(Error::DimensionMismatch(format!(
                "{} attribute names and {} region ids for a {}x{} matrix",
                n,
                r,
                values.nrows(),
                values.ncols()
            )));
        }
        check_unique("attribute name", &attribute_names)?;
        check_unique("region id", &region_ids)?;
        if n < 2 {
            return Err(Error::DegenerateData(format!(
                "at least 2 attributes are required, found {n}"
            )));
        }
        if r < n + 1 {
            return Err(Error::DegenerateData(format!(
                "{n} attributes need at least {} regions, found {r}",
                n + 1
            )));
        }
        for i in 0..n {
            for j in 0..r {
                let v = values[(i, j)];
                if !v.is_finite() {
                    return Err(Error::Schema(format!(
                        "non-finite value {v} at region `{}`, attribute `{}`",
                        region_ids[j], attribute_names[i]
                    )));
                }
            }
        }
        Ok(Self {
            units: vec![None; n],
            attribute_names,
            region_ids,
            values,
            provenance: Vec::new(),
        })
    }

    pub fn with_units(mut self, units: Vec<Option<String>>) -> Result<Self> {
        if units.len() != self.n_attributes() {
            return Err(Error::DimensionMismatch(format!(
                "{} units for {} attributes",
                units.len(),
                self.n_attributes()
            )));
        }
        self.units = units;
        Ok(self)
    }

    pub fn n_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn n_regions(&self) -> usize {
        self.region_ids.len()
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

    pub fn units(&self) -> &[Option<String>] {
        &self.units
    }

    /// Row `i` of the matrix: attribute `i` across all regions.
    pub fn attribute_row(&self, i: usize) -> Vec<f64> {
        self.values.row(i).iter().copied().collect()
    }

    pub fn provenance(&self) -> &[ProvenanceEntry] {
        &self.provenance
    }

    /// Provenance entries, one per line.
    pub fn provenance_log(&self) -> String {
        self.provenance.iter().map(|e| format!("{e}\n")).collect()
    }
}

fn check_unique(what: &str, items: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(items.len());
    for item in items {
        if !seen.insert(item.as_str()) {
            return Err(Error::Schema(format!("duplicate {what} `{item}`")));
        }
    }
    Ok(())
}

/// Splits `NAME [unit]` into the name and optional unit.
fn split_unit(header: &str) -> (String, Option<String>) {
    let h = header.trim();
    if let Some(open) = h.find('[') {
        if h.ends_with(']') {
            let name = h[..open].trim().to_string();
            let unit = h[open + 1..h.len() - 1].trim().to_string();
            return (name, (!unit.is_empty()).then_some(unit));
        }
    }
    (h.to_string(), None)
}

/// Reads the region-per-row CSV layout from a file.
pub fn load_table(path: impl AsRef<Path>, config: &IngestConfig) -> Result<AttributeTable> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Parse(format!("cannot open {}: {e}", path.display())))?;
    parse_table(file, config)
}

/// Reads the region-per-row CSV layout: a `region_id` column followed by one
/// column per attribute. Lines starting with `#` are comments.
pub fn parse_table<R: Read>(reader: R, config: &IngestConfig) -> Result<AttributeTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(Error::Parse("input is empty: no header row".into()));
    }
    if &headers[0] != "region_id" {
        return Err(Error::Schema(format!(
            "first column must be `region_id`, found `{}`",
            &headers[0]
        )));
    }
    if headers.len() < 2 {
        return Err(Error::Schema("no attribute columns after `region_id`".into()));
    }
    let (names, units): (Vec<String>, Vec<Option<String>>) =
        headers.iter().skip(1).map(split_unit).unzip();
    if let Some(pos) = names.iter().position(|n| n.is_empty()) {
        return Err(Error::Schema(format!("attribute column {} has an empty header", pos + 2)));
    }
    check_unique("attribute name", &names)?;
    let n = names.len();

    // cells[j][i]: region j, attribute i; None marks a missing cell
    let mut region_ids = Vec::new();
    let mut cells: Vec<Vec<Option<f64>>> = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let region = record[0].to_string();
        if region.is_empty() {
            return Err(Error::Schema(format!("empty region_id on data row {}", row + 1)));
        }
        let mut parsed = Vec::with_capacity(n);
        for (i, token) in record.iter().skip(1).enumerate() {
            match token.parse::<f64>() {
                Ok(v) if v.is_finite() => parsed.push(Some(v)),
                _ => {
                    if config.missing == MissingPolicy::Reject {
                        return Err(Error::Schema(format!(
                            "non-numeric cell `{token}` at region `{region}` (data row {}), attribute `{}`",
                            row + 1,
                            names[i]
                        )));
                    }
                    parsed.push(None);
                }
            }
        }
        region_ids.push(region);
        cells.push(parsed);
    }
    check_unique("region id", &region_ids)?;

    let mut provenance = Vec::new();
    match config.missing {
        MissingPolicy::Reject => {}
        MissingPolicy::DropRegion => {
            let mut kept_ids = Vec::new();
            let mut kept_cells = Vec::new();
            for (region, row) in region_ids.into_iter().zip(cells) {
                let missing: Vec<usize> = (0..n).filter(|&i| row[i].is_none()).collect();
                if missing.is_empty() {
                    kept_ids.push(region);
                    kept_cells.push(row);
                } else {
                    provenance.extend(missing.into_iter().map(|i| ProvenanceEntry {
                        region_id: region.clone(),
                        attribute: names[i].clone(),
                        action: MissingAction::DropRegion,
                    }));
                }
            }
            region_ids = kept_ids;
            cells = kept_cells;
        }
        MissingPolicy::ImputeMedian => {
            for i in 0..n {
                let present: Vec<f64> = cells.iter().filter_map(|row| row[i]).collect();
                if present.is_empty() && !cells.is_empty() {
                    return Err(Error::Schema(format!(
                        "attribute `{}` has no numeric values to impute from",
                        names[i]
                    )));
                }
                let med = median(&present);
                for (j, row) in cells.iter_mut().enumerate() {
                    if row[i].is_none() {
                        row[i] = Some(med);
                        provenance.push(ProvenanceEntry {
                            region_id: region_ids[j].clone(),
                            attribute: names[i].clone(),
                            action: MissingAction::ImputeMedian,
                        });
                    }
                }
            }
        }
    }

    let r = region_ids.len();
    let values = DMatrix::from_fn(n, r, |i, j| cells[j][i].expect("missing cells resolved"));
    let mut table = AttributeTable::new(names, region_ids, values)?.with_units(units)?;
    table.provenance = provenance;
    Ok(table)
}

/// Median of an unsorted sample; the mean of the two middle values for even sizes.
pub(crate) fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 0 {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    }
}
