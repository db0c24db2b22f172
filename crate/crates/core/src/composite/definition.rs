use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Suitability,
    Attractiveness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeEntry {
    pub dimension: Dimension,
    /// +1 or -1.
    pub sign: i8,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CompositeEntry {
    pub fn weight(&self) -> f64 {
        f64::from(self.sign)
    }
}

/// Assignment of every factor (by 1-based label) to one composite dimension with a sign.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeDefinition {
    entries: Vec<CompositeEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DefinitionFile {
    factors: BTreeMap<String, CompositeEntry>,
}

impl CompositeDefinition {
    /// Entry `k` describes factor `k + 1`.
    pub fn new(entries: Vec<CompositeEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::IncompleteDefinition("no factors defined".into()));
        }
        for (k, e) in entries.iter().enumerate() {
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::IncompleteDefinition(format!(
                    "factor {} has sign {}, expected +1 or -1",
                    k + 1,
                    e.sign
                )));
            }
        }
        Ok(Self { entries })
    }

    /// Six-factor default: factors 2, 3 and 4 form suitability (2 and 4 with negative
    /// impact), factors 1, 5 and 6 form attractiveness.
    pub fn vertiport_default() -> Self {
        let e = |dimension, sign, note: &str| CompositeEntry {
            dimension,
            sign,
            note: note.to_string(),
        };
        use Dimension::*;
        Self {
            entries: vec![
                e(Attractiveness, 1, "Economic Dynamism"),
                e(Suitability, -1, "Community Preparedness"),
                e(Suitability, 1, "Societal Equity"),
                e(Suitability, -1, "Operation Preparedness"),
                e(Attractiveness, 1, "Urban Vibrancy"),
                e(Attractiveness, 1, "Mobility Patterns"),
            ],
        }
    }

    /// Parses the TOML layout:
    ///
    /// ```toml
    /// [factors.1]
    /// dimension = "attractiveness"
    /// sign = 1
    /// note = "Economic Dynamism"
    /// ```
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: DefinitionFile =
            toml::from_str(text).map_err(|e| Error::IncompleteDefinition(e.message().to_string()))?;
        let mut indexed = BTreeMap::new();
        for (label, entry) in file.factors {
            let k: usize = label.trim().parse().map_err(|_| {
                Error::IncompleteDefinition(format!("factor label `{label}` is not a positive integer"))
            })?;
            if k == 0 {
                return Err(Error::IncompleteDefinition("factor labels start at 1".into()));
            }
            indexed.insert(k, entry);
        }
        let count = indexed.len();
        if indexed.keys().copied().ne(1..=count) {
            return Err(Error::IncompleteDefinition(format!(
                "factor labels must be exactly 1..={count}, found {:?}",
                indexed.keys().collect::<Vec<_>>()
            )));
        }
        Self::new(indexed.into_values().collect())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::IncompleteDefinition(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        let mut out = String::new();
        for (k, e) in self.entries.iter().enumerate() {
            let dim = match e.dimension {
                Dimension::Suitability => "suitability",
                Dimension::Attractiveness => "attractiveness",
            };
            out.push_str(&format!("[factors.{}]\ndimension = \"{dim}\"\nsign = {}\n", k + 1, e.sign));
            if !e.note.is_empty() {
                out.push_str(&format!("note = {:?}\n", e.note));
            }
            out.push('\n');
        }
        out
    }

    /// The literal 0/1 form: same assignment, every sign +1.
    pub fn binary(&self) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|e| CompositeEntry { sign: 1, ..e.clone() })
                .collect(),
        }
    }

    pub fn entries(&self) -> &[CompositeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// 0-based indices of the factors in `dimension`.
    pub fn members(&self, dimension: Dimension) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&k| self.entries[k].dimension == dimension)
            .collect()
    }

    pub fn check_factor_count(&self, m: usize) -> Result<()> {
        if self.entries.len() != m {
            return Err(Error::IncompleteDefinition(format!(
                "definition covers {} factors but the model has {m}",
                self.entries.len()
            )));
        }
        Ok(())
    }
}
