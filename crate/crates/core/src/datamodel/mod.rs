//! Ingestion, description and standardization of the region-by-attribute table.

mod describe;
mod standardize;
mod table;

pub use describe::{describe, AttributeStats, DescriptiveStats};
pub use standardize::{standardize, StandardizedMatrix};
pub use table::{
    load_table, parse_table, AttributeTable, IngestConfig, MissingAction, MissingPolicy,
    ProvenanceEntry,
};
pub(crate) use table::median as median_of;
