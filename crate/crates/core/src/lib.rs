//! Latent factor analysis and composite site scoring.
//!
//! The pipeline takes a regions × attributes table, standardizes it, extracts
//! latent factors by iterative principal-axis factoring, rotates them with
//! Varimax, computes regression-method factor scores and finally aggregates
//! the factors into signed suitability / attractiveness composites that can be
//! blended into a single v-score and swept over weight/threshold grids.
//!
//! ```no_run
//! use lfa_core::datamodel::{load_table, standardize, IngestConfig};
//! use lfa_core::engine::{fit, EngineConfig};
//!
//! let table = load_table("regions.csv", &IngestConfig::default())?;
//! let z = standardize(&table)?;
//! let fitted = fit(&z, &EngineConfig::default())?;
//! println!("retained {} factors", fitted.model.n_factors());
//! # Ok::<(), lfa_core::Error>(())
//! ```

pub mod composite;
pub mod datamodel;
pub mod engine;
mod error;
pub mod format;
pub mod linalg;
pub mod synth;
mod warning;

pub use error::{Error, Result};
pub use warning::Warning;
