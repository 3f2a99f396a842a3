//! Configuration, spectra, peak analysis, catalog matching and the
//! `rabiwave` command line on top of `rabiwave-core`.

pub mod catalog;
pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod peaks;
pub mod pipeline;
pub mod revival;
pub mod spectrum;

pub use catalog::{catalog_diagnostics, compare_catalog, MatchReport, ReferenceCatalog};
pub use cli::run_cli;
pub use config::{Experiment, RunConfig};
pub use error::{AnalysisError, CliError};
pub use peaks::{detect_peaks, Peak, PeakList};
pub use pipeline::{analyze, fit_line, linearity_scan, simulate, LinearFit, LinearityReport};
pub use revival::{classify_revival, RevivalLabels};
pub use spectrum::{spectrum_of, spectrum_of_samples, Spectrum, Window};
