//! Configuration files, scan CSV, fit reports, and plots.

pub mod config;
pub mod csv;
pub mod plot;
pub mod report;

pub use config::{default_config_text, Config, ConfigError};
pub use csv::{from_csv, read_csv, to_csv, write_csv, CsvError, CSV_HEADER};
pub use plot::{ascii_plot, svg_plot};
pub use report::render_report;
