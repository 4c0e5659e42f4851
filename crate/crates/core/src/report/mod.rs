//! Result tables, run configuration files and SVG figures.

mod config;
mod csv;
mod curves;
mod parcoords;
mod regions;
mod svg;

pub use self::config::{OutputPaths, RunConfigFile, RUN_CONFIG_SCHEMA_VERSION};
pub use self::csv::{emit_csv, read_summary_csv, write_summary_csv, SUMMARY_HEADER};
pub use self::curves::{curves_svg, render_curves};
pub use self::parcoords::{parcoords_svg, render_parcoords};
pub use self::regions::{regions_svg, render_regions_2d, RegionBounds};
