//! Nested cavity classification.
//!
//! * [`geometry`]: parallel-coordinates polylines, planar hulls, surfaces and
//!   the nested cavity construction.
//! * [`classifiers`]: NCC, LDA, QDA and NCDA (NCC inside the outer surface,
//!   LDA outside it), sign calibration and model files.
//! * [`simulation`]: Gaussian and mixture generators plus the Monte-Carlo
//!   error-rate harness.
//! * [`report`]: result CSVs, run configuration files and SVG figures.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the common `f64` and `f32` instantiations.

pub mod classifiers;
pub mod data;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod simulation;

pub use classifiers::{Classifier, ClassifierKind, FitConfig, Model, NccConfig};
pub use data::{load_dataset, load_features, save_dataset, ClassId, Observation};
pub use error::{Error, Result};
pub use geometry::SurfaceMode;
pub use linalg::RegularizationLadder;
pub use rng::{derive_stream, SeedSpec};
pub use scalar::Scalar;

pub type Dataset = data::Dataset<f64>;
pub type Dataset32 = data::Dataset<f32>;
pub type Matrix = linalg::Matrix<f64>;
pub type Matrix32 = linalg::Matrix<f32>;
pub type CavityStack = geometry::CavityStack<f64>;
pub type CavityStack32 = geometry::CavityStack<f32>;
pub type Surface = geometry::Surface<f64>;
pub type Surface32 = geometry::Surface<f32>;
pub type Hull2D = geometry::Hull2D<f64>;
pub type Hull2D32 = geometry::Hull2D<f32>;
pub type NccModel = classifiers::NccModel<f64>;
pub type NccModel32 = classifiers::NccModel<f32>;
pub type LdaModel = classifiers::LdaModel<f64>;
pub type LdaModel32 = classifiers::LdaModel<f32>;
pub type QdaModel = classifiers::QdaModel<f64>;
pub type QdaModel32 = classifiers::QdaModel<f32>;
pub type NcdaModel = classifiers::NcdaModel<f64>;
pub type NcdaModel32 = classifiers::NcdaModel<f32>;
pub type AnyModel = classifiers::Model<f64>;
pub type AnyModel32 = classifiers::Model<f32>;
