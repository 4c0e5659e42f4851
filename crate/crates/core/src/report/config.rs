//! JSON run configuration for the `simulate` command.
//!
//! Every key is optional except `schema_version`; omitted keys take the
//! defaults of [`ExperimentConfig`]. Unknown keys are rejected.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "experiment": "EXP2",
//!   "separation": 1.0,
//!   "dims": [2, 4, 8, 16],
//!   "train_sizes": [10, 20, 40, 80, 160, 200],
//!   "trials": 1000,
//!   "test_per_class": 1000,
//!   "classifiers": ["NCC", "NCDA", "LDA", "QDA"],
//!   "surface_mode": "adjacent_pair_hull",
//!   "max_depth": 8,
//!   "outer_owner": "1",
//!   "base_seed": 2009,
//!   "sign_calibration": false,
//!   "calibration_folds": 5,
//!   "threads": null,
//!   "output": { "csv": "exp2.csv", "curves_svg": "exp2.svg" }
//! }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classifiers::ClassifierKind;
use crate::data::ClassId;
use crate::error::{Error, Result};
use crate::geometry::SurfaceMode;
use crate::simulation::{ExperimentConfig, ExperimentId};

pub const RUN_CONFIG_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    pub csv: Option<PathBuf>,
    pub curves_svg: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfigFile {
    pub schema_version: u32,
    pub experiment: ExperimentId,
    pub separation: f64,
    pub dims: Vec<usize>,
    pub train_sizes: Vec<usize>,
    pub trials: usize,
    pub test_per_class: usize,
    pub classifiers: Vec<ClassifierKind>,
    pub surface_mode: SurfaceMode,
    pub max_depth: usize,
    pub outer_owner: ClassId,
    pub base_seed: u64,
    pub sign_calibration: bool,
    pub calibration_folds: usize,
    /// Worker threads; `None` uses all cores.
    pub threads: Option<usize>,
    pub output: OutputPaths,
}

impl Default for RunConfigFile {
    fn default() -> Self {
        let e = ExperimentConfig::default();
        RunConfigFile {
            // absent key reads as 0 and is rejected
            schema_version: 0,
            experiment: e.experiment,
            separation: e.separation,
            dims: e.dims,
            train_sizes: e.train_sizes,
            trials: e.trials,
            test_per_class: e.test_per_class,
            classifiers: e.classifiers,
            surface_mode: e.surface_mode,
            max_depth: e.max_depth,
            outer_owner: e.outer_owner,
            base_seed: e.base_seed,
            sign_calibration: e.sign_calibration,
            calibration_folds: e.calibration_folds,
            threads: None,
            output: OutputPaths::default(),
        }
    }
}

impl RunConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfigFile = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if cfg.schema_version != RUN_CONFIG_SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version must be {RUN_CONFIG_SCHEMA_VERSION}, found {}",
                cfg.schema_version
            )));
        }
        if cfg.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        cfg.experiment_config().validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn experiment_config(&self) -> ExperimentConfig {
        ExperimentConfig {
            experiment: self.experiment,
            separation: self.separation,
            dims: self.dims.clone(),
            train_sizes: self.train_sizes.clone(),
            trials: self.trials,
            test_per_class: self.test_per_class,
            classifiers: self.classifiers.clone(),
            surface_mode: self.surface_mode,
            max_depth: self.max_depth,
            outer_owner: self.outer_owner,
            base_seed: self.base_seed,
            sign_calibration: self.sign_calibration,
            calibration_folds: self.calibration_folds,
        }
    }
}
