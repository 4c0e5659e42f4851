//! The four decision rules behind one fit/predict contract.

mod calibrate;
mod lda;
mod ncc;
mod ncda;
mod persist;
mod qda;

use serde::{Deserialize, Serialize};

pub use calibrate::{calibrate_sign, cv_error, stratified_folds};
pub use lda::{fit_lda, LdaModel};
pub use ncc::{fit_ncc, NccModel};
pub use ncda::{fit_ncda, NcdaModel};
pub use persist::{load_model, read_model, save_model, write_model, MODEL_FILE_VERSION};
pub use qda::{fit_qda, QdaClass, QdaModel};

use crate::data::{ClassId, Dataset};
use crate::error::{Error, Result};
use crate::geometry::SurfaceMode;
use crate::linalg::RegularizationLadder;
use crate::scalar::Scalar;

/// A fitted binary decision rule.
pub trait Classifier<T: Scalar> {
    fn name(&self) -> &'static str;

    fn dim(&self) -> usize;

    /// Decision for `x`. `x.len()` must equal [`Classifier::dim`].
    fn predict(&self, x: &[T]) -> ClassId;

    fn try_predict(&self, x: &[T]) -> Result<ClassId> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(self.predict(x))
    }

    /// Fraction of misclassified observations; 0 for an empty dataset.
    fn error_rate(&self, d: &Dataset<T>) -> f64 {
        if d.is_empty() {
            return 0.0;
        }
        let wrong = d
            .observations()
            .iter()
            .filter(|o| self.predict(o.features()) != o.label())
            .count();
        wrong as f64 / d.len() as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ClassifierKind {
    Ncc,
    Ncda,
    Lda,
    Qda,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 4] = [
        ClassifierKind::Ncc,
        ClassifierKind::Ncda,
        ClassifierKind::Lda,
        ClassifierKind::Qda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassifierKind::Ncc => "NCC",
            ClassifierKind::Ncda => "NCDA",
            ClassifierKind::Lda => "LDA",
            ClassifierKind::Qda => "QDA",
        }
    }
}

impl std::str::FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "NCC" => Ok(ClassifierKind::Ncc),
            "NCDA" => Ok(ClassifierKind::Ncda),
            "LDA" => Ok(ClassifierKind::Lda),
            "QDA" => Ok(ClassifierKind::Qda),
            _ => Err(Error::Config(format!("unknown classifier {s:?}"))),
        }
    }
}

/// Cavity construction settings shared by NCC and NCDA.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NccConfig {
    pub mode: SurfaceMode,
    pub outer_owner: ClassId,
    pub max_depth: usize,
}

impl Default for NccConfig {
    fn default() -> Self {
        NccConfig {
            mode: SurfaceMode::AdjacentPairHull,
            outer_owner: ClassId::Omega1,
            max_depth: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FitConfig {
    pub ncc: NccConfig,
    pub ladder: RegularizationLadder,
}

/// Any fitted model; this is also the persisted form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[serde(bound(deserialize = "T: Scalar"))]
pub enum Model<T> {
    Ncc(NccModel<T>),
    Lda(LdaModel<T>),
    Qda(QdaModel<T>),
    Ncda(NcdaModel<T>),
}

impl<T: Scalar> Model<T> {
    pub fn kind(&self) -> ClassifierKind {
        match self {
            Model::Ncc(_) => ClassifierKind::Ncc,
            Model::Lda(_) => ClassifierKind::Lda,
            Model::Qda(_) => ClassifierKind::Qda,
            Model::Ncda(_) => ClassifierKind::Ncda,
        }
    }

    /// The cavity stack of geometric models.
    pub fn stack(&self) -> Option<&crate::geometry::CavityStack<T>> {
        match self {
            Model::Ncc(m) => Some(&m.stack),
            Model::Ncda(m) => Some(&m.ncc.stack),
            _ => None,
        }
    }

    fn inner(&self) -> &dyn Classifier<T> {
        match self {
            Model::Ncc(m) => m,
            Model::Lda(m) => m,
            Model::Qda(m) => m,
            Model::Ncda(m) => m,
        }
    }
}

impl<T: Scalar> Classifier<T> for Model<T> {
    fn name(&self) -> &'static str {
        self.inner().name()
    }

    fn dim(&self) -> usize {
        self.inner().dim()
    }

    fn predict(&self, x: &[T]) -> ClassId {
        self.inner().predict(x)
    }
}

pub fn fit<T: Scalar>(kind: ClassifierKind, d: &Dataset<T>, cfg: &FitConfig) -> Result<Model<T>> {
    let NccConfig {
        mode,
        outer_owner,
        max_depth,
    } = cfg.ncc;
    Ok(match kind {
        ClassifierKind::Ncc => Model::Ncc(fit_ncc(d, mode, outer_owner, max_depth)?),
        ClassifierKind::Lda => Model::Lda(fit_lda(d, &cfg.ladder)?),
        ClassifierKind::Qda => Model::Qda(fit_qda(d, &cfg.ladder)?),
        ClassifierKind::Ncda => Model::Ncda(fit_ncda(d, mode, outer_owner, max_depth, &cfg.ladder)?),
    })
}
