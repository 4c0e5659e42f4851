use serde::{Deserialize, Serialize};

use crate::classifiers::Classifier;
use crate::data::{ClassId, Dataset};
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix, RegularizationLadder};
use crate::scalar::Scalar;

/// Per-class Gaussian parameters after regularization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QdaClass<T> {
    pub mean: Vec<T>,
    pub precision: Matrix<T>,
    pub log_det: T,
    pub log_prior: T,
}

impl<T: Scalar> QdaClass<T> {
    /// `-1/2 log|S| - 1/2 (x - m)' S^-1 (x - m) + log prior`
    pub fn discriminant(&self, x: &[T]) -> T {
        let half = T::of(0.5);
        let centred: Vec<T> = x.iter().zip(&self.mean).map(|(&a, &b)| a - b).collect();
        let quad = dot(&centred, &self.precision.mat_vec(&centred));
        -half * self.log_det - half * quad + self.log_prior
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QdaModel<T> {
    pub class1: QdaClass<T>,
    pub class2: QdaClass<T>,
}

pub fn fit_qda<T: Scalar>(d: &Dataset<T>, ladder: &RegularizationLadder) -> Result<QdaModel<T>> {
    let n = T::from_usize(d.len()).unwrap();
    let fit_class = |c: ClassId| -> Result<QdaClass<T>> {
        let nk = d.count(c);
        if nk < 2 {
            return Err(Error::InsufficientData(format!(
                "QDA needs at least 2 observations of class {c}, found {nk}"
            )));
        }
        let m = d.class_matrix(c);
        let mean = m.column_means();
        let mut cov = m.scatter(&mean);
        cov.scale(T::one() / T::from_usize(nk - 1).unwrap());
        let reg = ladder.apply(&cov)?;
        Ok(QdaClass {
            mean,
            precision: reg.factor.inverse(),
            log_det: reg.factor.log_det(),
            log_prior: (T::from_usize(nk).unwrap() / n).ln(),
        })
    };
    Ok(QdaModel {
        class1: fit_class(ClassId::Omega1)?,
        class2: fit_class(ClassId::Omega2)?,
    })
}

impl<T: Scalar> Classifier<T> for QdaModel<T> {
    fn name(&self) -> &'static str {
        "QDA"
    }

    fn dim(&self) -> usize {
        self.class1.mean.len()
    }

    fn predict(&self, x: &[T]) -> ClassId {
        if self.class1.discriminant(x) >= self.class2.discriminant(x) {
            ClassId::Omega1
        } else {
            ClassId::Omega2
        }
    }
}
