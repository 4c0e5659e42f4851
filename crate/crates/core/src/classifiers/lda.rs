use serde::{Deserialize, Serialize};

use crate::classifiers::Classifier;
use crate::data::{ClassId, Dataset};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, RegularizationLadder};
use crate::scalar::Scalar;

/// Linear discriminant with a pooled, diagonally loaded covariance.
///
/// Decides `Omega1` iff
/// `(x - (m1 + m2)/2)' P (m1 - m2) + log(n1/n2) >= 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LdaModel<T> {
    pub mean1: Vec<T>,
    pub mean2: Vec<T>,
    pub pooled_precision: Matrix<T>,
    pub log_prior_ratio: T,
    /// `P (m1 - m2)`.
    pub direction: Vec<T>,
    pub midpoint: Vec<T>,
}

impl<T: Scalar> LdaModel<T> {
    pub fn from_parts(mean1: Vec<T>, mean2: Vec<T>, pooled_precision: Matrix<T>, log_prior_ratio: T) -> Self {
        let two = T::one() + T::one();
        let diff: Vec<T> = mean1.iter().zip(&mean2).map(|(&a, &b)| a - b).collect();
        let midpoint = mean1.iter().zip(&mean2).map(|(&a, &b)| (a + b) / two).collect();
        let direction = pooled_precision.mat_vec(&diff);
        LdaModel {
            mean1,
            mean2,
            pooled_precision,
            log_prior_ratio,
            direction,
            midpoint,
        }
    }

    /// Discriminant score; non-negative means `Omega1`.
    pub fn score(&self, x: &[T]) -> T {
        let mut s = self.log_prior_ratio;
        for ((&xi, &mi), &wi) in x.iter().zip(&self.midpoint).zip(&self.direction) {
            s += (xi - mi) * wi;
        }
        s
    }
}

pub fn fit_lda<T: Scalar>(d: &Dataset<T>, ladder: &RegularizationLadder) -> Result<LdaModel<T>> {
    let (n1, n2) = (d.count(ClassId::Omega1), d.count(ClassId::Omega2));
    if n1 == 0 || n2 == 0 {
        return Err(Error::InsufficientData("LDA needs both classes".into()));
    }
    if n1 + n2 < 3 {
        return Err(Error::InsufficientData("LDA needs at least 3 observations".into()));
    }
    let (c1, c2) = d.split_by_class();
    let mean1 = c1.column_means();
    let mean2 = c2.column_means();
    let s1 = c1.scatter(&mean1);
    let s2 = c2.scatter(&mean2);
    let mut pooled = Matrix::from_vec(
        d.dim(),
        d.dim(),
        s1.as_slice().iter().zip(s2.as_slice()).map(|(&a, &b)| a + b).collect(),
    )?;
    pooled.scale(T::one() / T::from_usize(n1 + n2 - 2).unwrap());
    let reg = ladder.apply(&pooled)?;
    let precision = reg.factor.inverse();
    let log_prior_ratio = (T::from_usize(n1).unwrap() / T::from_usize(n2).unwrap()).ln();
    Ok(LdaModel::from_parts(mean1, mean2, precision, log_prior_ratio))
}

impl<T: Scalar> Classifier<T> for LdaModel<T> {
    fn name(&self) -> &'static str {
        "LDA"
    }

    fn dim(&self) -> usize {
        self.mean1.len()
    }

    fn predict(&self, x: &[T]) -> ClassId {
        if self.score(x) >= T::zero() {
            ClassId::Omega1
        } else {
            ClassId::Omega2
        }
    }
}

#[cfg(test)]
fn affine_score<T: Scalar>(m: &LdaModel<T>, x: &[T]) -> T {
    let diff: Vec<T> = m.mean1.iter().zip(&m.mean2).map(|(&a, &b)| a - b).collect();
    let w = m.pooled_precision.mat_vec(&diff);
    let centred: Vec<T> = x.iter().zip(&m.midpoint).map(|(&a, &b)| a - b).collect();
    crate::linalg::dot(&centred, &w) + m.log_prior_ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::fixtures::from_rows;
    use crate::data::Observation;
    use proptest::prelude::*;

    const O1: ClassId = ClassId::Omega1;
    const O2: ClassId = ClassId::Omega2;

    fn squares() -> Dataset<f64> {
        from_rows(&[
            (&[0.0, 0.0], O1),
            (&[0.0, 1.0], O1),
            (&[1.0, 0.0], O1),
            (&[1.0, 1.0], O1),
            (&[2.0, 2.0], O2),
            (&[2.0, 3.0], O2),
            (&[3.0, 2.0], O2),
            (&[3.0, 3.0], O2),
        ])
    }

    #[test]
    fn nearest_mean_under_spherical_pooled() {
        let m = fit_lda(&squares(), &RegularizationLadder::default()).unwrap();
        assert_eq!(m.predict(&[0.0, 0.0]), O1);
        assert_eq!(m.predict(&[2.5, 2.5]), O2);
        assert_eq!(m.score(&[1.5, 1.5]), 0.0);
        assert_eq!(m.predict(&[1.5, 1.5]), O1);
        assert!(m.pooled_precision.asymmetry() <= 1e-10);
    }

    #[test]
    fn one_dimensional_zero_variance() {
        // pooled variance 0 -> loading 1e-6 -> precision 1e6, boundary at 1
        let d = from_rows(&[(&[0.0], O1), (&[0.0], O1), (&[2.0], O2), (&[2.0], O2)]);
        let m = fit_lda(&d, &RegularizationLadder::default()).unwrap();
        let expected_precision = 1.0 / 1e-6;
        assert!((m.pooled_precision[(0, 0)] - expected_precision).abs() / expected_precision < 1e-12);
        let closed_form = |x: f64| (x - 1.0) * expected_precision * (0.0 - 2.0);
        for x in [0.9, 1.1, -5.0, 7.0] {
            assert!((m.score(&[x]) - closed_form(x)).abs() <= 1e-6 * closed_form(x).abs());
        }
        assert_eq!(m.predict(&[0.9]), O1);
        assert_eq!(m.predict(&[1.1]), O2);
    }


    #[test]
    fn prior_ratio_from_counts() {
        let d = from_rows(&[(&[0.0], O1), (&[0.5], O1), (&[1.0], O1), (&[3.0], O2)]);
        let m = fit_lda(&d, &RegularizationLadder::default()).unwrap();
        assert!((m.log_prior_ratio - 3.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        let one_class = from_rows(&[(&[0.0], O1), (&[1.0], O1), (&[2.0], O1)]);
        assert!(matches!(
            fit_lda(&one_class, &RegularizationLadder::default()),
            Err(Error::InsufficientData(_))
        ));
        let two = from_rows(&[(&[0.0], O1), (&[1.0], O2)]);
        assert!(fit_lda(&two, &RegularizationLadder::default()).is_err());
    }

    #[test]
    fn f32_fit() {
        let obs: Vec<Observation<f32>> = squares()
            .observations()
            .iter()
            .map(|o| Observation::new(o.features().iter().map(|&v| v as f32).collect(), o.label()).unwrap())
            .collect();
        let d = Dataset::new(2, obs).unwrap();
        let m = fit_lda(&d, &RegularizationLadder::default()).unwrap();
        assert_eq!(m.predict(&[0.2, 0.1]), O1);
        assert_eq!(m.predict(&[2.9, 2.1]), O2);
    }

    proptest! {
        #[test]
        fn score_is_affine(pts in proptest::collection::vec(proptest::collection::vec(-5.0f64..5.0, 3), 8),
                           x in proptest::collection::vec(-5.0f64..5.0, 3),
                           t in -3.0f64..3.0) {
            let rows: Vec<(&[f64], ClassId)> = pts.iter().enumerate()
                .map(|(i, p)| (p.as_slice(), if i % 2 == 0 { O1 } else { O2 })).collect();
            let m = fit_lda(&from_rows(&rows), &RegularizationLadder::default()).unwrap();
            prop_assert!((m.score(&x) - affine_score(&m, &x)).abs() <= 1e-9 * (1.0 + m.score(&x).abs()));
            // moving along any direction orthogonal to P(m1 - m2) keeps the score
            let w = &m.direction;
            let v = [w[1], -w[0], 0.0];
            let moved: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a + t * b).collect();
            let scale = 1.0 + w.iter().map(|a| a.abs()).sum::<f64>() * 10.0;
            prop_assert!((m.score(&moved) - m.score(&x)).abs() <= 1e-9 * scale * scale);
        }
    }
}
