use serde::{Deserialize, Serialize};

use crate::classifiers::{fit_lda, fit_ncc, Classifier, LdaModel, NccModel};
use crate::data::{ClassId, Dataset};
use crate::error::Result;
use crate::geometry::SurfaceMode;
use crate::linalg::RegularizationLadder;
use crate::scalar::Scalar;

/// NCC inside the outer surface, LDA outside it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NcdaModel<T> {
    pub ncc: NccModel<T>,
    pub lda: LdaModel<T>,
}

pub fn fit_ncda<T: Scalar>(
    d: &Dataset<T>,
    mode: SurfaceMode,
    outer_owner: ClassId,
    max_depth: usize,
    ladder: &RegularizationLadder,
) -> Result<NcdaModel<T>> {
    Ok(NcdaModel {
        ncc: fit_ncc(d, mode, outer_owner, max_depth)?,
        lda: fit_lda(d, ladder)?,
    })
}

impl<T: Scalar> Classifier<T> for NcdaModel<T> {
    fn name(&self) -> &'static str {
        "NCDA"
    }

    fn dim(&self) -> usize {
        self.ncc.dim()
    }

    fn predict(&self, x: &[T]) -> ClassId {
        if self.ncc.in_outer(x) {
            self.ncc.predict(x)
        } else {
            self.lda.predict(x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::fixtures::nested_example;

    fn model() -> NcdaModel<f64> {
        fit_ncda(
            &nested_example(),
            SurfaceMode::Box,
            ClassId::Omega1,
            8,
            &RegularizationLadder::default(),
        )
        .unwrap()
    }

    #[test]
    fn inside_s1_follows_ncc() {
        let m = model();
        for x in [[0.5, 0.5], [2.0, 2.0], [4.0, 0.0], [1.5, 3.9]] {
            assert!(m.ncc.in_outer(&x));
            assert_eq!(m.predict(&x), m.ncc.predict(&x));
        }
    }

    #[test]
    fn outside_s1_class1_side_uses_lda() {
        let m = model();
        // far along -(1,1): LDA direction points from ω2 toward ω1
        let x = [-20.0, -20.0];
        assert!(!m.ncc.in_outer(&x));
        assert!(m.lda.score(&x) > 0.0);
        assert_eq!(m.ncc.predict(&x), ClassId::Omega2);
        assert_eq!(m.predict(&x), ClassId::Omega1);
    }

    #[test]
    fn outside_s1_class2_side_concordant() {
        let m = model();
        let x = [30.0, 30.0];
        assert!(m.lda.score(&x) < 0.0);
        assert_eq!(m.predict(&x), ClassId::Omega2);
        assert_eq!(m.ncc.predict(&x), ClassId::Omega2);
    }
}
