use serde::{Deserialize, Serialize};

use crate::classifiers::Classifier;
use crate::data::{ClassId, Dataset};
use crate::error::Result;
use crate::geometry::{build_cavities, CavityStack, SurfaceMode};
use crate::scalar::Scalar;

/// Nested cavity classifier: the outer owner's region is the union of the
/// odd-depth shells of the stack; everything else, including all of space
/// outside `S1`, goes to the other class. `flipped` inverts every decision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NccModel<T> {
    pub stack: CavityStack<T>,
    #[serde(default)]
    pub flipped: bool,
}

impl<T: Scalar> NccModel<T> {
    pub fn with_flipped(mut self, flipped: bool) -> Self {
        self.flipped = flipped;
        self
    }

    /// Membership in the outermost surface `S1`.
    #[inline]
    pub fn in_outer(&self, x: &[T]) -> bool {
        self.stack.outer().contains_unchecked(x)
    }

    #[inline]
    fn decide(&self, deepest: usize) -> ClassId {
        let owner = self.stack.outer_owner;
        if (deepest % 2 == 1) ^ self.flipped {
            owner
        } else {
            owner.other()
        }
    }
}

pub fn fit_ncc<T: Scalar>(
    d: &Dataset<T>,
    mode: SurfaceMode,
    outer_owner: ClassId,
    max_depth: usize,
) -> Result<NccModel<T>> {
    Ok(NccModel {
        stack: build_cavities(d, mode, outer_owner, max_depth)?,
        flipped: false,
    })
}

impl<T: Scalar> Classifier<T> for NccModel<T> {
    fn name(&self) -> &'static str {
        "NCC"
    }

    fn dim(&self) -> usize {
        self.stack.dim()
    }

    fn predict(&self, x: &[T]) -> ClassId {
        self.decide(self.stack.deepest_unchecked(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::fixtures::nested_example;

    #[test]
    fn nested_example_predictions() {
        let d = nested_example();
        let m = fit_ncc(&d, SurfaceMode::Box, ClassId::Omega1, 8).unwrap();
        assert_eq!(m.stack.depth(), 2);
        assert!(!m.flipped);
        assert_eq!(m.predict(&[0.5, 0.5]), ClassId::Omega1);
        assert_eq!(m.predict(&[2.0, 2.0]), ClassId::Omega2);
        assert_eq!(m.predict(&[9.0, 9.0]), ClassId::Omega2);
    }

    #[test]
    fn depth_one_claims_all_of_s1() {
        let m = fit_ncc(&nested_example(), SurfaceMode::Box, ClassId::Omega1, 1).unwrap();
        assert_eq!(m.predict(&[2.0, 2.0]), ClassId::Omega1);
    }

    #[test]
    fn flip_complements() {
        let m = fit_ncc(&nested_example(), SurfaceMode::AdjacentPairHull, ClassId::Omega1, 8).unwrap();
        let f = m.clone().with_flipped(true);
        for x in [[0.5, 0.5], [2.0, 2.0], [9.0, 9.0], [-3.0, 1.0], [2.0, 2.5]] {
            assert_eq!(f.predict(&x), m.predict(&x).other());
        }
    }

    #[test]
    fn dimension_checked() {
        let m = fit_ncc(&nested_example(), SurfaceMode::Box, ClassId::Omega1, 8).unwrap();
        assert!(m.try_predict(&[1.0, 2.0, 3.0]).is_err());
    }
}
