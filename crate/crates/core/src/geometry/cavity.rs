//! The nested cavity construction.
//!
//! `S1` wraps the outer class. Each later surface wraps the points of the
//! opposite class that fall inside the previous one, so ownership alternates
//! and every surface lies inside its predecessor.

use serde::{Deserialize, Serialize};

use crate::data::{ClassId, Dataset};
use crate::error::{Error, Result};
use crate::geometry::surface::{wrap, Surface, SurfaceMode};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CavityStack<T> {
    pub surfaces: Vec<Surface<T>>,
    pub max_depth: usize,
    pub outer_owner: ClassId,
}

impl<T: Scalar> CavityStack<T> {
    pub fn dim(&self) -> usize {
        self.surfaces[0].dim
    }

    pub fn depth(&self) -> usize {
        self.surfaces.len()
    }

    pub fn outer(&self) -> &Surface<T> {
        &self.surfaces[0]
    }

    /// Deepest `k` (1-based) with `x` inside `S_k`, or 0 when `x` is outside `S1`.
    pub fn deepest_containing(&self, x: &[T]) -> Result<usize> {
        self.check_dim(x)?;
        Ok(self.deepest_unchecked(x))
    }

    pub(crate) fn deepest_unchecked(&self, x: &[T]) -> usize {
        // surfaces are nested, so the first miss ends the scan
        self.surfaces
            .iter()
            .take_while(|s| s.contains_unchecked(x))
            .count()
    }

    /// Whether `x` lies in the outer owner's region
    /// `(S1 - S2) ∪ (S3 - S4) ∪ ...`, i.e. its deepest enclosing surface has
    /// odd depth.
    pub fn region_membership(&self, x: &[T]) -> Result<bool> {
        Ok(self.deepest_containing(x)? % 2 == 1)
    }

    pub(crate) fn check_dim(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }
}

pub fn build_cavities<T: Scalar>(
    d: &Dataset<T>,
    mode: SurfaceMode,
    outer_owner: ClassId,
    max_depth: usize,
) -> Result<CavityStack<T>> {
    if max_depth == 0 {
        return Err(Error::Config("max_depth must be at least 1".into()));
    }
    let outer_points = d.class_matrix(outer_owner);
    if outer_points.is_empty() {
        return Err(Error::Empty("outer class has no observations"));
    }
    let per_class = [
        d.class_matrix(ClassId::Omega1),
        d.class_matrix(ClassId::Omega2),
    ];
    let points_of = |c: ClassId| match c {
        ClassId::Omega1 => &per_class[0],
        ClassId::Omega2 => &per_class[1],
    };

    let mut surfaces = vec![wrap(&outer_points, mode, outer_owner, 1)?];
    while surfaces.len() < max_depth {
        let last = surfaces.last().unwrap();
        let owner = last.owner.other();
        let mut enclosed = Matrix::zeros(0, d.dim());
        for r in points_of(owner).iter_rows() {
            if last.contains_unchecked(r) {
                enclosed.push_row(r)?;
            }
        }
        if enclosed.is_empty() {
            break;
        }
        let depth = surfaces.len() + 1;
        surfaces.push(wrap(&enclosed, mode, owner, depth)?);
    }
    Ok(CavityStack {
        surfaces,
        max_depth,
        outer_owner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Observation;
    use crate::geometry::surface::Panel;
    use proptest::prelude::*;

    pub(crate) fn example() -> Dataset<f64> {
        let mut obs = Vec::new();
        for p in [[0.0, 0.0], [4.0, 0.0], [0.0, 4.0], [4.0, 4.0]] {
            obs.push(Observation::new(p.to_vec(), ClassId::Omega1).unwrap());
        }
        for p in [[1.0, 1.0], [3.0, 3.0], [9.0, 9.0]] {
            obs.push(Observation::new(p.to_vec(), ClassId::Omega2).unwrap());
        }
        Dataset::new(2, obs).unwrap()
    }

    fn intervals(s: &Surface<f64>) -> Vec<(f64, f64)> {
        s.panels
            .iter()
            .map(|p| match p {
                Panel::Interval { lo, hi, .. } => (*lo, *hi),
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn box_example_nests_twice() {
        let st = build_cavities(&example(), SurfaceMode::Box, ClassId::Omega1, 4).unwrap();
        assert_eq!(st.depth(), 2);
        assert_eq!(intervals(&st.surfaces[0]), vec![(0.0, 4.0), (0.0, 4.0)]);
        assert_eq!(intervals(&st.surfaces[1]), vec![(1.0, 3.0), (1.0, 3.0)]);
        assert_eq!(st.surfaces[1].owner, ClassId::Omega2);
        assert_eq!(st.surfaces[1].depth, 2);

        assert!(st.region_membership(&[0.5, 0.5]).unwrap());
        assert!(!st.region_membership(&[2.0, 2.0]).unwrap());
        assert!(!st.region_membership(&[9.0, 9.0]).unwrap());
        assert!(st.region_membership(&[1.0]).is_err());
    }

    #[test]
    fn depth_cap() {
        let st = build_cavities(&example(), SurfaceMode::Box, ClassId::Omega1, 1).unwrap();
        assert_eq!(st.depth(), 1);
        assert!(st.region_membership(&[2.0, 2.0]).unwrap());
    }

    #[test]
    fn opposite_class_outside_stops() {
        let obs = vec![
            Observation::new(vec![0.0, 0.0], ClassId::Omega1).unwrap(),
            Observation::new(vec![1.0, 1.0], ClassId::Omega1).unwrap(),
            Observation::new(vec![5.0, 5.0], ClassId::Omega2).unwrap(),
        ];
        let d = Dataset::new(2, obs).unwrap();
        let st = build_cavities(&d, SurfaceMode::AdjacentPairHull, ClassId::Omega1, 8).unwrap();
        assert_eq!(st.depth(), 1);
    }

    #[test]
    fn empty_outer_class() {
        let obs = vec![Observation::new(vec![0.0], ClassId::Omega2).unwrap()];
        let d = Dataset::new(1, obs).unwrap();
        assert!(matches!(
            build_cavities(&d, SurfaceMode::Box, ClassId::Omega1, 3),
            Err(Error::Empty(_))
        ));
        assert!(build_cavities(&d, SurfaceMode::Box, ClassId::Omega2, 0).is_err());
    }

    fn random_dataset() -> impl Strategy<Value = (Dataset<f64>, SurfaceMode, Vec<Vec<f64>>)> {
        (1usize..5, 1usize..12, 1usize..12).prop_flat_map(|(p, n1, n2)| {
            let pts = proptest::collection::vec(proptest::collection::vec(-3.0f64..3.0, p), n1 + n2);
            let queries = proptest::collection::vec(proptest::collection::vec(-4.0f64..4.0, p), 20);
            let mode = prop_oneof![
                Just(SurfaceMode::Box),
                Just(SurfaceMode::AdjacentPairHull),
                Just(SurfaceMode::AllPairHull)
            ];
            (pts, mode, queries).prop_map(move |(pts, mode, queries)| {
                let obs = pts
                    .into_iter()
                    .enumerate()
                    .map(|(i, f)| {
                        let c = if i < n1 { ClassId::Omega1 } else { ClassId::Omega2 };
                        Observation::new(f, c).unwrap()
                    })
                    .collect();
                (Dataset::new(p, obs).unwrap(), mode, queries)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn wrapping_complete_and_nested((d, mode, queries) in random_dataset()) {
            let st = build_cavities(&d, mode, ClassId::Omega1, 8).unwrap();
            // completeness: S1 holds every outer point
            for o in d.observations().iter().filter(|o| o.label() == ClassId::Omega1) {
                prop_assert!(st.outer().contains(o.features()).unwrap());
            }
            for (k, pair) in st.surfaces.windows(2).enumerate() {
                prop_assert_eq!(pair[1].owner, pair[0].owner.other());
                prop_assert_eq!(pair[1].depth, k + 2);
                for q in queries.iter().chain(d.observations().iter().map(|o| o.features().to_vec()).collect::<Vec<_>>().iter()) {
                    if pair[1].contains(q).unwrap() {
                        prop_assert!(pair[0].contains(q).unwrap());
                    }
                }
            }
            prop_assert!(st.depth() <= 8);
        }

        #[test]
        fn box_panels_never_shrink((d, _mode, queries) in random_dataset()) {
            let s1 = build_cavities(&d, SurfaceMode::Box, ClassId::Omega1, 1).unwrap();
            let mut obs = d.observations().to_vec();
            obs.push(Observation::new(queries[0].clone(), ClassId::Omega1).unwrap());
            let bigger = Dataset::new(d.dim(), obs).unwrap();
            let s2 = build_cavities(&bigger, SurfaceMode::Box, ClassId::Omega1, 1).unwrap();
            for (a, b) in s1.outer().panels.iter().zip(&s2.outer().panels) {
                match (a, b) {
                    (Panel::Interval { lo: l1, hi: h1, .. }, Panel::Interval { lo: l2, hi: h2, .. }) => {
                        prop_assert!(l2 <= l1 && h2 >= h1);
                    }
                    _ => prop_assert!(false),
                }
            }
        }
    }
}
