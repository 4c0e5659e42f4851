use serde::{Deserialize, Serialize};

use crate::data::ClassId;
use crate::error::{Error, Result};
use crate::geometry::hull::{convex_hull_2d, Hull2D, Point2};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// How a point set is wrapped into a closed surface.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceMode {
    /// Product of per-axis `[min, max]` intervals.
    Box,
    /// One planar hull per consecutive axis pair `(x_i, x_{i+1})`.
    #[default]
    AdjacentPairHull,
    /// One planar hull per unordered axis pair.
    AllPairHull,
}

impl SurfaceMode {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceMode::Box => "box",
            SurfaceMode::AdjacentPairHull => "adjacent_pair_hull",
            SurfaceMode::AllPairHull => "all_pair_hull",
        }
    }

    fn axis_pairs(self, p: usize) -> Vec<[usize; 2]> {
        match self {
            SurfaceMode::Box => Vec::new(),
            SurfaceMode::AdjacentPairHull => (1..p).map(|i| [i - 1, i]).collect(),
            SurfaceMode::AllPairHull => (0..p)
                .flat_map(|i| (i + 1..p).map(move |j| [i, j]))
                .collect(),
        }
    }
}

impl std::str::FromStr for SurfaceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" => Ok(SurfaceMode::Box),
            "adjacent_pair_hull" => Ok(SurfaceMode::AdjacentPairHull),
            "all_pair_hull" => Ok(SurfaceMode::AllPairHull),
            _ => Err(Error::Config(format!("unknown surface mode {s:?}"))),
        }
    }
}

/// One constraint of a surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Panel<T> {
    Interval { axis: usize, lo: T, hi: T },
    Hull { axes: [usize; 2], hull: Hull2D<T> },
}

impl<T: Scalar> Panel<T> {
    #[inline]
    pub fn contains(&self, x: &[T]) -> bool {
        match self {
            Panel::Interval { axis, lo, hi } => x[*axis] >= *lo && x[*axis] <= *hi,
            Panel::Hull { axes: [i, j], hull } => hull.contains(Point2::new(x[*i], x[*j])),
        }
    }
}

/// A closed region of feature space owned by one class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Surface<T> {
    pub mode: SurfaceMode,
    pub dim: usize,
    pub panels: Vec<Panel<T>>,
    pub owner: ClassId,
    pub depth: usize,
}

impl<T: Scalar> Surface<T> {
    pub fn contains(&self, x: &[T]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.contains_unchecked(x))
    }

    #[inline]
    pub(crate) fn contains_unchecked(&self, x: &[T]) -> bool {
        self.panels.iter().all(|panel| panel.contains(x))
    }
}

/// Wraps the rows of `points` into a closed surface containing all of them.
///
/// Hull modes on one-dimensional data have no axis pairs and fall back to the
/// single interval panel.
pub fn wrap<T: Scalar>(
    points: &Matrix<T>,
    mode: SurfaceMode,
    owner: ClassId,
    depth: usize,
) -> Result<Surface<T>> {
    if points.is_empty() {
        return Err(Error::Empty("no points to wrap"));
    }
    let p = points.cols();
    let pairs = mode.axis_pairs(p);
    let panels = if pairs.is_empty() {
        (0..p)
            .map(|axis| {
                let (lo, hi) = points.iter_rows().fold(
                    (T::infinity(), T::neg_infinity()),
                    |(lo, hi), r| (lo.min(r[axis]), hi.max(r[axis])),
                );
                Panel::Interval { axis, lo, hi }
            })
            .collect()
    } else {
        pairs
            .into_iter()
            .map(|[i, j]| {
                let projected: Vec<_> = points.iter_rows().map(|r| Point2::new(r[i], r[j])).collect();
                convex_hull_2d(&projected).map(|hull| Panel::Hull { axes: [i, j], hull })
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(Surface {
        mode,
        dim: p,
        panels,
        owner,
        depth,
    })
}
