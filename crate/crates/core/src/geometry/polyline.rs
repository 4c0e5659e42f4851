use crate::data::check_finite;
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::scalar::Scalar;

/// A p-dimensional point drawn in parallel coordinates: vertex `i` sits at
/// `(i, x_i)` on the i-th (zero-based) axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Scalar> Polyline<T> {
    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    /// Recovers the point this polyline represents.
    pub fn values(&self) -> Vec<T> {
        self.vertices.iter().map(|v| v.y).collect()
    }
}

pub fn to_polyline<T: Scalar>(point: &[T]) -> Result<Polyline<T>> {
    if point.is_empty() {
        return Err(Error::Empty("point with no coordinates"));
    }
    check_finite(point)?;
    let vertices = point
        .iter()
        .enumerate()
        .map(|(i, &y)| Point2::new(T::from_usize(i).unwrap(), y))
        .collect();
    Ok(Polyline { vertices })
}
