//! Andrew's monotone chain hull and closed point-in-hull tests.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    fn sub(self, o: Self) -> Self {
        Point2::new(self.x - o.x, self.y - o.y)
    }

    fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    fn lex_cmp(&self, o: &Self) -> Ordering {
        self.x
            .partial_cmp(&o.x)
            .unwrap()
            .then(self.y.partial_cmp(&o.y).unwrap())
    }
}

#[inline]
fn cross<T: Scalar>(o: Point2<T>, a: Point2<T>, b: Point2<T>) -> T {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Convex polygon with counter-clockwise vertices starting at the
/// lexicographically smallest one. One vertex is a point, two a segment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hull2D<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Scalar> Hull2D<T> {
    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    /// Closed membership: boundary points are inside.
    pub fn contains(&self, q: Point2<T>) -> bool {
        let eps = T::containment_eps();
        match self.vertices.as_slice() {
            [] => false,
            [v] => {
                let d = q.sub(*v);
                d.x.abs().max(d.y.abs()) <= eps * T::one().max(v.x.abs().max(v.y.abs()))
            }
            [a, b] => {
                let e = b.sub(*a);
                let len = e.norm();
                let rel = q.sub(*a);
                let tol = eps * len * (rel.norm() + len);
                if cross(*a, *b, q).abs() > tol {
                    return false;
                }
                let t = e.x * rel.x + e.y * rel.y;
                t >= -tol && t <= len * len + tol
            }
            vs => {
                let n = vs.len();
                for i in 0..n {
                    let a = vs[i];
                    let b = vs[(i + 1) % n];
                    let len = b.sub(a).norm();
                    let tol = eps * len * (q.sub(a).norm() + len);
                    if cross(a, b, q) < -tol {
                        return false;
                    }
                }
                true
            }
        }
    }
}

/// Smallest convex polygon containing `points`. Duplicates and collinear
/// boundary points are dropped.
pub fn convex_hull_2d<T: Scalar>(points: &[Point2<T>]) -> Result<Hull2D<T>> {
    if points.is_empty() {
        return Err(Error::Empty("convex hull of no points"));
    }
    let mut pts = points.to_vec();
    pts.sort_by(Point2::lex_cmp);
    pts.dedup();
    if pts.len() < 3 {
        return Ok(Hull2D { vertices: pts });
    }

    let mut hull: Vec<Point2<T>> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero()
        {
            hull.pop();
        }
        hull.push(p);
    }
    // last point repeats the first
    hull.pop();
    Ok(Hull2D { vertices: hull })
}
