//! Parallel-coordinates mapping, planar convex hulls and the nested cavity
//! construction.

mod cavity;
mod hull;
mod polyline;
mod surface;

pub use cavity::{build_cavities, CavityStack};
pub use hull::{convex_hull_2d, Hull2D, Point2};
pub use polyline::{to_polyline, Polyline};
pub use surface::{wrap, Panel, Surface, SurfaceMode};
