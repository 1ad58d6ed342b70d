//! Newton polygons, amoeba sampling, and the piecewise-linear spine.

pub mod polygon;
pub mod sample;
pub mod spine;
mod svg;

use thiserror::Error;

pub use polygon::{amoeba_direction, convex_hull, newton_polygon, NewtonPolygon, PolygonEdge};
pub use sample::{amoeba_sample, detect_hole, AmoebaPointCloud, GridSpec, HoleReport};
pub use spine::{spine_approx, PLCurve, SpineRay, SpineSegment};
pub use svg::render_svg;

#[derive(Debug, Clone, Error)]
pub enum AmoebaError {
    #[error("the zero polynomial has no Newton polygon or amoeba")]
    ZeroPolynomial,
    #[error("amoeba requires a genuinely bivariate polynomial")]
    NotBivariate,
    #[error("invalid sampling grid: {0}")]
    BadGrid(String),
    #[error(transparent)]
    Eigen(#[from] crate::numerics::EigenError),
}
