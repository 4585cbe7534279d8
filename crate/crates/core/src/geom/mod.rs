//! Plane primitives and the tangency constructions on an annulus.

mod annulus;
mod circle;
mod inscribed;
mod line;
mod point;
mod tangents;
mod theorem1;

pub use annulus::Annulus;
pub use circle::Circle;
pub use inscribed::{inscribed_circles_tangent_to_line, steiner_neighbors};
pub use line::{Chord, Line};
pub use point::{wrap_pi, wrap_tau, Point};
pub use tangents::{
    common_external_tangents, external_similitude_center, internal_similitude_center,
    tangent_line_at, tangent_lines_from_point, theorem2_meeting_point, Similitude,
};
pub use theorem1::{
    closure_criterion_residual, euler_like_residual, segment_inscribed_radius, theorem1_radii,
    Theorem1Scalars,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("one circle contains the other")]
    Containment,
}

pub type Result<T> = std::result::Result<T, GeomError>;
