//! Point conics, tangent-line (dual) conics and focal constructions.

mod fit;
mod foci;
mod focal;
mod forms;
mod rotation;

pub use fit::{fit_dual_conic, DualFit, Envelope};
pub use foci::{conic_foci, focal_elements, focus_directrix_residual, sample_points, FocalElement};
pub use focal::{
    centers_ellipse, chord_through_centers, confocal_intersections, conic_from_focal,
    tangent_parabola, FocalEllipse, FocalParabola, FocalShape, PolarConicShape,
};
pub use forms::{Conic, ConicKind, DualConic};
pub use rotation::{pass_through_residual, rotate_conic_about, theorem6_rotation};

use thiserror::Error;

use crate::geom::GeomError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConicError {
    #[error("need at least {needed} lines, got {got}")]
    Arity { needed: usize, got: usize },
    #[error("degenerate conic: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type Result<T> = std::result::Result<T, ConicError>;
