//! Chains of inscribed circles and tangent chords in a circular annulus.
//!
//! The crate is organised bottom-up:
//!
//! - [`geom`]: points, lines, circles, the [`geom::Annulus`] container and the
//!   tangency constructions every chain step is built from.
//! - [`conic`]: point and tangent-line conics, focal shapes, dual-conic fitting
//!   of chord families, focus extraction and rotation of conics about a point.
//! - [`chain`]: words over `{c, s}` interpreted as chain scripts, chain runs and
//!   monodromy defects.
//! - [`search`]: defect scans over `(r, d)`, zero-locus tracing, certification,
//!   word enumeration and polynomial relation fitting.
//!
//! All residual tolerances are relative to the outer radius `R`; see [`tol`].

pub mod chain;
pub mod conic;
pub mod geom;
pub mod roots;
pub mod search;
pub mod tol;

pub use chain::{ChainElement, ChainError, ChainRun, Letter, Orientation, Word};
pub use conic::{Conic, ConicError, DualConic};
pub use geom::{Annulus, Chord, Circle, GeomError, Line, Point};
