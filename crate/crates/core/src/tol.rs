//! Tolerance policy.
//!
//! Geometric residuals are measured relative to the outer radius `R` of the
//! annulus in play. Angular quantities are absolute radians.

/// Tangency and incidence residuals, times `R`.
pub const TANGENCY: f64 = 1e-9;

/// Comparison of two independently constructed objects, times `R`.
pub const CONSTRUCT: f64 = 1e-7;

/// Closure of a chain run (angle and, for circles, radius / `R`).
pub const CLOSURE: f64 = 1e-8;

/// Bisection target for zero-locus points, on the defect.
pub const LOCUS: f64 = 1e-10;

/// Certification of a locus point on the monodromy defect.
pub const CERTIFY: f64 = 1e-8;

/// Number of initial brackets used by the 1D root scans over the ellipse of
/// centers.
pub const ROOT_BRACKETS: usize = 64;
