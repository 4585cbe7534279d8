//! Scalar formulas of the two-tangent configuration: the radii of the two
//! circles touching `ω` at the ends of a diameter, and the closure criteria.

use serde::{Deserialize, Serialize};

use super::{internal_similitude_center, Annulus, GeomError, Point, Result};

/// Power-of-point scalars of a diameter `AB` of `ω` seen from the internal
/// similitude center `S` of `k` and `ω`.
///
/// `s2 = SA·SP` (the power of `S`, as an unsigned length²),
/// `m2 = (SA² + SB²)/2`, `x2 = SA² − m2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Scalars {
    pub s2: f64,
    pub m2: f64,
    pub x2: f64,
}

impl Theorem1Scalars {
    pub fn new(s2: f64, m2: f64, x2: f64) -> Result<Self> {
        if !(s2 > 0.0 && m2 > 0.0 && m2 - x2 > 0.0 && x2.is_finite()) {
            return Err(GeomError::Domain(format!("invalid scalars s2={s2} m2={m2} x2={x2}")));
        }
        Ok(Self { s2, m2, x2 })
    }

    /// Scalars of the diameter whose endpoint `A` sits at polar angle `alpha`
    /// about `I`.
    pub fn from_diameter(a: &Annulus, alpha: f64) -> Result<Self> {
        let w = a.inner();
        let s = internal_similitude_center(a.outer(), w);
        let u = Point::polar(alpha);
        let pa = w.center + u * w.radius;
        let pb = w.center - u * w.radius;
        let s2 = w.radius * w.radius - s.dist(w.center).powi(2);
        let sa2 = s.dist(pa).powi(2);
        let sb2 = s.dist(pb).powi(2);
        let m2 = 0.5 * (sa2 + sb2);
        Self::new(s2, m2, sa2 - m2)
    }
}

/// The radii `(r1, r2)` of the inscribed circles touching `ω` at `A` and `B`.
pub fn theorem1_radii(sc: &Theorem1Scalars, big_r: f64, r: f64) -> Result<(f64, f64)> {
    let den1 = sc.s2 + sc.m2 + sc.x2;
    let den2 = sc.s2 + sc.m2 - sc.x2;
    if !(den1 > 0.0 && den2 > 0.0) {
        return Err(GeomError::Domain("nonpositive denominator".into()));
    }
    let base = sc.s2 * big_r - sc.m2 * r;
    Ok(((base - sc.x2 * r) / den1, (base + sc.x2 * r) / den2))
}

/// `(s²R − m²r)² − r²(s² + m²)²`: zero exactly when `r1·r2 = r²`, whatever `x2`.
pub fn closure_criterion_residual(sc: &Theorem1Scalars, big_r: f64, r: f64) -> Result<f64> {
    theorem1_radii(sc, big_r, r)?;
    let lhs = sc.s2 * big_r - sc.m2 * r;
    let rhs = r * (sc.s2 + sc.m2);
    Ok(lhs * lhs - rhs * rhs)
}

/// `d² − ((R − r)² − 4r²)`.
pub fn euler_like_residual(big_r: f64, r: f64, d: f64) -> f64 {
    d * d - ((big_r - r).powi(2) - 4.0 * r * r)
}

/// Radius of the largest circle inside the segment cut from the outer circle
/// by a chord at signed distance `h` from `O`, on the far side from `O`.
pub fn segment_inscribed_radius(big_r: f64, h: f64) -> Result<f64> {
    if !(h.abs() < big_r) {
        return Err(GeomError::Domain(format!("chord offset {h} outside the circle of radius {big_r}")));
    }
    Ok(0.5 * (big_r - h))
}
