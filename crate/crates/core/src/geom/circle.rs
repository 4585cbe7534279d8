use serde::{Deserialize, Serialize};

use super::{GeomError, Point, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(GeomError::Domain(format!("circle radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn point_at(&self, theta: f64) -> Point {
        self.center + Point::polar(theta) * self.radius
    }

    /// Point of external contact with another circle (assumes tangency).
    pub fn external_contact(&self, other: &Circle) -> Point {
        self.center + (other.center - self.center).unit() * self.radius
    }

    /// Signed gap to external tangency: zero when the circles touch externally.
    pub fn external_gap(&self, other: &Circle) -> f64 {
        self.center.dist(other.center) - self.radius - other.radius
    }
}
