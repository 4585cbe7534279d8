use serde::{Deserialize, Serialize};

use super::{Circle, GeomError, Point, Result};

/// Outer circle `k` (center `O`, radius `R`) and inner circle `ω` (center `I`,
/// radius `r`) with `|OI| + r < R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    outer: Circle,
    inner: Circle,
}

impl Annulus {
    pub fn new(outer: Circle, inner: Circle) -> Result<Self> {
        let d = outer.center.dist(inner.center);
        if !(d + inner.radius < outer.radius) {
            return Err(GeomError::Domain(format!(
                "inner circle must lie strictly inside the outer one (d + r = {} >= R = {})",
                d + inner.radius,
                outer.radius
            )));
        }
        Ok(Self { outer, inner })
    }

    /// Standard frame: `O` at the origin, `I = (d, 0)`.
    pub fn from_radii(big_r: f64, r: f64, d: f64) -> Result<Self> {
        if !(d >= 0.0) || !d.is_finite() {
            return Err(GeomError::Domain(format!("center distance must be nonnegative, got {d}")));
        }
        Self::new(Circle::new(Point::ORIGIN, big_r)?, Circle::new(Point::new(d, 0.0), r)?)
    }

    pub fn outer(&self) -> &Circle {
        &self.outer
    }

    pub fn inner(&self) -> &Circle {
        &self.inner
    }

    /// `R`.
    pub fn outer_radius(&self) -> f64 {
        self.outer.radius
    }

    /// `r`.
    pub fn inner_radius(&self) -> f64 {
        self.inner.radius
    }

    /// `d = |OI|`.
    pub fn center_distance(&self) -> f64 {
        self.outer.center.dist(self.inner.center)
    }

    pub fn is_concentric(&self) -> bool {
        self.center_distance() <= 1e-14 * self.outer.radius
    }

    /// Residuals `(|X−O| − (R−ρ), |X−I| − (r+ρ))` of a candidate inscribed circle.
    pub fn inscribed_residuals(&self, c: &Circle) -> (f64, f64) {
        (
            c.center.dist(self.outer.center) - (self.outer.radius - c.radius),
            c.center.dist(self.inner.center) - (self.inner.radius + c.radius),
        )
    }

    pub fn is_inscribed(&self, c: &Circle, tol: f64) -> bool {
        let (a, b) = self.inscribed_residuals(c);
        a.abs().max(b.abs()) <= tol * self.outer.radius
    }

    /// The inscribed circle touching `ω` at polar angle `theta` about `I`.
    pub fn inscribed_at(&self, theta: f64) -> Circle {
        let (big_r, r) = (self.outer.radius, self.inner.radius);
        let u = Point::polar(theta);
        let v = self.inner.center - self.outer.center;
        let vu = v.dot(u);
        let rho = (big_r * big_r - r * r - v.norm2() - 2.0 * r * vu) / (2.0 * (big_r + r + vu));
        Circle { center: self.inner.center + u * (r + rho), radius: rho }
    }

    /// Polar angle about `I` of the contact point of an inscribed circle with `ω`.
    pub fn inner_contact_angle(&self, c: &Circle) -> f64 {
        (c.center - self.inner.center).angle()
    }

    /// Semi-axes `(a, b)`, center and major-axis unit vector of the
    /// ellipse traced by inscribed centers (foci `O`, `I`, focal sum `R + r`).
    pub fn centers_ellipse_frame(&self) -> (f64, f64, Point, Point) {
        let a = 0.5 * (self.outer.radius + self.inner.radius);
        let c = 0.5 * self.center_distance();
        let b = (a * a - c * c).sqrt();
        let mid = (self.outer.center + self.inner.center) * 0.5;
        let axis = if self.is_concentric() {
            Point::new(1.0, 0.0)
        } else {
            (self.inner.center - self.outer.center).unit()
        };
        (a, b, mid, axis)
    }

    /// Inscribed circle whose center sits at eccentric anomaly `e` on the
    /// ellipse of centers. Radius is `R − |X − O|`.
    pub fn inscribed_at_anomaly(&self, e: f64) -> Circle {
        let (a, b, mid, axis) = self.centers_ellipse_frame();
        let (s, c) = e.sin_cos();
        let center = mid + axis * (a * c) + axis.perp() * (b * s);
        Circle { center, radius: self.outer.radius - center.dist(self.outer.center) }
    }

    /// Eccentric anomaly of a point on the ellipse of centers.
    pub fn anomaly_of(&self, p: Point) -> f64 {
        let (a, b, mid, axis) = self.centers_ellipse_frame();
        let rel = p - mid;
        (rel.dot(axis.perp()) / b).atan2(rel.dot(axis) / a)
    }

    pub fn scaled(&self, k: f64) -> Result<Self> {
        Self::new(
            Circle::new(self.outer.center * k, self.outer.radius * k)?,
            Circle::new(self.inner.center * k, self.inner.radius * k)?,
        )
    }
}
