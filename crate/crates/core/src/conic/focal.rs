use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use super::{Conic, ConicError, Result};
use crate::geom::{inscribed_circles_tangent_to_line, Annulus, Line, Point};
use crate::tol;

/// Ellipse given by its foci and the sum of focal distances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocalEllipse {
    pub focus1: Point,
    pub focus2: Point,
    pub sum: f64,
}

impl FocalEllipse {
    pub fn residual(&self, p: Point) -> f64 {
        p.dist(self.focus1) + p.dist(self.focus2) - self.sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocalParabola {
    pub focus: Point,
    pub directrix: Line,
}

impl FocalParabola {
    pub fn residual(&self, p: Point) -> f64 {
        p.dist(self.focus) - self.directrix.signed_distance(p).abs()
    }
}

/// Conic in polar form about a focus: `ρ(θ) = p / (1 + e cos(θ − φ))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarConicShape {
    pub focus: Point,
    pub eccentricity: f64,
    pub semi_latus: f64,
    pub phase: f64,
}

impl PolarConicShape {
    pub fn radius_at(&self, theta: f64) -> f64 {
        self.semi_latus / (1.0 + self.eccentricity * (theta - self.phase).cos())
    }

    pub fn point_at(&self, theta: f64) -> Point {
        self.focus + Point::polar(theta) * self.radius_at(theta)
    }

    pub fn rotated(&self, by: f64) -> Self {
        Self { phase: self.phase + by, ..*self }
    }

    /// The shape with focus `focus` and semi-latus rectum `semi_latus`
    /// passing through both points; eccentricity and phase are solved.
    pub fn through_points(focus: Point, semi_latus: f64, pts: [Point; 2]) -> Result<Self> {
        let (u1, u2) = ((pts[0] - focus).unit(), (pts[1] - focus).unit());
        let k1 = semi_latus / pts[0].dist(focus) - 1.0;
        let k2 = semi_latus / pts[1].dist(focus) - 1.0;
        // v·u1 = k1, v·u2 = k2 with v = e (cos φ, sin φ)
        let det = u1.cross(u2);
        if det.abs() < 1e-12 {
            return Err(ConicError::Degenerate("points collinear with the focus".into()));
        }
        let v = Point::new((k1 * u2.y - k2 * u1.y) / det, (u1.x * k2 - u2.x * k1) / det);
        Ok(Self { focus, eccentricity: v.norm(), semi_latus, phase: v.angle() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FocalShape {
    Ellipse(FocalEllipse),
    Parabola(FocalParabola),
    Polar(PolarConicShape),
}

/// Homogeneous map taking global coordinates to a frame with origin
/// `origin` and first axis `axis`.
fn frame(origin: Point, axis: Point) -> Matrix3<f64> {
    let (c, s) = (axis.x, axis.y);
    Matrix3::new(c, s, -(c * origin.x + s * origin.y), -s, c, s * origin.x - c * origin.y, 0.0, 0.0, 1.0)
}

pub fn conic_from_focal(shape: &FocalShape) -> Result<Conic> {
    match shape {
        FocalShape::Ellipse(e) => {
            let half_focal = 0.5 * e.focus1.dist(e.focus2);
            let a = 0.5 * e.sum;
            if !(a > half_focal) {
                return Err(ConicError::Degenerate("focal sum does not exceed focal distance".into()));
            }
            let b2 = a * a - half_focal * half_focal;
            let axis = if half_focal > 0.0 { (e.focus2 - e.focus1).unit() } else { Point::new(1.0, 0.0) };
            let local = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0 / (a * a), 1.0 / b2, -1.0));
            Ok(Conic::pulled_back(&local, &frame((e.focus1 + e.focus2) * 0.5, axis)))
        }
        FocalShape::Parabola(p) => {
            let dist = p.directrix.signed_distance(p.focus);
            if dist.abs() < 1e-14 {
                return Err(ConicError::Degenerate("focus lies on the directrix".into()));
            }
            let n = p.directrix.normal();
            let c = p.directrix.offset();
            let f = p.focus;
            Ok(Conic::new([
                1.0 - n.x * n.x,
                -2.0 * n.x * n.y,
                1.0 - n.y * n.y,
                -2.0 * f.x + 2.0 * c * n.x,
                -2.0 * f.y + 2.0 * c * n.y,
                f.norm2() - c * c,
            ]))
        }
        FocalShape::Polar(s) => {
            if !(s.semi_latus > 0.0) || !(s.eccentricity >= 0.0) {
                return Err(ConicError::Degenerate("need p > 0 and e >= 0".into()));
            }
            // |Y|² = (p − e u·Y)² in focus-centered coordinates with u along the phase
            let (e, p) = (s.eccentricity, s.semi_latus);
            let local = Matrix3::new(1.0 - e * e, 0.0, p * e, 0.0, 1.0, 0.0, p * e, 0.0, -p * p);
            Ok(Conic::pulled_back(&local, &frame(s.focus, Point::polar(s.phase))))
        }
    }
}

/// Ellipse traced by the centers of the inscribed circles.
pub fn centers_ellipse(a: &Annulus) -> FocalEllipse {
    FocalEllipse {
        focus1: a.outer().center,
        focus2: a.inner().center,
        sum: a.outer_radius() + a.inner_radius(),
    }
}

/// Parabola with focus `I` and directrix the image of `t` under the
/// homothety of center `I` and ratio 2. Centers of the inscribed circles
/// tangent to `t` lie on it.
pub fn tangent_parabola(a: &Annulus, t: &Line) -> Result<FocalParabola> {
    let w = a.inner();
    let gap = t.signed_distance(w.center) - w.radius;
    if gap.abs() > tol::TANGENCY * a.outer_radius() {
        return Err(ConicError::Domain("line is not tangent to the inner circle".into()));
    }
    let directrix = Line::new(t.normal(), t.normal().dot(w.center) - 2.0 * w.radius)?;
    Ok(FocalParabola { focus: w.center, directrix })
}

/// The line through the centers of the two inscribed circles tangent to `t`.
pub fn chord_through_centers(a: &Annulus, t: &Line) -> Result<Line> {
    let circles = inscribed_circles_tangent_to_line(a, t)?;
    if circles.len() != 2 {
        return Err(ConicError::Degenerate(format!("expected 2 tangent circles, found {}", circles.len())));
    }
    Ok(Line::through_points(circles[0].center, circles[1].center)?)
}

/// Common points of two conics sharing a focus, in polar form. At most two.
pub fn confocal_intersections(s1: &PolarConicShape, s2: &PolarConicShape) -> Vec<Point> {
    // p1 (1 + e2 cos(θ − φ2)) = p2 (1 + e1 cos(θ − φ1)) is linear in (cos θ, sin θ)
    let (p1, p2) = (s1.semi_latus, s2.semi_latus);
    let a = p1 * s2.eccentricity * s2.phase.cos() - p2 * s1.eccentricity * s1.phase.cos();
    let b = p1 * s2.eccentricity * s2.phase.sin() - p2 * s1.eccentricity * s1.phase.sin();
    let c = p2 - p1;
    let rho = a.hypot(b);
    if rho == 0.0 || c.abs() > rho {
        return Vec::new();
    }
    let base = b.atan2(a);
    let delta = (c / rho).acos();
    [base + delta, base - delta]
        .into_iter()
        .filter(|t| 1.0 + s1.eccentricity * (t - s1.phase).cos() > 0.0)
        .map(|t| s1.point_at(t))
        .collect()
}
