use serde::{Deserialize, Serialize};

use super::{Annulus, GeomError, Point, Result};

/// An oriented line `{P : n·P = c}` with unit normal `n`.
///
/// The positive side is `n·P > c`. `(n, c)` and `(-n, -c)` describe the same
/// point set with opposite orientation; constructions never flip silently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    normal: Point,
    offset: f64,
}

impl Line {
    pub fn new(normal: Point, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if !(n > 0.0) || !n.is_finite() || !offset.is_finite() {
            return Err(GeomError::Domain("line normal must be nonzero and finite".into()));
        }
        Ok(Self { normal: normal * (1.0 / n), offset: offset / n })
    }

    /// Line through `p` with unit normal `n`, positive side along `n`.
    pub fn through(p: Point, normal: Point) -> Result<Self> {
        let n = normal.unit();
        Self::new(n, n.dot(p))
    }

    /// Line through two points; positive side to the left of `p → q`.
    pub fn through_points(p: Point, q: Point) -> Result<Self> {
        if p.dist(q) == 0.0 {
            return Err(GeomError::Degenerate("coincident points".into()));
        }
        Self::through(p, (q - p).perp())
    }

    /// Builds a line from homogeneous coordinates `(u, v, w)` of `u x + v y + w = 0`.
    pub fn from_homogeneous(h: [f64; 3]) -> Result<Self> {
        Self::new(Point::new(h[0], h[1]), -h[2])
    }

    pub fn normal(&self) -> Point {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Unit direction: the normal turned a quarter turn counterclockwise.
    pub fn direction(&self) -> Point {
        self.normal.perp()
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }

    pub fn foot(&self, p: Point) -> Point {
        p - self.normal * self.signed_distance(p)
    }

    pub fn flipped(&self) -> Self {
        Self { normal: -self.normal, offset: -self.offset }
    }

    /// Unit-norm homogeneous coordinates `(nx, ny, -c)`.
    pub fn homogeneous(&self) -> [f64; 3] {
        let h = [self.normal.x, self.normal.y, -self.offset];
        let n = (h[0] * h[0] + h[1] * h[1] + h[2] * h[2]).sqrt();
        [h[0] / n, h[1] / n, h[2] / n]
    }

    pub fn rotate_about(&self, center: Point, phi: f64) -> Self {
        let n = self.normal.rotate(phi);
        let p = self.foot(center).rotate_about(center, phi);
        Self { normal: n, offset: n.dot(p) }
    }

    pub fn translate(&self, by: Point) -> Self {
        Self { normal: self.normal, offset: self.offset + self.normal.dot(by) }
    }

    /// Intersection point of two lines, `None` when parallel.
    pub fn intersect(&self, other: &Line) -> Option<Point> {
        let det = self.normal.cross(other.normal);
        if det.abs() < 1e-15 {
            return None;
        }
        let x = (self.offset * other.normal.y - other.offset * self.normal.y) / det;
        let y = (self.normal.x * other.offset - other.normal.x * self.offset) / det;
        Some(Point::new(x, y))
    }

    /// Angular and offset distance to another line of the same orientation.
    pub fn distance_to(&self, other: &Line, scale: f64) -> f64 {
        (self.normal - other.normal).norm() * scale + (self.offset - other.offset).abs()
    }
}

/// A segment of a line tangent to the inner circle, with endpoints on the
/// outer circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub line: Line,
    /// Endpoints ordered along [`Line::direction`].
    pub endpoints: [Point; 2],
    pub tangency: Point,
}

impl Chord {
    /// The chord of `a.outer()` tangent to `a.inner()` at polar angle `phi`
    /// about the inner center. The positive side of its line contains `I`.
    pub fn tangent_at(a: &Annulus, phi: f64) -> Self {
        let inner = a.inner();
        let u = Point::polar(phi);
        let tangency = inner.center + u * inner.radius;
        let line = Line { normal: -u, offset: (-u).dot(tangency) };
        let dir = line.direction();
        let rel = tangency - a.outer().center;
        let b = dir.dot(rel);
        let c = rel.norm2() - a.outer().radius * a.outer().radius;
        // c < 0 for a valid annulus, so the discriminant is positive
        let disc = (b * b - c).max(0.0).sqrt();
        let s_minus = -b - disc;
        let s_plus = -b + disc;
        Chord { line, endpoints: [tangency + dir * s_minus, tangency + dir * s_plus], tangency }
    }

    /// Position of `p` along the chord, measured from the tangency point.
    pub fn param(&self, p: Point) -> f64 {
        (p - self.tangency).dot(self.line.direction())
    }
}
