//! Inscribed circles meeting one extra tangency condition.
//!
//! Candidates are located on the ellipse of centers (foci `O` and `I`, focal
//! sum `R + r`), parameterized by eccentric anomaly. The third condition is
//! scanned over [`tol::ROOT_BRACKETS`] brackets, refined with Brent, and the
//! result is polished by Newton on the full `(x, y, ρ)` residual system.

use nalgebra::{Matrix3, Vector3};
use std::f64::consts::TAU;

use super::{Annulus, Circle, GeomError, Line, Point, Result};
use crate::roots::{brent, periodic_roots};
use crate::tol;

const SCAN_OFFSET: f64 = 0.012_345_678_9;

#[derive(Clone, Copy)]
enum Third<'a> {
    /// Tangent to the line on its positive side.
    Line(&'a Line),
    /// Externally tangent to the circle.
    Circle(&'a Circle),
}

fn residuals(a: &Annulus, x: Point, rho: f64, third: Third) -> Vector3<f64> {
    let o = a.outer();
    let w = a.inner();
    let t = match third {
        Third::Line(l) => l.signed_distance(x) - rho,
        Third::Circle(c) => x.dist(c.center) - (rho + c.radius),
    };
    Vector3::new(x.dist(o.center) - (o.radius - rho), x.dist(w.center) - (w.radius + rho), t)
}

fn polish(a: &Annulus, start: &Circle, third: Third) -> Circle {
    let (mut x, mut rho) = (start.center, start.radius);
    let scale = a.outer_radius();
    for _ in 0..8 {
        let f = residuals(a, x, rho, third);
        if f.amax() < 1e-15 * scale {
            break;
        }
        let uo = (x - a.outer().center).unit();
        let ui = (x - a.inner().center).unit();
        let (t, dt) = match third {
            Third::Line(l) => (l.normal(), -1.0),
            Third::Circle(c) => ((x - c.center).unit(), -1.0),
        };
        let jac = Matrix3::new(uo.x, uo.y, 1.0, ui.x, ui.y, -1.0, t.x, t.y, dt);
        let Some(step) = jac.lu().solve(&f) else { break };
        let nx = x - Point::new(step[0], step[1]);
        let nrho = rho - step[2];
        if !(nrho > 0.0) || !nx.is_finite() {
            break;
        }
        let better = residuals(a, nx, nrho, third).amax() <= f.amax();
        if !better {
            break;
        }
        x = nx;
        rho = nrho;
    }
    Circle { center: x, radius: rho }
}

/// Roots on either side of an anomaly where the third residual is negative.
///
/// The negative set is an arc around the anchor, so walking outward on a
/// geometrically refined offset grid brackets both of its ends however
/// short the arc is.
fn anchored_roots(a: &Annulus, g: &impl Fn(f64) -> f64, third: Third) -> Vec<f64> {
    let anchor = match third {
        Third::Circle(c) => a.anomaly_of(c.center),
        Third::Line(l) => {
            let touch = (l.foot(a.inner().center) - a.inner().center).angle();
            a.anomaly_of(a.inscribed_at(touch).center)
        }
    };
    if !(g(anchor) < 0.0) {
        return Vec::new();
    }
    let mut offsets: Vec<f64> = (0..40).map(|k| 1e-12 * 2f64.powi(k)).filter(|h| *h < TAU).collect();
    offsets.extend((1..tol::ROOT_BRACKETS).map(|k| TAU * k as f64 / tol::ROOT_BRACKETS as f64));
    offsets.sort_by(f64::total_cmp);
    let mut roots = Vec::new();
    for sign in [1.0, -1.0] {
        let mut inside = 0.0;
        for &h in &offsets {
            if g(anchor + sign * h) >= 0.0 {
                let (x, y) = (anchor + sign * inside, anchor + sign * h);
                if let Some(e) = brent(g, x.min(y), x.max(y), 1e-15) {
                    roots.push(e);
                }
                break;
            }
            inside = h;
        }
    }
    roots
}

fn solve(a: &Annulus, third: Third) -> Vec<Circle> {
    let g = |e: f64| {
        let c = a.inscribed_at_anomaly(e);
        residuals(a, c.center, c.radius, third)[2]
    };
    let tolerance = tol::TANGENCY * a.outer_radius();
    let mut found: Vec<Circle> = Vec::new();
    let mut roots = anchored_roots(a, &g, third);
    // offset keeps symmetric roots (anomaly 0 or π) off the bracket ends
    let lo = SCAN_OFFSET;
    roots.extend(periodic_roots(g, lo, lo + TAU, tol::ROOT_BRACKETS));
    for e in roots {
        let c = polish(a, &a.inscribed_at_anomaly(e), third);
        if !(c.radius > 0.0) || residuals(a, c.center, c.radius, third).amax() > tolerance {
            continue;
        }
        if found.iter().any(|f| f.center.dist(c.center) < tol::CONSTRUCT * a.outer_radius()) {
            continue;
        }
        found.push(c);
    }
    found
}

/// Circles internally tangent to `k`, externally tangent to `ω` and tangent
/// to `t` on the same side of `t` as `ω`.
///
/// `t` must touch `ω` with `ω` on its positive side. Results are ordered by
/// their contact position along `t`'s direction.
pub fn inscribed_circles_tangent_to_line(a: &Annulus, t: &Line) -> Result<Vec<Circle>> {
    let w = a.inner();
    let gap = t.signed_distance(w.center) - w.radius;
    if gap.abs() > tol::TANGENCY * a.outer_radius() {
        return Err(GeomError::Domain(format!(
            "line is not tangent to the inner circle with it on the positive side (gap {gap:e})"
        )));
    }
    let touch = t.foot(w.center);
    let mut circles = solve(a, Third::Line(t));
    let dir = t.direction();
    circles.sort_by(|p, q| {
        dir.dot(t.foot(p.center) - touch).total_cmp(&dir.dot(t.foot(q.center) - touch))
    });
    Ok(circles)
}

/// Inscribed circles externally tangent to the inscribed circle `c`, ordered
/// by their contact angle on `ω` relative to that of `c` (clockwise neighbor
/// first).
pub fn steiner_neighbors(a: &Annulus, c: &Circle) -> Result<Vec<Circle>> {
    if !a.is_inscribed(c, tol::TANGENCY) {
        return Err(GeomError::Domain("circle is not inscribed in the annulus".into()));
    }
    let base = a.inner_contact_angle(c);
    let mut circles = solve(a, Third::Circle(c));
    circles.sort_by(|p, q| {
        let dp = super::wrap_pi(a.inner_contact_angle(p) - base);
        let dq = super::wrap_pi(a.inner_contact_angle(q) - base);
        dp.total_cmp(&dq)
    });
    Ok(circles)
}
