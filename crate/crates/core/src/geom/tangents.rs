use serde::{Deserialize, Serialize};

use super::{Annulus, Circle, GeomError, Line, Point, Result};
use crate::tol;

/// A similitude center, possibly at infinity (equal radii).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Similitude {
    Finite(Point),
    /// Point at infinity in the given unit direction.
    AtInfinity(Point),
}

/// Tangent to `circle` at the point of polar angle `theta` from its center.
/// The positive side contains the center.
pub fn tangent_line_at(circle: &Circle, theta: f64) -> Line {
    let u = Point::polar(theta);
    let touch = circle.center + u * circle.radius;
    Line::through(touch, -u).expect("unit normal")
}

/// Tangent lines to `c` through `p`: two outside, one on, none inside.
pub fn tangent_lines_from_point(p: Point, c: &Circle) -> Vec<Line> {
    let rel = p - c.center;
    let dist = rel.norm();
    let eps = tol::TANGENCY * c.radius;
    if dist < c.radius - eps {
        return Vec::new();
    }
    let base = rel.angle();
    if dist <= c.radius + eps {
        return vec![tangent_line_at(c, base)];
    }
    let alpha = (c.radius / dist).acos();
    vec![tangent_line_at(c, base + alpha), tangent_line_at(c, base - alpha)]
}

/// Common external tangents of two circles, oriented with both centers on
/// the positive side. Two lines in general position, one when the circles
/// touch internally.
pub fn common_external_tangents(c1: &Circle, c2: &Circle) -> Result<Vec<Line>> {
    let delta = c1.center - c2.center;
    let dist = delta.norm();
    let dr = c1.radius - c2.radius;
    let scale = c1.radius.max(c2.radius);
    if dist <= dr.abs() - tol::TANGENCY * scale || dist <= tol::TANGENCY * scale {
        return Err(GeomError::Containment);
    }
    let base = delta.angle();
    let ratio = (dr / dist).clamp(-1.0, 1.0);
    let alpha = ratio.acos();
    let mk = |phi: f64| {
        let n = Point::polar(phi);
        Line::new(n, n.dot(c1.center) - c1.radius).expect("unit normal")
    };
    if alpha.abs() < 1e-12 {
        return Ok(vec![mk(base)]);
    }
    Ok(vec![mk(base + alpha), mk(base - alpha)])
}

/// Point dividing the center segment internally in the ratio of the radii.
pub fn internal_similitude_center(c1: &Circle, c2: &Circle) -> Point {
    (c1.center * c2.radius + c2.center * c1.radius) * (1.0 / (c1.radius + c2.radius))
}

/// External similitude center; at infinity for equal radii.
pub fn external_similitude_center(c1: &Circle, c2: &Circle) -> Similitude {
    let dr = c2.radius - c1.radius;
    if dr.abs() <= tol::TANGENCY * c1.radius.max(c2.radius) {
        return Similitude::AtInfinity((c2.center - c1.center).unit());
    }
    Similitude::Finite((c1.center * c2.radius - c2.center * c1.radius) * (1.0 / dr))
}

/// Meeting point of the two common external tangents of `ω` and an inscribed
/// circle `w1`. In a closing two-tangent configuration these points trace a
/// straight line; circles congruent to `ω` give a point at infinity.
pub fn theorem2_meeting_point(a: &Annulus, w1: &Circle) -> Result<Similitude> {
    if !a.is_inscribed(w1, tol::TANGENCY) {
        return Err(GeomError::Domain("circle is not inscribed in the annulus".into()));
    }
    let w = a.inner();
    let scale = a.outer_radius();
    let dr = w1.radius - w.radius;
    if dr.abs() <= tol::TANGENCY * scale {
        return Ok(Similitude::AtInfinity((w1.center - w.center).unit()));
    }
    // E − I = r (I − X) / (ρ − r)
    Ok(Similitude::Finite(w.center + (w.center - w1.center) * (w.radius / dr)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn unit() -> Circle {
        Circle::new(Point::ORIGIN, 1.0).unwrap()
    }

    #[test]
    fn axis_tangents() {
        let l = tangent_line_at(&unit(), -FRAC_PI_2);
        assert!((l.signed_distance(Point::new(0.0, -1.0))).abs() < 1e-15);
        assert!(l.signed_distance(Point::new(0.3, 0.0)) > 0.0);
        assert!((l.normal().y - 1.0).abs() < 1e-15);

        let l = tangent_line_at(&unit(), 0.0);
        assert!((l.normal().x + 1.0).abs() < 1e-15 && (l.offset() + 1.0).abs() < 1e-15);

        let c = Circle::new(Point::new(3.0, 0.0), 1.0).unwrap();
        let l = tangent_line_at(&c, FRAC_PI_2);
        assert!(l.signed_distance(Point::new(3.0, 1.0)).abs() < 1e-15);
        assert!(l.signed_distance(Point::new(-7.0, 1.0)).abs() < 1e-14);
    }

    #[test]
    fn tangents_from_external_point() {
        let lines = tangent_lines_from_point(Point::new(2.0, 0.0), &unit());
        assert_eq!(lines.len(), 2);
        let s3 = 3f64.sqrt() / 2.0;
        let touches = [Point::new(0.5, s3), Point::new(0.5, -s3)];
        for (l, t) in lines.iter().zip(touches) {
            assert!(l.signed_distance(t).abs() < 1e-12);
            assert!(l.signed_distance(Point::new(2.0, 0.0)).abs() < 1e-12);
            assert!((l.signed_distance(Point::ORIGIN) - 1.0).abs() < 1e-12);
        }
        let on = tangent_lines_from_point(Point::new(1.0, 0.0), &unit());
        assert_eq!(on.len(), 1);
        assert!((on[0].normal().x.abs() - 1.0).abs() < 1e-15 && (on[0].offset().abs() - 1.0).abs() < 1e-15);
        assert!(tangent_lines_from_point(Point::ORIGIN, &unit()).is_empty());
    }

    #[test]
    fn external_tangents_equal_radii() {
        let a = unit();
        let b = Circle::new(Point::new(2.0, 0.0), 1.0).unwrap();
        let lines = common_external_tangents(&a, &b).unwrap();
        assert_eq!(lines.len(), 2);
        let mut ys: Vec<f64> = lines.iter().map(|l| l.offset() / l.normal().y).collect();
        ys.sort_by(f64::total_cmp);
        assert!((ys[0] + 1.0).abs() < 1e-14 && (ys[1] - 1.0).abs() < 1e-14);
        for l in &lines {
            assert!(l.normal().x.abs() < 1e-15);
        }
    }

    #[test]
    fn external_tangents_through_similitude_center() {
        let a = unit();
        let b = Circle::new(Point::new(3.0, 0.0), 2.0).unwrap();
        let lines = common_external_tangents(&a, &b).unwrap();
        assert_eq!(lines.len(), 2);
        let e = Point::new(-3.0, 0.0);
        let mut slopes = Vec::new();
        for l in &lines {
            assert!((l.signed_distance(a.center) - 1.0).abs() < 1e-10);
            assert!((l.signed_distance(b.center) - 2.0).abs() < 1e-10);
            assert!(l.signed_distance(e).abs() < 1e-10);
            let d = l.direction();
            slopes.push(d.y / d.x);
        }
        slopes.sort_by(f64::total_cmp);
        let s = 2f64.sqrt() / 4.0;
        assert!((slopes[0] + s).abs() < 1e-12 && (slopes[1] - s).abs() < 1e-12);
    }

    #[test]
    fn concentric_circles_have_no_external_tangent() {
        let b = Circle::new(Point::ORIGIN, 2.0).unwrap();
        assert_eq!(common_external_tangents(&unit(), &b), Err(GeomError::Containment));
    }

    #[test]
    fn internal_centers() {
        let w = unit();
        let k = Circle::new(Point::new(4.0, 0.0), 3.0).unwrap();
        let s = internal_similitude_center(&w, &k);
        assert!((s.x - 1.0).abs() < 1e-15 && s.y.abs() < 1e-15);

        let c1 = Circle::new(Point::ORIGIN, 2.0).unwrap();
        let c2 = Circle::new(Point::new(0.0, 6.0), 2.0).unwrap();
        let s = internal_similitude_center(&c1, &c2);
        assert!((s.y - 3.0).abs() < 1e-15);

        let c3 = Circle::new(Point::ORIGIN, 5.0).unwrap();
        assert_eq!(internal_similitude_center(&c1, &c3), Point::ORIGIN);
    }

    fn a2_frame() -> Annulus {
        Annulus::new(
            Circle::new(Point::new(4.5, 0.0), 3.5).unwrap(),
            Circle::new(Point::new(3.0, 0.0), 1.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn meeting_point_in_a2_frame() {
        let a = a2_frame();
        for (cx, rho) in [(6.0, 2.0), (1.5, 0.5)] {
            let w1 = Circle::new(Point::new(cx, 0.0), rho).unwrap();
            match theorem2_meeting_point(&a, &w1).unwrap() {
                Similitude::Finite(p) => assert!(p.norm() < 1e-12, "{p:?}"),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn meeting_point_concentric_is_at_infinity() {
        let a = Annulus::from_radii(3.0, 1.0, 0.0).unwrap();
        for k in 0..6 {
            let w1 = a.inscribed_at(k as f64 * PI / 3.0 + 0.1);
            assert!(matches!(theorem2_meeting_point(&a, &w1).unwrap(), Similitude::AtInfinity(_)));
        }
    }

    #[test]
    fn meeting_point_rejects_loose_circle() {
        let a = a2_frame();
        let w1 = Circle::new(Point::new(6.0, 0.0), 1.9).unwrap();
        assert!(theorem2_meeting_point(&a, &w1).is_err());
    }
}
