//! Principal-axis reduction: foci, directrices, eccentricity and sampling.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::{Conic, ConicError, ConicKind, Result};
use crate::geom::{Line, Point};

/// A focus with its directrix (none for a circle) and the eccentricity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocalElement {
    pub focus: Point,
    pub directrix: Option<Line>,
    pub eccentricity: f64,
}

/// Eigen-decomposition of the quadratic part: eigenvalues ascending, each
/// eigenvector with its first nonzero component positive.
fn principal_axes(a: f64, b: f64, c: f64) -> ([f64; 2], [Point; 2]) {
    let mean = 0.5 * (a + c);
    let rad = (0.5 * (a - c)).hypot(0.5 * b);
    let theta = 0.5 * b.atan2(a - c);
    // (cos θ, sin θ) carries the larger eigenvalue
    let big = Point::polar(theta);
    let small = big.perp();
    let fix = |v: Point| if v.x < -1e-15 || (v.x.abs() <= 1e-15 && v.y < 0.0) { -v } else { v };
    ([mean - rad, mean + rad], [fix(small), fix(big)])
}

enum Reduced {
    /// Center, axis unit vectors, and `λ1 ξ² + λ2 η² + f0 = 0`.
    Central { center: Point, axes: [Point; 2], lambda: [f64; 2], f0: f64 },
    /// Vertex, opening axis (unit, pointing into the concave side), focal length.
    Parabola { vertex: Point, axis: Point, focal: f64 },
}

fn reduce(conic: &Conic) -> Result<Reduced> {
    if conic.kind() == ConicKind::Degenerate {
        return Err(ConicError::Degenerate("conic is singular or has no real points".into()));
    }
    let [a, b, c, d, e, f] = conic.coeffs();
    let (lambda, axes) = principal_axes(a, b, c);
    if conic.kind() == ConicKind::Parabola {
        // one eigenvalue vanishes; the other axis carries the square
        let (k0, k1) = if lambda[0].abs() < lambda[1].abs() { (0, 1) } else { (1, 0) };
        let (u, v, lam) = (axes[k0], axes[k1], lambda[k1]);
        let du = d * u.x + e * u.y;
        let dv = d * v.x + e * v.y;
        if du.abs() < 1e-14 {
            return Err(ConicError::Degenerate("parabola collapsed to parallel lines".into()));
        }
        // lam (η − η0)² = −du (ξ − ξ0)
        let eta0 = -dv / (2.0 * lam);
        let xi0 = -(f - dv * dv / (4.0 * lam)) / du;
        let focal = -du / (4.0 * lam);
        let (axis, focal) = if focal >= 0.0 { (u, focal) } else { (-u, -focal) };
        return Ok(Reduced::Parabola { vertex: u * xi0 + v * eta0, axis, focal });
    }
    let det = a * c - 0.25 * b * b;
    let cx = (-(c * d) + 0.5 * b * e) / (2.0 * det);
    let cy = (-(a * e) + 0.5 * b * d) / (2.0 * det);
    let f0 = f + 0.5 * (d * cx + e * cy);
    Ok(Reduced::Central { center: Point::new(cx, cy), axes, lambda, f0 })
}

/// Foci with directrices and eccentricity.
pub fn focal_elements(conic: &Conic) -> Result<Vec<FocalElement>> {
    match reduce(conic)? {
        Reduced::Parabola { vertex, axis, focal } => {
            let focus = vertex + axis * focal;
            let directrix = Line::through(vertex - axis * focal, axis)?;
            Ok(vec![FocalElement { focus, directrix: Some(directrix), eccentricity: 1.0 }])
        }
        Reduced::Central { center, axes, lambda, f0 } => {
            let s0 = -f0 / lambda[0];
            let s1 = -f0 / lambda[1];
            // transverse axis and the squared semi-axes (b2 signed: < 0 for hyperbolas)
            let (axis, a2, b2) = if s0 > 0.0 && s1 > 0.0 {
                if s0 >= s1 { (axes[0], s0, s1) } else { (axes[1], s1, s0) }
            } else if s0 > 0.0 {
                (axes[0], s0, s1)
            } else {
                (axes[1], s1, s0)
            };
            let c = (a2 - b2).sqrt();
            let a = a2.sqrt();
            if c <= 1e-12 * a {
                return Ok(vec![
                    FocalElement { focus: center, directrix: None, eccentricity: 0.0 },
                    FocalElement { focus: center, directrix: None, eccentricity: 0.0 },
                ]);
            }
            let ecc = c / a;
            let d = a2 / c;
            Ok([1.0, -1.0]
                .into_iter()
                .map(|sgn| FocalElement {
                    focus: center + axis * (sgn * c),
                    directrix: Line::through(center + axis * (sgn * d), axis * sgn).ok(),
                    eccentricity: ecc,
                })
                .collect())
        }
    }
}

/// Real foci: 2 for central conics (coincident for circles), 1 for parabolas.
pub fn conic_foci(conic: &Conic) -> Result<Vec<Point>> {
    Ok(focal_elements(conic)?.into_iter().map(|f| f.focus).collect())
}

/// `n` deterministic sample points on the conic. Hyperbolas are sampled on
/// both branches for `|t| ≤ 2` (cosh/sinh parameter), parabolas for
/// `|η| ≤ 6f` around the vertex.
pub fn sample_points(conic: &Conic, n: usize) -> Result<Vec<Point>> {
    Ok(match reduce(conic)? {
        Reduced::Parabola { vertex, axis, focal } => {
            let w = axis.perp();
            (0..n)
                .map(|k| {
                    let eta = -6.0 * focal + 12.0 * focal * k as f64 / (n.max(2) - 1) as f64;
                    vertex + axis * (eta * eta / (4.0 * focal)) + w * eta
                })
                .collect()
        }
        Reduced::Central { center, axes, lambda, f0 } => {
            let s = [-f0 / lambda[0], -f0 / lambda[1]];
            if s[0] > 0.0 && s[1] > 0.0 {
                let (a, b) = (s[0].sqrt(), s[1].sqrt());
                (0..n)
                    .map(|k| {
                        let t = k as f64 * TAU / n as f64;
                        center + axes[0] * (a * t.cos()) + axes[1] * (b * t.sin())
                    })
                    .collect()
            } else {
                let (tr, cj) = if s[0] > 0.0 { (0, 1) } else { (1, 0) };
                let (a, b) = (s[tr].sqrt(), (-s[cj]).sqrt());
                let half = n / 2;
                (0..n)
                    .map(|k| {
                        let (branch, j, m) = if k < half { (1.0, k, half) } else { (-1.0, k - half, n - half) };
                        let t = -2.0 + 4.0 * j as f64 / (m.max(2) - 1) as f64;
                        center + axes[tr] * (branch * a * t.cosh()) + axes[cj] * (b * t.sinh())
                    })
                    .collect()
            }
        }
    })
}

/// Largest `| |X − focus| − e·dist(X, directrix) |` over 100 sample points,
/// divided by the diameter of the sample set.
pub fn focus_directrix_residual(conic: &Conic, focus: Point, directrix: &Line, e: f64) -> Result<f64> {
    let pts = sample_points(conic, 100)?;
    let mut diameter: f64 = 0.0;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            diameter = diameter.max(p.dist(*q));
        }
    }
    let worst = pts
        .iter()
        .map(|x| (x.dist(focus) - e * directrix.signed_distance(*x).abs()).abs())
        .fold(0.0, f64::max);
    Ok(worst / diameter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::rotate_conic_about;

    fn canonical() -> Conic {
        Conic::new([0.25, 0.0, 1.0, 0.0, 0.0, -1.0])
    }

    fn sorted(mut v: Vec<Point>) -> Vec<Point> {
        v.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        v
    }

    #[test]
    fn canonical_ellipse_foci() {
        let f = sorted(conic_foci(&canonical()).unwrap());
        let s3 = 3f64.sqrt();
        assert!(f[0].dist(Point::new(-s3, 0.0)) < 1e-14 && f[1].dist(Point::new(s3, 0.0)) < 1e-14);
    }

    #[test]
    fn circle_foci_at_center() {
        let c = Conic::new([1.0, 0.0, 1.0, -2.0, -4.0, 1.0]);
        let f = conic_foci(&c).unwrap();
        assert_eq!(f.len(), 2);
        for p in f {
            assert!(p.dist(Point::new(1.0, 2.0)) < 1e-14);
        }
    }

    #[test]
    fn foci_follow_rigid_motion() {
        let phi = std::f64::consts::PI / 6.0;
        let shift = Point::new(1.0, 2.0);
        let moved = rotate_conic_about(&canonical(), Point::ORIGIN, phi);
        let [a, b, c, d, e, f] = moved.coeffs();
        // translate by `shift`: substitute x − sx, y − sy
        let (sx, sy) = (shift.x, shift.y);
        let moved = Conic::new([
            a,
            b,
            c,
            d - 2.0 * a * sx - b * sy,
            e - 2.0 * c * sy - b * sx,
            f + a * sx * sx + b * sx * sy + c * sy * sy - d * sx - e * sy,
        ]);
        let got = sorted(conic_foci(&moved).unwrap());
        let s3 = 3f64.sqrt();
        let want = sorted(vec![
            Point::new(s3, 0.0).rotate(phi) + shift,
            Point::new(-s3, 0.0).rotate(phi) + shift,
        ]);
        for (g, w) in got.iter().zip(&want) {
            assert!(g.dist(*w) < 1e-10, "{g:?} vs {w:?}");
        }
    }

    #[test]
    fn parabola_focus_and_directrix() {
        // y = x²/4 − 1: focus (0, 0), directrix y = −2
        let c = Conic::new([0.25, 0.0, 0.0, 0.0, -1.0, -1.0]);
        let els = focal_elements(&c).unwrap();
        assert_eq!(els.len(), 1);
        assert!(els[0].focus.dist(Point::ORIGIN) < 1e-13);
        let dir = els[0].directrix.unwrap();
        assert!(dir.signed_distance(Point::new(3.0, -2.0)).abs() < 1e-13);
        assert!(focus_directrix_residual(&c, els[0].focus, &dir, 1.0).unwrap() < 1e-12);
    }

    #[test]
    fn hyperbola_focal_data() {
        // x² − y²/3 = 1: foci (±2, 0), e = 2
        let c = Conic::new([1.0, 0.0, -1.0 / 3.0, 0.0, 0.0, -1.0]);
        let els = focal_elements(&c).unwrap();
        for el in &els {
            assert!((el.focus.x.abs() - 2.0).abs() < 1e-13 && el.focus.y.abs() < 1e-13);
            assert!((el.eccentricity - 2.0).abs() < 1e-13);
            let r = focus_directrix_residual(&c, el.focus, &el.directrix.unwrap(), el.eccentricity).unwrap();
            assert!(r < 1e-12, "{r}");
        }
    }

    #[test]
    fn canonical_focus_directrix_and_sensitivity() {
        let s3 = 3f64.sqrt();
        let dir = Line::new(Point::new(1.0, 0.0), 4.0 / s3).unwrap();
        let f = Point::new(s3, 0.0);
        assert!(focus_directrix_residual(&canonical(), f, &dir, s3 / 2.0).unwrap() < 1e-10);
        assert!(focus_directrix_residual(&canonical(), f, &dir, s3 / 2.0 + 0.01).unwrap() > 1e-3);
    }

    #[test]
    fn degenerate_conic_rejected() {
        let c = Conic::new([1.0, 0.0, -1.0, 0.0, 0.0, 0.0]);
        assert!(conic_foci(&c).is_err());
    }
}
