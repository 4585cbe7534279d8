use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::geom::{Line, Point};

/// Threshold on unit-norm coefficients below which a coefficient counts as
/// zero for the sign convention.
const SIGN_EPS: f64 = 1e-12;

fn normalize(mut c: [f64; 6]) -> [f64; 6] {
    let n = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n > 0.0 {
        for v in &mut c {
            *v /= n;
        }
    }
    if let Some(first) = c.iter().find(|v| v.abs() > SIGN_EPS) {
        if *first < 0.0 {
            for v in &mut c {
                *v = -*v;
            }
        }
    }
    c
}

fn to_matrix(c: &[f64; 6]) -> Matrix3<f64> {
    let [a, b, cc, d, e, f] = *c;
    Matrix3::new(a, b / 2.0, d / 2.0, b / 2.0, cc, e / 2.0, d / 2.0, e / 2.0, f)
}

fn from_matrix(m: &Matrix3<f64>) -> [f64; 6] {
    let s = |i: usize, j: usize| 0.5 * (m[(i, j)] + m[(j, i)]);
    [s(0, 0), 2.0 * s(0, 1), s(1, 1), 2.0 * s(0, 2), 2.0 * s(1, 2), s(2, 2)]
}

pub(crate) fn adjugate(m: &Matrix3<f64>) -> Matrix3<f64> {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[(r0, c0)] * m[(r1, c1)] - m[(r0, c1)] * m[(r1, c0)]
    };
    // transpose of the cofactor matrix
    Matrix3::new(
        c(1, 2, 1, 2),
        -c(0, 2, 1, 2),
        c(0, 1, 1, 2),
        -c(1, 2, 0, 2),
        c(0, 2, 0, 2),
        -c(0, 1, 0, 2),
        c(1, 2, 0, 1),
        -c(0, 2, 0, 1),
        c(0, 1, 0, 1),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConicKind {
    Ellipse,
    Parabola,
    Hyperbola,
    /// Singular or with no real points.
    Degenerate,
}

/// `Ax² + Bxy + Cy² + Dx + Ey + F = 0`, unit coefficient norm, first
/// nonzero coefficient positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conic {
    coeffs: [f64; 6],
}

impl Conic {
    pub fn new(coeffs: [f64; 6]) -> Self {
        Self { coeffs: normalize(coeffs) }
    }

    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        Self::new(from_matrix(m))
    }

    pub fn coeffs(&self) -> [f64; 6] {
        self.coeffs
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        to_matrix(&self.coeffs)
    }

    pub fn eval(&self, p: Point) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    /// Gradient-normalized residual, a first-order distance to the curve.
    pub fn distance_estimate(&self, p: Point) -> f64 {
        let [a, b, c, d, e, _] = self.coeffs;
        let gx = 2.0 * a * p.x + b * p.y + d;
        let gy = b * p.x + 2.0 * c * p.y + e;
        self.eval(p) / gx.hypot(gy)
    }

    pub fn kind(&self) -> ConicKind {
        let m = self.matrix();
        let [a, b, c, ..] = self.coeffs;
        if m.determinant().abs() < 1e-12 {
            return ConicKind::Degenerate;
        }
        let disc = b * b - 4.0 * a * c;
        if disc.abs() < 1e-12 {
            ConicKind::Parabola
        } else if disc < 0.0 {
            if (a + c) * m.determinant() > 0.0 {
                ConicKind::Degenerate
            } else {
                ConicKind::Ellipse
            }
        } else {
            ConicKind::Hyperbola
        }
    }

    pub fn dual(&self) -> DualConic {
        DualConic::new(from_matrix(&adjugate(&self.matrix())))
    }

    /// Euclidean distance between coefficient vectors.
    pub fn distance(&self, other: &Conic) -> f64 {
        self.coeffs.iter().zip(other.coeffs).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    /// Transforms by a point map `X ↦ H⁻¹ X` given `H` (global to
    /// local homogeneous coordinates): the result vanishes on `H⁻¹(self)`.
    pub(crate) fn pulled_back(local: &Matrix3<f64>, h: &Matrix3<f64>) -> Self {
        Self::from_matrix(&(h.transpose() * local * h))
    }
}

/// `a u² + b uv + c v² + d uw + e vw + f w² = 0` on homogeneous line
/// coordinates `(u, v, w)` of `ux + vy + w = 0`. Unit norm, same sign rule
/// as [`Conic`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualConic {
    coeffs: [f64; 6],
}

impl DualConic {
    pub fn new(coeffs: [f64; 6]) -> Self {
        Self { coeffs: normalize(coeffs) }
    }

    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        Self::new(from_matrix(m))
    }

    pub fn coeffs(&self) -> [f64; 6] {
        self.coeffs
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        to_matrix(&self.coeffs)
    }

    /// Dual form at the unit homogeneous coordinates of `line`.
    pub fn tangency_residual(&self, line: &Line) -> f64 {
        let h = Vector3::from(line.homogeneous());
        (h.transpose() * self.matrix() * h)[0]
    }

    /// The point conic enveloped by the tangent lines (adjugate).
    pub fn point_conic(&self) -> Conic {
        Conic::from_matrix(&adjugate(&self.matrix()))
    }

    pub fn distance(&self, other: &DualConic) -> f64 {
        self.coeffs.iter().zip(other.coeffs).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    pub fn rank(&self, rel_tol: f64) -> usize {
        let sv = self.matrix().singular_values();
        let max = sv.max();
        sv.iter().filter(|s| **s > rel_tol * max).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn canonical_ellipse() -> Conic {
        Conic::new([0.25, 0.0, 1.0, 0.0, 0.0, -1.0])
    }

    #[test]
    fn normalization_and_sign() {
        let c = Conic::new([-2.0, 0.0, -2.0, 0.0, 0.0, 2.0]);
        let n = c.coeffs().iter().map(|v| v * v).sum::<f64>();
        assert!((n - 1.0).abs() < 1e-15);
        assert!(c.coeffs()[0] > 0.0);
        assert_eq!(c.kind(), ConicKind::Ellipse);
    }

    #[test]
    fn classification() {
        assert_eq!(canonical_ellipse().kind(), ConicKind::Ellipse);
        assert_eq!(Conic::new([1.0, 0.0, 0.0, 0.0, -4.0, 0.0]).kind(), ConicKind::Parabola);
        assert_eq!(Conic::new([1.0, 0.0, -1.0, 0.0, 0.0, -1.0]).kind(), ConicKind::Hyperbola);
        assert_eq!(Conic::new([1.0, 0.0, -1.0, 0.0, 0.0, 0.0]).kind(), ConicKind::Degenerate);
        assert_eq!(Conic::new([1.0, 0.0, 1.0, 0.0, 0.0, 1.0]).kind(), ConicKind::Degenerate);
    }

    #[test]
    fn tangent_lines_of_ellipse_satisfy_dual() {
        let c = canonical_ellipse();
        let dual = c.dual();
        for k in 0..12 {
            let t = k as f64 * 0.5;
            let p = Point::new(2.0 * t.cos(), t.sin());
            let grad = Point::new(0.5 * p.x, 2.0 * p.y);
            let line = Line::through(p, grad).unwrap();
            assert!(dual.tangency_residual(&line).abs() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn adjugate_round_trip(
            a in 0.2f64..3.0, c in 0.2f64..3.0, b in -0.3f64..0.3,
            d in -2.0f64..2.0, e in -2.0f64..2.0, f in -3.0f64..-0.5,
        ) {
            let conic = Conic::new([a, b, c, d, e, f]);
            prop_assume!(conic.matrix().determinant().abs() > 1e-3);
            let back = conic.dual().point_conic();
            prop_assert!(back.distance(&conic) < 1e-10);
        }
    }
}
