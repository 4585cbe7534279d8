use nalgebra::Matrix3;
use std::f64::consts::TAU;

use super::{Conic, PolarConicShape};
use crate::geom::{wrap_pi, Point};

/// The conic rotated by `phi` about `center`.
pub fn rotate_conic_about(c: &Conic, center: Point, phi: f64) -> Conic {
    // pull back through the inverse rotation X ↦ C + R(−φ)(X − C)
    let (s, co) = (-phi).sin_cos();
    let (cx, cy) = (center.x, center.y);
    let h = Matrix3::new(
        co,
        -s,
        cx - co * cx + s * cy,
        s,
        co,
        cy - s * cx - co * cy,
        0.0,
        0.0,
        1.0,
    );
    Conic::pulled_back(&c.matrix(), &h)
}

fn polar_terms(shape: &PolarConicShape, phase: f64, pts: &[Point; 2]) -> [(f64, f64); 2] {
    pts.map(|p| {
        let rel = p - shape.focus;
        let th = rel.angle();
        let res = shape.semi_latus / rel.norm() - 1.0 - shape.eccentricity * (th - phase).cos();
        let jac = -shape.eccentricity * (th - phase).sin();
        (res, jac)
    })
}

/// Largest `|p/ρᵢ − 1 − e cos(θᵢ − φ)|` over the two points.
pub fn pass_through_residual(shape: &PolarConicShape, phase: f64, pts: &[Point; 2]) -> f64 {
    polar_terms(shape, phase, pts).iter().map(|(r, _)| r.abs()).fold(0.0, f64::max)
}

const SCAN: usize = 720;
const ACCEPT: f64 = 1e-10;

/// Every phase (wrapped to `(−π, π]`, ascending) at which `shape`, rotated
/// about its focus, passes through both points.
///
/// Minima of the summed squared residual on a 720-point grid are polished by
/// Gauss–Newton; phases with pass-through residual below `1e-10` are kept.
pub fn theorem6_rotation(shape: &PolarConicShape, p1: Point, p2: Point) -> Vec<f64> {
    let pts = [p1, p2];
    let g = |phi: f64| polar_terms(shape, phi, &pts).iter().map(|(r, _)| r * r).sum::<f64>();
    let grid: Vec<f64> = (0..SCAN).map(|k| g(k as f64 * TAU / SCAN as f64)).collect();
    let mut phases: Vec<f64> = Vec::new();
    for k in 0..SCAN {
        let (prev, next) = (grid[(k + SCAN - 1) % SCAN], grid[(k + 1) % SCAN]);
        if !(grid[k] <= prev && grid[k] <= next) {
            continue;
        }
        let mut phi = k as f64 * TAU / SCAN as f64;
        for _ in 0..50 {
            let terms = polar_terms(shape, phi, &pts);
            let jj: f64 = terms.iter().map(|(_, j)| j * j).sum();
            if jj == 0.0 {
                break;
            }
            let step = terms.iter().map(|(r, j)| r * j).sum::<f64>() / jj;
            phi -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        if pass_through_residual(shape, phi, &pts) >= ACCEPT {
            continue;
        }
        let phi = wrap_pi(phi);
        if !phases.iter().any(|q| wrap_pi(q - phi).abs() < 1e-9) {
            phases.push(phi);
        }
    }
    phases.sort_by(f64::total_cmp);
    phases
}
