//! Homogeneous least-squares fit of a dual conic to a family of lines.

use nalgebra::{DMatrix, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::{ConicError, DualConic, Result};
use crate::geom::{Line, Point};

/// Relative singular-value threshold for rank decisions.
const RANK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Envelope {
    /// The lines are tangent to a proper conic.
    Conic,
    /// The lines are concurrent at a finite point.
    Point(Point),
    /// The lines are parallel to the given direction.
    PointAtInfinity(Point),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualFit {
    pub dual: DualConic,
    /// Singular values of the design matrix, descending.
    pub singular_values: Vec<f64>,
    /// Number of singular values above the rank threshold (at most 6).
    pub design_rank: usize,
    /// Rank of the stacked homogeneous line coordinates; 2 means concurrent.
    pub line_rank: usize,
    pub envelope: Envelope,
    /// Largest |dual form| over the input lines.
    pub max_residual: f64,
}

fn sorted_svd(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|a, b| svd.singular_values[*b].total_cmp(&svd.singular_values[*a]));
    let values = idx.iter().map(|i| svd.singular_values[*i]).collect();
    let rows = DMatrix::from_fn(idx.len(), v_t.ncols(), |r, c| v_t[(idx[r], c)]);
    (values, rows)
}

/// Fits the dual conic minimizing the sum of squared dual-form values over
/// the unit homogeneous coordinates of `lines`.
///
/// A concurrent family is reported as [`Envelope::Point`] with `line_rank`
/// 2; its dual conic is then the double point `q qᵀ`.
pub fn fit_dual_conic(lines: &[Line]) -> Result<DualFit> {
    if lines.len() < 5 {
        return Err(ConicError::Arity { needed: 5, got: lines.len() });
    }
    let hs: Vec<[f64; 3]> = lines.iter().map(Line::homogeneous).collect();
    // pad with zero rows so the thin SVD still yields all 6 right vectors
    let rows = hs.len().max(6);
    let design = DMatrix::from_fn(rows, 6, |i, j| {
        let Some([u, v, w]) = hs.get(i).copied() else { return 0.0 };
        [u * u, u * v, v * v, u * w, v * w, w * w][j]
    });
    let (singular_values, v_t) = sorted_svd(design);
    let smax = singular_values[0];
    let design_rank = singular_values.iter().filter(|s| **s > RANK_TOL * smax).count();

    let line_mat = DMatrix::from_fn(hs.len().max(3), 3, |i, j| hs.get(i).map_or(0.0, |h| h[j]));
    let (line_sv, line_vt) = sorted_svd(line_mat);
    let line_rank = line_sv.iter().filter(|s| **s > RANK_TOL * line_sv[0]).count();

    let (dual, envelope) = if line_rank <= 2 {
        let q = Vector3::new(line_vt[(2, 0)], line_vt[(2, 1)], line_vt[(2, 2)]);
        let env = if q.z.abs() > RANK_TOL * q.norm() {
            Envelope::Point(Point::new(q.x / q.z, q.y / q.z))
        } else {
            Envelope::PointAtInfinity(Point::new(q.x, q.y).unit())
        };
        let m: Matrix3<f64> = q * q.transpose();
        (DualConic::from_matrix(&m), env)
    } else {
        let c: Vec<f64> = (0..6).map(|j| v_t[(5, j)]).collect();
        (DualConic::new([c[0], c[1], c[2], c[3], c[4], c[5]]), Envelope::Conic)
    };
    let max_residual = lines.iter().map(|l| dual.tangency_residual(l).abs()).fold(0.0, f64::max);
    Ok(DualFit { dual, singular_values, design_rank, line_rank, envelope, max_residual })
}
