use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{Result, SearchError, ZeroLocus};

/// `R^big_r · r^r · d^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub big_r: u32,
    pub r: u32,
    pub d: u32,
}

impl Monomial {
    /// Value on the `R = 1` slice.
    pub fn eval(&self, r: f64, d: f64) -> f64 {
        r.powi(self.r as i32) * d.powi(self.d as i32)
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("R", self.big_r), ("r", self.r), ("d", self.d)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Homogeneous degree-`degree` monomials even in `d`, ordered by the
/// dehomogenized degree, then by the power of `d`.
pub fn relation_basis(degree: usize) -> Vec<Monomial> {
    let deg = degree as u32;
    let mut out = Vec::new();
    for g in 0..=deg {
        for b in (0..=g).step_by(2) {
            out.push(Monomial { big_r: deg - g, r: g - b, d: b });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationFit {
    pub degree: usize,
    pub basis: Vec<Monomial>,
    /// Unit norm, largest-magnitude entry positive.
    pub coefficients: Vec<f64>,
    pub singular_values: Vec<f64>,
    /// Number of singular values below `1e-10 · σ_max`.
    pub nullity: usize,
    pub max_residual: f64,
    pub points: usize,
}

impl RelationFit {
    pub fn eval(&self, r: f64, d: f64) -> f64 {
        self.basis.iter().zip(&self.coefficients).map(|(m, c)| c * m.eval(r, d)).sum()
    }
}

/// Least-squares homogeneous polynomial relation through the locus.
pub fn fit_relation(locus: &ZeroLocus, degree: usize) -> Result<RelationFit> {
    let basis = relation_basis(degree);
    let pts: Vec<_> = locus.points().collect();
    let needed = 3 * basis.len();
    if pts.len() < needed {
        return Err(SearchError::TooFewPoints { degree, needed, got: pts.len() });
    }
    let rows = pts.len().max(basis.len());
    let mut m = DMatrix::<f64>::zeros(rows, basis.len());
    for (i, p) in pts.iter().enumerate() {
        for (k, mono) in basis.iter().enumerate() {
            m[(i, k)] = mono.eval(p.r, p.d);
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let smallest = *order.last().expect("non-empty basis");
    let mut coefficients: Vec<f64> = v_t.row(smallest).iter().copied().collect();
    let norm = coefficients.iter().map(|c| c * c).sum::<f64>().sqrt();
    let lead = coefficients.iter().copied().fold(0.0f64, |acc, c| if c.abs() > acc.abs() { c } else { acc });
    let s = lead.signum() / norm;
    coefficients.iter_mut().for_each(|c| *c *= s);
    let top = singular_values[0];
    let nullity = singular_values.iter().filter(|&&x| x <= 1e-10 * top).count();
    let mut fit = RelationFit {
        degree,
        basis,
        coefficients,
        singular_values,
        nullity,
        max_residual: 0.0,
        points: pts.len(),
    };
    fit.max_residual = pts.iter().map(|p| fit.eval(p.r, p.d).abs()).fold(0.0, f64::max);
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_basis_order() {
        let b: Vec<String> = relation_basis(2).iter().map(|m| m.to_string()).collect();
        assert_eq!(b, ["R^2", "R*r", "r^2", "d^2"]);
        assert_eq!(relation_basis(1).len(), 2);
        assert!(relation_basis(4).iter().all(|m| m.d % 2 == 0 && m.big_r + m.r + m.d == 4));
    }
}
