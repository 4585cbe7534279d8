use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::{Result, SearchError, ZeroLocus};
use crate::chain::{is_closure_config, ClosureVerdict, Word};
use crate::geom::Annulus;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedPoint {
    pub r: f64,
    pub d: f64,
    pub verdict: ClosureVerdict,
    pub max_abs_defect: f64,
    /// Seed angle of the largest defect when not closed everywhere.
    pub counterexample_theta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub word: Word,
    pub thetas: usize,
    pub points: Vec<CertifiedPoint>,
    pub certified: bool,
}

impl Certification {
    pub fn counterexamples(&self) -> impl Iterator<Item = &CertifiedPoint> {
        self.points.iter().filter(|p| p.verdict != ClosureVerdict::ClosedEverywhere)
    }
}

fn certify_point(w: &Word, r: f64, d: f64, thetas: usize) -> Result<CertifiedPoint> {
    let a = Annulus::from_radii(1.0, r, d).map_err(crate::chain::ChainError::from)?;
    let rep = is_closure_config(&a, w, thetas, tol::CERTIFY)?;
    let counterexample_theta = (rep.verdict != ClosureVerdict::ClosedEverywhere).then(|| {
        let k = rep
            .defects
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
            .map_or(0, |(k, _)| k);
        TAU * k as f64 / thetas as f64
    });
    Ok(CertifiedPoint { r, d, verdict: rep.verdict, max_abs_defect: rep.max_abs_defect, counterexample_theta })
}

/// Certifies at most `max_points` evenly spread locus points.
pub fn certify_sample(w: &Word, locus: &ZeroLocus, thetas: usize, max_points: usize) -> Result<Certification> {
    let all: Vec<_> = locus.points().collect();
    if all.is_empty() {
        return Err(SearchError::EmptyLocus);
    }
    let m = max_points.clamp(1, all.len());
    let picked: Vec<_> = (0..m).map(|k| all[k * all.len() / m]).collect();
    let points = picked
        .par_iter()
        .map(|p| certify_point(w, p.r, p.d, thetas))
        .collect::<Result<Vec<_>>>()?;
    let certified = points.iter().all(|p| p.verdict == ClosureVerdict::ClosedEverywhere);
    Ok(Certification { word: w.clone(), thetas, points, certified })
}

/// Runs the all-or-nothing check at every locus point.
pub fn certify_closure_sequence(w: &Word, locus: &ZeroLocus, thetas: usize) -> Result<Certification> {
    certify_sample(w, locus, thetas, usize::MAX)
}

impl ZeroLocus {
    /// Copies certification flags onto matching points.
    pub fn mark(&mut self, cert: &Certification) {
        for p in self.branches.iter_mut().flatten() {
            if let Some(c) = cert.points.iter().find(|c| c.r == p.r && c.d == p.d) {
                p.certified = Some(c.verdict == ClosureVerdict::ClosedEverywhere);
            }
        }
    }
}
