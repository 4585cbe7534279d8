use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::{seed_element, step, ChainElement, ChainError, Orientation, Result, Word};
use crate::geom::{wrap_pi, Annulus};
use crate::tol;

/// A completed chain `u₁, …, uₙ₊₁`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRun {
    pub word: Word,
    pub elements: Vec<ChainElement>,
    /// `progress(uₙ₊₁) − progress(u₁)`, wrapped to `(−π, π]`.
    pub defect: f64,
    /// Radius mismatch between `uₙ₊₁` and `u₁` for circle words, else 0.
    pub radius_defect: f64,
    pub closed: bool,
}

impl ChainRun {
    pub fn closed_within(&self, tol: f64, scale: f64) -> bool {
        self.defect.abs() < tol && self.radius_defect <= tol * scale
    }
}

/// Builds `u₂, …` from `seed` as far as possible.
///
/// Returns the elements produced and the error that stopped the run, if any.
pub fn trace_chain(
    a: &Annulus,
    w: &Word,
    seed: ChainElement,
    orientation: Orientation,
) -> (Vec<ChainElement>, Option<ChainError>) {
    let mut elems = vec![seed];
    if seed.letter() != w.first() {
        return (elems, Some(ChainError::LetterMismatch { seed: seed.letter(), first: w.first() }));
    }
    for i in 1..=w.len() {
        let prev = elems[i - 1];
        let before = if i >= 2 { Some(elems[i - 2]) } else { None };
        match step(a, &prev, before.as_ref(), w.letter(i), orientation) {
            Ok(e) => elems.push(e),
            Err(e) => return (elems, Some(e.at(i - 1))),
        }
    }
    (elems, None)
}

pub fn run_chain_oriented(
    a: &Annulus,
    w: &Word,
    seed: ChainElement,
    orientation: Orientation,
) -> Result<ChainRun> {
    let (elements, err) = trace_chain(a, w, seed, orientation);
    if let Some(e) = err {
        return Err(e);
    }
    let first = elements[0];
    let last = elements[w.len()];
    let defect = wrap_pi(last.progress() - first.progress());
    let radius_defect = match (first.circle(), last.circle()) {
        (Some(c1), Some(c2)) => (c1.radius - c2.radius).abs(),
        _ => 0.0,
    };
    let mut run = ChainRun { word: w.clone(), elements, defect, radius_defect, closed: false };
    run.closed = run.closed_within(tol::CLOSURE, a.outer_radius());
    Ok(run)
}

/// Runs the chain for `w` from `seed`, advancing counterclockwise first.
pub fn run_chain(a: &Annulus, w: &Word, seed: ChainElement) -> Result<ChainRun> {
    run_chain_oriented(a, w, seed, Orientation::Ccw)
}

/// Closure defect of the chain for `w` seeded at contact angle `theta`.
pub fn monodromy_defect(a: &Annulus, w: &Word, theta: f64) -> Result<f64> {
    let seed = seed_element(a, w.first(), theta)?;
    Ok(run_chain(a, w, seed)?.defect)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureVerdict {
    ClosedEverywhere,
    ClosedNowhere,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub verdict: ClosureVerdict,
    pub max_abs_defect: f64,
    pub min_abs_defect: f64,
    pub defects: Vec<f64>,
}

/// Samples the defect at `grid` equally spaced seed angles.
///
/// Closed everywhere when every `|defect| < tol`, closed nowhere when every
/// `|defect| > 10·tol`.
pub fn is_closure_config(a: &Annulus, w: &Word, grid: usize, tol: f64) -> Result<ClosureReport> {
    let grid = grid.max(1);
    let defects = (0..grid)
        .into_par_iter()
        .map(|k| monodromy_defect(a, w, TAU * k as f64 / grid as f64))
        .collect::<Result<Vec<f64>>>()?;
    let max_abs = defects.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let min_abs = defects.iter().fold(f64::INFINITY, |m, d| m.min(d.abs()));
    let verdict = if max_abs < tol {
        ClosureVerdict::ClosedEverywhere
    } else if min_abs > 10.0 * tol {
        ClosureVerdict::ClosedNowhere
    } else {
        ClosureVerdict::Mixed
    };
    Ok(ClosureReport { verdict, max_abs_defect: max_abs, min_abs_defect: min_abs, defects })
}
