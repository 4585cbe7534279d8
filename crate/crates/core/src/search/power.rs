use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{certify_sample, scan_defect, trace_zero_locus, Certification, DefectGrid, Result};
use crate::chain::{is_closure_config, ClosureVerdict, Word};
use crate::geom::Annulus;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerReport {
    pub word: Word,
    pub power: usize,
    pub power_word: Word,
    /// `None` when no locus was found at the grid resolution.
    pub base: Option<Certification>,
    pub powered: Option<Certification>,
    /// Whether every sampled point of the base locus closes for the power word.
    pub base_in_power: Option<bool>,
}

/// Compares the closure locus of `w` with that of `wⁿ` on the same grid.
pub fn power_word_test(
    w: &Word,
    n: usize,
    grid: &DefectGrid,
    thetas: usize,
    max_points: usize,
) -> Result<PowerReport> {
    let power_word = w.power(n);
    let base_locus = trace_zero_locus(w, grid);
    let base = if base_locus.is_empty() {
        None
    } else {
        Some(certify_sample(w, &base_locus, thetas, max_points)?)
    };
    let powered = if n <= 1 {
        base.clone()
    } else {
        let g = scan_defect(&power_word, grid.nr(), grid.nd())?;
        let locus = trace_zero_locus(&power_word, &g);
        if locus.is_empty() {
            None
        } else {
            Some(certify_sample(&power_word, &locus, thetas, max_points)?)
        }
    };
    let base_in_power = match &base {
        None => None,
        Some(b) => {
            let ok = b
                .points
                .par_iter()
                .map(|p| -> Result<bool> {
                    let a = Annulus::from_radii(1.0, p.r, p.d).map_err(crate::chain::ChainError::from)?;
                    let rep = is_closure_config(&a, &power_word, thetas, tol::CERTIFY)?;
                    Ok(rep.verdict == ClosureVerdict::ClosedEverywhere)
                })
                .collect::<Result<Vec<bool>>>()?;
            Some(ok.into_iter().all(|x| x))
        }
    };
    Ok(PowerReport { word: w.clone(), power: n, power_word, base, powered, base_in_power })
}
