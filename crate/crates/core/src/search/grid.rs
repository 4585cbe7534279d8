use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Result, SearchError};
use crate::chain::{monodromy_defect, Word};
use crate::geom::Annulus;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Cell {
    Defect(f64),
    /// Invalid annulus or no chain at this cell.
    Dead,
}

impl Cell {
    pub fn value(self) -> Option<f64> {
        match self {
            Cell::Defect(x) => Some(x),
            Cell::Dead => None,
        }
    }
}

/// Defect at `θ₀ = 0` over `(r, d)` with `R = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectGrid {
    pub word: Word,
    pub r_axis: Vec<f64>,
    pub d_axis: Vec<f64>,
    /// Row-major in `r`: cell `(i, j)` is at `i * d_axis.len() + j`.
    pub cells: Vec<Cell>,
}

impl DefectGrid {
    pub fn nr(&self) -> usize {
        self.r_axis.len()
    }

    pub fn nd(&self) -> usize {
        self.d_axis.len()
    }

    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.cells[i * self.nd() + j]
    }

    pub fn r_step(&self) -> f64 {
        self.r_axis[1] - self.r_axis[0]
    }

    pub fn d_step(&self) -> f64 {
        self.d_axis[1] - self.d_axis[0]
    }
}

/// `r` at cell midpoints of `(0, 1)`.
pub fn r_axis(nr: usize) -> Vec<f64> {
    (0..nr).map(|i| (i as f64 + 0.5) / nr as f64).collect()
}

/// `d` from 0 in steps of `1/nd`.
pub fn d_axis(nd: usize) -> Vec<f64> {
    (0..nd).map(|j| j as f64 / nd as f64).collect()
}

pub(crate) fn defect_at(w: &Word, r: f64, d: f64) -> Option<f64> {
    if d + r >= 1.0 {
        return None;
    }
    let a = Annulus::from_radii(1.0, r, d).ok()?;
    monodromy_defect(&a, w, 0.0).ok()
}

pub fn scan_defect(w: &Word, nr: usize, nd: usize) -> Result<DefectGrid> {
    if nr < 16 || nd < 16 {
        return Err(SearchError::GridTooSmall { nr, nd });
    }
    let (ra, da) = (r_axis(nr), d_axis(nd));
    let cells = (0..nr * nd)
        .into_par_iter()
        .map(|k| match defect_at(w, ra[k / nd], da[k % nd]) {
            Some(x) => Cell::Defect(x),
            None => Cell::Dead,
        })
        .collect();
    Ok(DefectGrid { word: w.clone(), r_axis: ra, d_axis: da, cells })
}
