//! Parameter-space exploration of closure words.
//!
//! All scans fix `R = 1` and seed chains at `θ₀ = 0`. Certification then
//! checks independence of the seed on a θ-grid.

mod certify;
mod grid;
mod locus;
mod power;
mod relation;
mod words;

pub use certify::{certify_closure_sequence, certify_sample, Certification, CertifiedPoint};
pub use grid::{scan_defect, Cell, DefectGrid};
pub use locus::{trace_zero_locus, LocusPoint, ZeroLocus};
pub use power::{power_word_test, PowerReport};
pub use relation::{fit_relation, relation_basis, Monomial, RelationFit};
pub use words::{canonical_word, enumerate_words};

use thiserror::Error;

use crate::chain::ChainError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("grid needs at least 16 samples per axis, got {nr}x{nd}")]
    GridTooSmall { nr: usize, nd: usize },
    #[error("maximum word length must be in 3..=16, got {0}")]
    MaxLength(usize),
    #[error("locus has no points")]
    EmptyLocus,
    #[error("degree {degree} fit needs at least {needed} locus points, got {got}")]
    TooFewPoints { degree: usize, needed: usize, got: usize },
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

pub type Result<T> = std::result::Result<T, SearchError>;

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T, F>(workers: usize, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}
