//! Words over `{c, s}` as chain scripts.
//!
//! A chain `u₁, …, uₙ₊₁` alternates inscribed circles (`c`) and chords of
//! the outer circle tangent to the inner one (`s`) as the word dictates,
//! with `aₙ₊₁ = a₁`. Consecutive elements touch (a chord and a chord share
//! an endpoint), and every interior element has its two neighbor contacts
//! on opposite sides of its contacts with `ω` and `k`.
//!
//! Every element touches `ω` exactly once; the polar angle of that contact
//! about `I` is the element's progress coordinate, and the closure defect
//! of a run is the wrapped progress difference between `uₙ₊₁` and `u₁`.

mod element;
mod run;
mod step;
mod word;

pub use element::ChainElement;
pub use run::{
    is_closure_config, monodromy_defect, run_chain, run_chain_oriented, trace_chain, ChainRun,
    ClosureReport, ClosureVerdict,
};
pub use step::{seed_element, step, Orientation};
pub use word::{Letter, Word, WordError};

use thiserror::Error;

use crate::geom::GeomError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error("no successor satisfies the separation condition at element {index}")]
    DeadEnd { index: usize },
    #[error("contact points coincide within tolerance at element {index}")]
    Tie { index: usize },
    #[error("seed letter {seed} does not match the word's first letter {first}")]
    LetterMismatch { seed: Letter, first: Letter },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl ChainError {
    pub(crate) fn at(self, index: usize) -> Self {
        match self {
            ChainError::DeadEnd { .. } => ChainError::DeadEnd { index },
            ChainError::Tie { .. } => ChainError::Tie { index },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, ChainError>;
