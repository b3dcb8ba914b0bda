//! Numerical Hilbert transforms.
//!
//! Two independent routes: [`hilbert_pv`] evaluates the principal-value
//! integral pointwise by singularity subtraction and adaptive quadrature,
//! while [`hilbert_grid`] transforms a sampled function through an FFT
//! spectral multiplier. Each serves as a cross-validation oracle for the
//! other and for the catalog closed forms.

mod grid;
mod pv;

pub use grid::{GridFunction, hilbert_grid};
pub use pv::{PvEval, PvWindow, TailModel, hilbert_pv, hilbert_pv_pair};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("grid needs at least 8 samples, got {0}")]
    GridTooSmall(usize),
    #[error("grid step must be positive and finite")]
    BadGridStep,
    #[error("grid values must be finite")]
    NonFiniteSample,
    #[error("numerical transform refused for non-decaying input; use the closed form")]
    NonDecayingInput,
    #[error("principal-value window is invalid: require 0 < half_width < tail_bound")]
    BadWindow,
}
