//! Hilbert-transform pairs, the spectral density S(x) = (1/π)·f/((x-g)²+f²),
//! and adaptive quadrature of its integral over the real line.
//!
//! The catalog of analytic pairs, the principal-value and FFT-grid numerical
//! transforms, the peak-aware spectral integrator, and the sweep/threshold
//! experiments live in their own modules; the most used types are re-exported
//! at the crate root.

pub mod catalog;
pub mod dawson;
pub mod experiments;
pub mod hilbert;
pub mod quadrature;
pub mod roots;
pub mod spectral;

pub use catalog::{
    CatalogError, CatalogFamily, DecayClass, FamilyId, Parity, Support, TransformPair,
};
pub use dawson::dawson_scaled;
pub use experiments::{
    ComparisonRow, ExperimentError, FamilyShape, SweepPoint, SweepResult, TableComparison,
    detect_threshold, reproduce_all, run_example, sum_decomposition, sweep_alpha,
};
pub use hilbert::{
    GridFunction, HilbertError, PvEval, PvWindow, TailModel, hilbert_grid, hilbert_pv,
    hilbert_pv_pair,
};
pub use quadrature::{DomainMapping, QuadResult, QuadratureError, QuadratureSpec};
pub use spectral::{
    Peak, SpectralReport, SpectralValue, locate_peaks, spectral_density, spectral_integral,
    spectral_integral_half_line,
};
