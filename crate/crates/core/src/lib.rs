//! ISAR image formation and radar cross section extraction.
//!
//! This crate images turntable RCS measurements and extracts per-scatterer
//! RCS values from the images. The measurement model is a matrix-free linear
//! operator that propagates isotropic point sources on a planar grid to
//! complex RCS amplitudes sampled over frequency and azimuth angle. On top of
//! that model it provides:
//!
//! - **Backprojection** imaging (adjoint of the forward operator) with an
//!   optional mean-normalized 2D Hann window ([`backprojection`]).
//! - A **basis pursuit denoise** solver for the sparse imaging problem
//!   `minimize ‖W ∘ x‖₁ subject to ‖Ax − y‖₂ ≤ κ`, implemented as Pareto
//!   root finding over spectral projected gradient LASSO subproblems
//!   ([`bpdn`]).
//! - **Iterative smooth reweighting**: repeated BPDN solves with weights
//!   derived from a spatially smoothed magnitude of the previous solution,
//!   which collects scattering energy into point clusters ([`isr`]).
//! - **RCS extraction** by image gating and coherent re-propagation,
//!   including the two-point resolution experiment and the rotating-placement
//!   statistical sweep ([`extraction`]).
//! - CSV readers/writers for measurement data, image rasters, peak lists,
//!   sweep results, and solver iteration logs ([`io`]).
//!
//! All operations are deterministic: repeated runs on identical inputs
//! produce identical results regardless of thread count.

pub mod backprojection;
pub mod bpdn;
pub mod error;
pub mod extraction;
pub mod io;
pub mod isr;
pub mod projection;
pub mod signal_model;

pub use error::{Error, Result};

/// Complex sample type used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Speed of light in vacuum, m/s (exact).
pub const C0: f64 = 299_792_458.0;

/// Power ratio in dB relative to 1 m²; `dbsm(0)` is `-inf`.
pub fn dbsm(sigma_m2: f64) -> f64 {
    10.0 * sigma_m2.log10()
}

/// Inverse of [`dbsm`].
pub fn dbsm_to_m2(value_db: f64) -> f64 {
    10f64.powf(value_db / 10.0)
}
