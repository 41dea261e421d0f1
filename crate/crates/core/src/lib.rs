//! Sharp constants for sup-norm inequalities between monic polynomials and
//! their monic factors on compact planar sets.
//!
//! For a compact set `E` with positive logarithmic capacity, every monic
//! polynomial `p` of degree `n` and every monic factor `q` of `p` satisfy
//! `‖q‖_E ≤ C_E^n ‖p‖_E`. The crate computes the asymptotically best `C_E`
//! from the equilibrium measure of `E`, provides closed forms for disks and
//! segments, and reproduces the Fekete-polynomial construction that shows
//! the constant cannot be lowered.
//!
//! Data-parallel inner loops (candidate scans, grid evaluation, sweeps) run
//! on rayon when the `parallel` feature is enabled and fall back to plain
//! iterators otherwise; results are identical either way.

pub mod constant;
pub mod error;
pub mod exec;
pub mod fekete;
pub mod polynomials;
pub mod potential;
pub mod quadrature;
pub mod sets;

pub use constant::{
    borwein_bound, borwein_limit, constant_diam_shortcut, constant_disk, constant_general,
    constant_for_set, constant_general_detailed, constant_segment, FactorConstantResult, GeneralDiagnostics,
    Method, ObjectiveDerivative,
    SegmentObjective,
};
pub use error::{Error, Result};
pub use fekete::{
    capacity_via_norm, fekete_disk, fekete_for, fekete_polynomial, fekete_segment, leja_points,
    sharpness_experiment, FeketeEnsemble, SharpnessRow,
};
pub use num_complex::Complex64;
pub use polynomials::{monic_chebyshev, MonicPolynomial, SupNorm};
pub use potential::{
    equilibrium_disk, equilibrium_for, equilibrium_from_fekete, equilibrium_segment,
    EquilibriumMeasure, GreenValue, LogPotential, MeasureSource, Truncation,
};
pub use sets::{CompactSet, Geometry, SetKind};
