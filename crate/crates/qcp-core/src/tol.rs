//! Central numerical tolerances.
//!
//! Every approximate comparison in the crate goes through one of these
//! constants so the whole suite can be audited (and tightened) in one place.

/// Per-entry deviation allowed when checking U†U = I.
pub const UNITARITY: f64 = 1e-9;

/// Per-entry deviation allowed when checking Gram matrices against I.
pub const ORTHONORMALITY: f64 = 1e-9;

/// Max per-amplitude deviation allowed when rebuilding a state from a
/// decomposition (Schmidt form, certificate form).
pub const RECONSTRUCTION: f64 = 1e-9;

/// Relative eigenvalue cutoff for pseudo-inverse square roots.
pub const PINV_CUTOFF_REL: f64 = 1e-10;

/// Deviation allowed on vector norms.
pub const NORMALIZATION: f64 = 1e-9;

/// Most negative eigenvalue tolerated before a matrix is rejected as not PSD.
pub const PSD_MIN_EIGENVALUE: f64 = -1e-9;

/// Per-entry deviation allowed when checking that POVM elements sum to I.
pub const POVM_COMPLETENESS: f64 = 1e-8;

/// Residual allowed when a certificate reconstruction is compared against
/// the executor state, and on the relative trace identity.
pub const CERT_RESIDUAL: f64 = 1e-8;

/// Slack allowed when checking a success probability against its bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// A bound check counts as tight when the margin is at most this.
pub const TIGHTNESS: f64 = 1e-6;

/// Schmidt weights (squared coefficients) at or below this are dropped.
/// Sits well above the ~1e-16 noise floor of the Gram eigendecomposition
/// while keeping every weight down to 1e-14 (coefficient 1e-7).
pub const SCHMIDT_DROP: f64 = 1e-14;
