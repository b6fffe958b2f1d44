//! Relativistic fermions on an ideal Aharonov–Bohm ring.
//!
//! The crate computes the exact Dirac spectrum E_λ R = √(μ² + ν²) with
//! ν = β + λ, the normalized spinors U^±_λ, single-mode currents
//! χ(μ, ν) = ν/√(μ² + ν²) in units of (2πR)⁻¹, and the T = 0 persistent
//! current of an even number of electrons. Each closed form ships with a
//! numerical cross-check: quadrature for scalar products and currents,
//! phase-factor application of the operators for eigen-residuals, and
//! centred differences for the current/energy-derivative identity.

pub mod currents;
pub mod dirac;
pub mod error;
pub mod persistent;
pub mod ring;
pub mod summation;

pub use currents::{chi, partial_current, superposition_current, ModeCurrent};
pub use dirac::{build_spinor, solve_energy, Polarization, RingSpinor, SuperpositionState};
pub use error::{Result, RingError};
pub use persistent::{
    c_sweep, j_kernel, pair_sum_exact, persistent_current, OccupationSpec, PersistentResult,
    SweepResult,
};
pub use ring::{half_odd_range, mu_from_physical, HalfOddInteger, PhysicalRingSpec, RingConfig};
