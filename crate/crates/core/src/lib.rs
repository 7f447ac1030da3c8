//! Two qubits in a common, spatially correlated bosonic bath.
//!
//! The reduced dynamics follow a secular Born–Markov master equation whose
//! generator is written as a real 16×16 matrix on the generalised Bloch
//! vector `α_ij = ⟨σ_i ⊗ σ_j⟩`. The crate builds that generator from bath
//! parameters, classifies its spectrum, propagates states exactly and with
//! the long-time analytic approximation, and tracks the Wootters
//! concurrence generated by the dissipator alone.
//!
//! Times are in units of `1/γ₀` wherever the caller sets `γ₀ = 1`; no
//! module except [`iontrap`] handles physical units.

pub mod bath;
pub mod bloch;
pub mod dynamics;
mod error;
pub mod iontrap;
pub mod liouvillian;

pub use error::{Error, Result};
