use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::spatial::{correlation_delta, BathGeometry};
use super::spectral::SpectralDensity;
use super::thermal::BathThermal;
use crate::error::{Error, Result};

/// Dissipative rates at `ω = ±Δ`.
///
/// `γ₁₁(+Δ) = (N+1)γ₀`, `γ₁₁(−Δ) = Nγ₀` and `γ₁₂(±Δ) = (1−δ)γ₁₁(±Δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateSet {
    pub gamma0: f64,
    pub gamma11_plus: f64,
    pub gamma11_minus: f64,
    pub gamma12_plus: f64,
    pub gamma12_minus: f64,
    pub delta: f64,
}

impl RateSet {
    pub fn new(gamma0: f64, thermal: &BathThermal, delta: f64) -> Result<Self> {
        if !(gamma0 >= 0.0) || !gamma0.is_finite() {
            return Err(Error::InvalidRates(format!("gamma0 must be >= 0, got {gamma0}")));
        }
        if !delta.is_finite() || (1.0 - delta).abs() > 1.0 {
            return Err(Error::InvalidRates(format!(
                "rate matrix not positive semidefinite: |1 - delta| = {} > 1",
                (1.0 - delta).abs()
            )));
        }
        let n = thermal.occupation();
        let plus = (n + 1.0) * gamma0;
        let minus = n * gamma0;
        Ok(Self {
            gamma0,
            gamma11_plus: plus,
            gamma11_minus: minus,
            gamma12_plus: (1.0 - delta) * plus,
            gamma12_minus: (1.0 - delta) * minus,
            delta,
        })
    }

    /// No dissipation at all.
    pub fn zero() -> Self {
        Self {
            gamma0: 0.0,
            gamma11_plus: 0.0,
            gamma11_minus: 0.0,
            gamma12_plus: 0.0,
            gamma12_minus: 0.0,
            delta: 0.0,
        }
    }

    /// `N(Δ)` recovered from the stored rates.
    pub fn occupation(&self) -> f64 {
        if self.gamma0 > 0.0 {
            self.gamma11_minus / self.gamma0
        } else {
            0.0
        }
    }

    /// `[[γ₁₁, γ₁₂], [γ₁₂, γ₁₁]]` at `ω = +Δ` (`positive = true`) or `−Δ`.
    pub fn matrix(&self, positive: bool) -> [[f64; 2]; 2] {
        let (g11, g12) = if positive {
            (self.gamma11_plus, self.gamma12_plus)
        } else {
            (self.gamma11_minus, self.gamma12_minus)
        };
        [[g11, g12], [g12, g11]]
    }

    /// Smallest eigenvalue of both rate matrices.
    pub fn min_rate_eigenvalue(&self) -> f64 {
        (self.gamma11_plus - self.gamma12_plus.abs())
            .min(self.gamma11_minus - self.gamma12_minus.abs())
    }
}

/// Rates from a spectral density: `γ₀ = 2π J(Δ)`, `δ = 1 − f(κ(Δ) d)`.
pub fn build_rates(
    spectral: &SpectralDensity,
    thermal: &BathThermal,
    geometry: &BathGeometry,
    delta_freq: f64,
) -> Result<RateSet> {
    let j = spectral.eval(delta_freq);
    if !(j > 0.0) {
        return Err(Error::Domain(format!(
            "spectral density must be positive at the qubit frequency, J(Δ) = {j}"
        )));
    }
    RateSet::new(2.0 * PI * j, thermal, correlation_delta(geometry, delta_freq))
}
