use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::bessel::bessel_j0;
use crate::error::{Error, Result};

/// Dimensionality of the bath the qubits couple to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum BathDimension {
    One,
    Two,
    Three,
}

impl BathDimension {
    pub fn as_u8(self) -> u8 {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
        }
    }

    /// Spatial correlation `f(x)`: `cos x`, `J₀(x)` or `sin x / x`.
    pub fn correlation(self, x: f64) -> f64 {
        match self {
            Self::One => x.cos(),
            Self::Two => bessel_j0(x),
            Self::Three => sinc(x),
        }
    }
}

impl TryFrom<u8> for BathDimension {
    type Error = Error;

    fn try_from(d: u8) -> Result<Self> {
        match d {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            _ => Err(Error::Domain(format!("bath dimension must be 1, 2 or 3, got {d}"))),
        }
    }
}

impl From<BathDimension> for u8 {
    fn from(d: BathDimension) -> u8 {
        d.as_u8()
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

pub fn spatial_correlation(x: f64, dimension: u8) -> Result<f64> {
    let d = BathDimension::try_from(dimension)?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("correlation argument must be >= 0, got {x}")));
    }
    Ok(d.correlation(x))
}

/// Inverse dispersion relation `κ(ω)`.
#[derive(Clone)]
pub enum Dispersion {
    /// `κ(ω) = ω / speed`.
    Linear { speed: f64 },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Dispersion {
    pub fn wavenumber(&self, omega: f64) -> f64 {
        match self {
            Self::Linear { speed } => omega / speed,
            Self::Custom(f) => f(omega),
        }
    }
}

impl fmt::Debug for Dispersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linear { speed } => f.debug_struct("Linear").field("speed", speed).finish(),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BathGeometry {
    pub separation: f64,
    pub dimension: BathDimension,
    pub dispersion: Dispersion,
}

impl BathGeometry {
    pub fn new(separation: f64, dimension: BathDimension, dispersion: Dispersion) -> Result<Self> {
        if !(separation >= 0.0) {
            return Err(Error::Domain(format!("separation must be >= 0, got {separation}")));
        }
        Ok(Self {
            separation,
            dimension,
            dispersion,
        })
    }

    /// Linear dispersion with `κ(Δ) d = phase`, i.e. separation measured in
    /// units of `1/κ(Δ)`.
    pub fn from_phase(phase: f64, dimension: BathDimension, delta_freq: f64) -> Result<Self> {
        Self::new(phase, dimension, Dispersion::Linear { speed: delta_freq })
    }

    /// `κ(ω) d`.
    pub fn phase(&self, omega: f64) -> f64 {
        self.dispersion.wavenumber(omega) * self.separation
    }

    /// `f(κ(ω) d)`.
    pub fn correlation(&self, omega: f64) -> f64 {
        self.dimension.correlation(self.phase(omega).abs())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaApproximation {
    /// `δ = 1 − f(κ(Δ) d)`.
    #[default]
    Exact,
    /// `δ ≈ (κ(Δ) d)² / 2D`.
    SmallSeparation,
}

/// Correlation deficit `δ = 1 − f(κ(Δ) d)`.
pub fn correlation_delta(geometry: &BathGeometry, delta_freq: f64) -> f64 {
    correlation_delta_with(geometry, delta_freq, DeltaApproximation::Exact)
}

pub fn correlation_delta_with(
    geometry: &BathGeometry,
    delta_freq: f64,
    approximation: DeltaApproximation,
) -> f64 {
    let x = geometry.phase(delta_freq).abs();
    match approximation {
        DeltaApproximation::Exact => 1.0 - geometry.dimension.correlation(x),
        DeltaApproximation::SmallSeparation => {
            x * x / (2.0 * f64::from(geometry.dimension.as_u8()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const DIMS: [BathDimension; 3] = [BathDimension::One, BathDimension::Two, BathDimension::Three];

    #[test]
    fn coincident_qubits_are_fully_correlated() {
        for d in 1..=3 {
            assert_eq!(spatial_correlation(0.0, d).unwrap(), 1.0);
        }
    }

    #[test]
    fn exact_trig_values() {
        assert!((spatial_correlation(PI, 1).unwrap() + 1.0).abs() < 1e-15);
        assert!(spatial_correlation(PI, 3).unwrap().abs() < 1e-15);
        assert!(spatial_correlation(2.404826, 2).unwrap().abs() < 1e-6);
    }

    #[test]
    fn domain_errors() {
        assert!(spatial_correlation(1.0, 0).is_err());
        assert!(spatial_correlation(1.0, 4).is_err());
        assert!(spatial_correlation(-1.0, 1).is_err());
    }

    #[test]
    fn zero_separation_has_zero_delta() {
        for dim in DIMS {
            let g = BathGeometry::from_phase(0.0, dim, 1.0).unwrap();
            assert_eq!(correlation_delta(&g, 1.0), 0.0);
        }
    }

    #[test]
    fn small_separation_values() {
        let g = BathGeometry::from_phase(0.25, BathDimension::One, 25.0).unwrap();
        let approx = correlation_delta_with(&g, 25.0, DeltaApproximation::SmallSeparation);
        assert!((approx - 0.03125).abs() < 1e-15);
        let exact = correlation_delta(&g, 25.0);
        assert!((exact - (1.0 - 0.25f64.cos())).abs() < 1e-15);
        assert!((exact - 0.031088).abs() < 1e-6);
    }

    #[test]
    fn approximation_within_five_percent_for_small_phase() {
        for dim in DIMS {
            for k in 1..=50 {
                let x = 0.01 * k as f64;
                let g = BathGeometry::from_phase(x, dim, 1.0).unwrap();
                let exact = correlation_delta(&g, 1.0);
                let approx = correlation_delta_with(&g, 1.0, DeltaApproximation::SmallSeparation);
                assert!((approx - exact).abs() <= 0.05 * exact, "D={dim:?} x={x}");
            }
        }
    }

    #[test]
    fn independent_baths_at_large_separation() {
        for dim in [BathDimension::Two, BathDimension::Three] {
            let g = BathGeometry::from_phase(1e3, dim, 1.0).unwrap();
            assert!((correlation_delta(&g, 1.0) - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn one_dimensional_delta_is_periodic() {
        let g = BathGeometry::from_phase(PI, BathDimension::One, 1.0).unwrap();
        assert!((correlation_delta(&g, 1.0) - 2.0).abs() < 1e-15);
        let g = BathGeometry::from_phase(2.0 * PI, BathDimension::One, 1.0).unwrap();
        assert!(correlation_delta(&g, 1.0).abs() < 1e-15);
    }

    #[test]
    fn correlation_bounded_and_delta_continuous() {
        for dim in DIMS {
            let mut prev = correlation_delta(&BathGeometry::from_phase(0.0, dim, 1.0).unwrap(), 1.0);
            for k in 1..=20_000 {
                let x = 1e-3 * k as f64;
                assert!(dim.correlation(x).abs() <= 1.0 + 1e-12);
                let g = BathGeometry::from_phase(x, dim, 1.0).unwrap();
                let d = correlation_delta(&g, 1.0);
                assert!((d - prev).abs() < 2e-3);
                prev = d;
            }
        }
    }

    #[test]
    fn dimension_serialises_as_integer() {
        let d: BathDimension = serde_json::from_str("2").unwrap();
        assert_eq!(d, BathDimension::Two);
        assert_eq!(serde_json::to_string(&BathDimension::Three).unwrap(), "3");
        assert!(serde_json::from_str::<BathDimension>("5").is_err());
    }
}
