use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bose-Einstein occupation `N = 1/(e^{Δ/T} − 1)` with `k_B = 1`.
pub fn thermal_occupation(delta_freq: f64, temperature: f64) -> Result<f64> {
    if !(delta_freq > 0.0) {
        return Err(Error::Domain(format!(
            "frequency must be positive, got {delta_freq}"
        )));
    }
    if !(temperature >= 0.0) {
        return Err(Error::Domain(format!(
            "temperature must be non-negative, got {temperature}"
        )));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (delta_freq / temperature).exp_m1())
}

/// Thermal state of the bath at the qubit frequency, stored as the
/// polarisation `R = tanh(Δ/2T) = 1/(1 + 2N)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BathThermal {
    ratio_r: f64,
}

impl BathThermal {
    pub fn from_ratio(r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::Domain(format!("R must lie in (0, 1], got {r}")));
        }
        Ok(Self { ratio_r: r })
    }

    pub fn from_occupation(n: f64) -> Result<Self> {
        if !(n >= 0.0) || !n.is_finite() {
            return Err(Error::Domain(format!("occupation must be >= 0, got {n}")));
        }
        Ok(Self {
            ratio_r: 1.0 / (1.0 + 2.0 * n),
        })
    }

    /// From the bath temperature, in the same units as `delta_freq`.
    pub fn from_temperature(delta_freq: f64, temperature: f64) -> Result<Self> {
        thermal_occupation(delta_freq, temperature)?;
        if temperature == 0.0 {
            return Ok(Self { ratio_r: 1.0 });
        }
        Self::from_ratio((delta_freq / (2.0 * temperature)).tanh())
    }

    pub fn zero_temperature() -> Self {
        Self { ratio_r: 1.0 }
    }

    pub fn ratio(&self) -> f64 {
        self.ratio_r
    }

    /// `N(Δ) = (1/R − 1)/2`.
    pub fn occupation(&self) -> f64 {
        0.5 * (1.0 / self.ratio_r - 1.0)
    }

    /// `θ = Δ/2T = artanh R`; infinite at zero temperature.
    pub fn theta(&self) -> f64 {
        if self.ratio_r >= 1.0 {
            f64::INFINITY
        } else {
            self.ratio_r.atanh()
        }
    }

    /// `coth(ω/2T)` expressed through `θ`, with `Δ` the reference frequency.
    pub fn coth(&self, omega: f64, delta_freq: f64) -> f64 {
        let arg = omega * self.theta() / delta_freq;
        1.0 / arg.tanh()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_temperature_has_no_occupation() {
        assert_eq!(thermal_occupation(1.0, 0.0).unwrap(), 0.0);
        assert_eq!(BathThermal::from_temperature(1.0, 0.0).unwrap().ratio(), 1.0);
    }

    #[test]
    fn occupation_from_ratio() {
        assert!((BathThermal::from_ratio(0.5).unwrap().occupation() - 0.5).abs() < 1e-15);
        let n = BathThermal::from_ratio(0.9).unwrap().occupation();
        assert!((n - 0.055_555_555_555_555_6).abs() < 1e-12);
    }

    #[test]
    fn ratio_and_occupation_agree() {
        for r in [0.1, 0.5, 0.77, 0.9, 0.999, 1.0] {
            let t = BathThermal::from_ratio(r).unwrap();
            let back = BathThermal::from_occupation(t.occupation()).unwrap();
            assert!((back.ratio() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn temperature_route_matches_occupation() {
        let (delta, temp) = (1.3, 0.7);
        let n = thermal_occupation(delta, temp).unwrap();
        let t = BathThermal::from_temperature(delta, temp).unwrap();
        assert!((t.occupation() - n).abs() < 1e-12);
        assert!((t.coth(delta, delta) - (delta / (2.0 * temp)).tanh().recip()).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(thermal_occupation(0.0, 1.0).is_err());
        assert!(thermal_occupation(-1.0, 1.0).is_err());
        assert!(BathThermal::from_ratio(0.0).is_err());
        assert!(BathThermal::from_ratio(1.1).is_err());
        assert!(BathThermal::from_occupation(-0.1).is_err());
    }

    #[test]
    fn coth_at_zero_temperature_is_one() {
        assert_eq!(BathThermal::zero_temperature().coth(0.3, 1.0), 1.0);
    }
}
