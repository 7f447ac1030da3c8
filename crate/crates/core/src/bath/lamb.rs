//! Lamb-shift coefficients from principal-value integrals over `J(ω)`.

use serde::{Deserialize, Serialize};

use super::quadrature::{integrate, principal_value};
use super::spatial::BathGeometry;
use super::spectral::SpectralDensity;
use super::thermal::BathThermal;
use crate::error::{Error, Result};

/// Relative convergence target for both integrals.
pub const LAMB_REL_TOL: f64 = 1e-6;

/// `H_LS = A(σ_x¹ + σ_x²) + B(σ_z¹σ_z² + σ_y¹σ_y²)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LambShift {
    pub a: f64,
    pub b: f64,
}

/// `A = 2 PV∫₀^∞ J(ω) coth(ω/2T) Δ/(Δ² − ω²) dω`.
///
/// `A` carries no separation dependence.
pub fn lamb_a(spectral: &SpectralDensity, thermal: &BathThermal, delta_freq: f64) -> Result<f64> {
    let h = |w: f64| 2.0 * spectral.eval(w) * thermal.coth(w, delta_freq) * delta_freq / (delta_freq + w);
    pv_over_support(spectral, h, delta_freq, delta_freq)
}

/// `B = PV∫₀^∞ J(ω) f(κ(ω)d) ω/(Δ² − ω²) dω`.
pub fn lamb_b(spectral: &SpectralDensity, geometry: &BathGeometry, delta_freq: f64) -> Result<f64> {
    let h = |w: f64| spectral.eval(w) * geometry.correlation(w) * w / (delta_freq + w);
    let scale = delta_freq / geometry.phase(delta_freq).abs().max(1.0);
    pv_over_support(spectral, h, delta_freq, scale)
}

pub fn lamb_shift_coefficients(
    spectral: &SpectralDensity,
    thermal: &BathThermal,
    geometry: &BathGeometry,
    delta_freq: f64,
) -> Result<LambShift> {
    if !(delta_freq > 0.0) {
        return Err(Error::Domain(format!("Δ must be positive, got {delta_freq}")));
    }
    Ok(LambShift {
        a: lamb_a(spectral, thermal, delta_freq)?,
        b: lamb_b(spectral, geometry, delta_freq)?,
    })
}

/// `PV ∫₀^U h(ω)/(Δ − ω) dω` with `U` the end of the spectral support.
fn pv_over_support<H: Fn(f64) -> f64>(
    spectral: &SpectralDensity,
    h: H,
    delta_freq: f64,
    scale: f64,
) -> Result<f64> {
    if spectral.is_identically_zero() {
        return Ok(0.0);
    }
    let upper = spectral.support_end().ok_or_else(|| {
        Error::Numerical(
            "spectral density has no finite cutoff; the Lamb-shift integrals diverge".into(),
        )
    })?;
    let integrand = |w: f64| h(w) / (delta_freq - w);
    let wrap = |e: Error| match e {
        Error::Numerical(msg) => Error::Numerical(format!(
            "Lamb-shift quadrature failed (Δ = {delta_freq}, support end {upper}): {msg}"
        )),
        other => other,
    };
    if upper <= delta_freq {
        // The pole lies outside the support.
        return integrate(integrand, 0.0, upper, 0.0, 1e-12)
            .map(|r| r.value)
            .map_err(wrap);
    }
    principal_value(&h, delta_freq, 0.0, upper, scale, LAMB_REL_TOL * 1e-2)
        .map(|pv| pv.value)
        .map_err(wrap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::spatial::BathDimension;
    use crate::bath::spectral::CutoffForm;

    fn ohmic() -> SpectralDensity {
        SpectralDensity::ohmic(0.1, 1.0)
    }

    #[test]
    fn no_bath_no_shift() {
        let j = SpectralDensity::ohmic(0.0, 1.0);
        let g = BathGeometry::from_phase(0.3, BathDimension::Three, 1.0).unwrap();
        let l = lamb_shift_coefficients(&j, &BathThermal::zero_temperature(), &g, 1.0).unwrap();
        assert_eq!(l, LambShift { a: 0.0, b: 0.0 });
    }

    #[test]
    fn missing_cutoff_is_a_numerical_failure() {
        let j = SpectralDensity::Ohmic {
            coupling: 0.1,
            cutoff_frequency: f64::INFINITY,
            cutoff_form: CutoffForm::Exponential,
        };
        let g = BathGeometry::from_phase(0.0, BathDimension::One, 1.0).unwrap();
        let err = lamb_shift_coefficients(&j, &BathThermal::zero_temperature(), &g, 1.0).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)));
    }

    #[test]
    fn a_is_independent_of_separation() {
        let t = BathThermal::from_ratio(0.8).unwrap();
        let reference = lamb_a(&ohmic(), &t, 1.0).unwrap();
        for k in 0..10 {
            let g = BathGeometry::from_phase(0.37 * k as f64, BathDimension::Two, 1.0).unwrap();
            let l = lamb_shift_coefficients(&ohmic(), &t, &g, 1.0).unwrap();
            assert!((l.a - reference).abs() <= 1e-12 * reference.abs());
        }
    }

    #[test]
    fn pole_outside_hard_cutoff() {
        // Hard cutoff below Δ: an ordinary integral, B = ∫₀^{1/2} (α/2) ω²/(1−ω²) dω.
        let j = SpectralDensity::Ohmic {
            coupling: 0.2,
            cutoff_frequency: 0.5,
            cutoff_form: CutoffForm::Hard,
        };
        let g = BathGeometry::from_phase(0.0, BathDimension::One, 1.0).unwrap();
        let b = lamb_b(&j, &g, 1.0).unwrap();
        let exact = 0.1 * (-0.5 + 0.5 * (1.5f64 / 0.5).ln());
        assert!((b - exact).abs() < 1e-12, "{b} vs {exact}");
    }

    #[test]
    fn divergent_table_reports_failure() {
        // J(0) ≠ 0 with finite temperature makes J coth(ω/2T) ~ 1/ω at the origin.
        let table = crate::bath::spectral::TabulatedDensity::parse("0 1\n3 1\n").unwrap();
        let j = SpectralDensity::Tabulated(table);
        let t = BathThermal::from_ratio(0.5).unwrap();
        assert!(matches!(lamb_a(&j, &t, 1.0), Err(Error::Numerical(_))));
    }
}
