//! Closed-form long-time approximation: the state is kept in the span of the
//! thermal and slow modes, with the oscillatory pair dropped.

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::bath::{BathThermal, RateSet};
use crate::bloch::{CorrelationScalar, PauliVector, TwoQubitDensityMatrix, C64};
use crate::error::{Error, Result};
use crate::liouvillian::{analytic_slow_eigenpair, thermal_pattern};

/// Weight of the slow mode, `a₁ = (Λ − R²)/(3 + R²)`.
pub fn slow_coefficient(thermal: &BathThermal, lambda_corr: CorrelationScalar) -> f64 {
    let r2 = thermal.ratio().powi(2);
    (lambda_corr.value() - r2) / (3.0 + r2)
}

/// First-order slow rate `λ₁ = −(1 + 3N)δγ₀`.
pub fn first_order_rate(thermal: &BathThermal, rates: &RateSet) -> f64 {
    -(1.0 + 3.0 * thermal.occupation()) * rates.delta * rates.gamma0
}

/// `α(t) ≈ α₀ + a₁ α₁ e^{λ₁ t}` with the first-order `λ₁`.
pub fn analytic_state(
    thermal: &BathThermal,
    rates: &RateSet,
    lambda_corr: CorrelationScalar,
    t: f64,
) -> PauliVector {
    let (lambda1, _) = analytic_slow_eigenpair(thermal, rates);
    analytic_state_with_rate(thermal, lambda1, lambda_corr, t)
}

/// As [`analytic_state`] but with a caller-supplied slow rate.
pub fn analytic_state_with_rate(
    thermal: &BathThermal,
    lambda1: f64,
    lambda_corr: CorrelationScalar,
    t: f64,
) -> PauliVector {
    let base = thermal_pattern(thermal);
    let r = thermal.ratio();
    let w = slow_coefficient(thermal, lambda_corr) * (lambda1 * t).exp();
    let mut out = base;
    out.set(0, 1, r + w * r);
    out.set(1, 0, r + w * r);
    out.set(1, 1, r * r + w * (1.0 + r * r));
    out.set(2, 2, w);
    out.set(3, 3, w);
    out
}

/// `C = max[((R²−1)(R²+3) + (R²−Λ)(3−R²)e^{λ₁t}) / (2(R²+3)), 0]`
/// with the first-order `λ₁`.
pub fn analytic_concurrence(
    thermal: &BathThermal,
    rates: &RateSet,
    lambda_corr: CorrelationScalar,
    t: f64,
) -> f64 {
    analytic_concurrence_with_rate(thermal, first_order_rate(thermal, rates), lambda_corr, t)
}

pub fn analytic_concurrence_with_rate(
    thermal: &BathThermal,
    lambda1: f64,
    lambda_corr: CorrelationScalar,
    t: f64,
) -> f64 {
    analytic_margin(thermal, lambda1, lambda_corr, t).max(0.0)
}

/// The concurrence expression before clipping at zero.
pub fn analytic_margin(
    thermal: &BathThermal,
    lambda1: f64,
    lambda_corr: CorrelationScalar,
    t: f64,
) -> f64 {
    let r2 = thermal.ratio().powi(2);
    let l = lambda_corr.value();
    let decay = if lambda1 == 0.0 { 1.0 } else { (lambda1 * t).exp() };
    ((r2 - 1.0) * (r2 + 3.0) + (r2 - l) * (3.0 - r2) * decay) / (2.0 * (r2 + 3.0))
}

/// Largest `Λ` for which entanglement is generated: `(5R² − 3)/(3 − R²)`.
pub fn generation_threshold(thermal: &BathThermal) -> f64 {
    let r2 = thermal.ratio().powi(2);
    (5.0 * r2 - 3.0) / (3.0 - r2)
}

/// True iff `Λ < (5R² − 3)/(3 − R²)`.
pub fn generation_condition(thermal: &BathThermal, lambda_corr: CorrelationScalar) -> bool {
    lambda_corr.value() < generation_threshold(thermal)
}

/// Scaled survival time `|λ₁|t_c = ln[(R²−Λ)(R²−3)/((R²+3)(R²−1))]`.
/// Infinite at `R = 1`, zero when no entanglement is generated.
pub fn scaled_survival_time(thermal: &BathThermal, lambda_corr: CorrelationScalar) -> f64 {
    if !generation_condition(thermal, lambda_corr) {
        return 0.0;
    }
    let r2 = thermal.ratio().powi(2);
    if r2 >= 1.0 {
        return f64::INFINITY;
    }
    let l = lambda_corr.value();
    (((r2 - l) * (r2 - 3.0)) / ((r2 + 3.0) * (r2 - 1.0))).ln()
}

/// Both forms of the criterion for a thermal initial state at `θ_Q`
/// entangling in a bath at `θ_B` (`θ = Δ/2k_BT`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThermalCondition {
    /// Generation condition with `R = tanh θ_B`, `Λ = tanh² θ_Q`.
    pub exact: bool,
    /// `θ_B − θ_Q > ½ ln 3`, valid for large `θ_Q`.
    pub asymptotic: bool,
}

pub fn thermal_bath_condition(theta_b: f64, theta_q: f64) -> Result<ThermalCondition> {
    if !(theta_b > 0.0) || !(theta_q > 0.0) {
        return Err(Error::Domain(format!(
            "temperatures enter as θ = Δ/2k_BT > 0, got θ_B = {theta_b}, θ_Q = {theta_q}"
        )));
    }
    let r2 = theta_b.tanh().powi(2);
    let lambda = theta_q.tanh().powi(2);
    // The generation inequality rearranged to avoid forming R from tanh
    // when θ_B is large.
    let exact = lambda * (3.0 - r2) < 5.0 * r2 - 3.0;
    Ok(ThermalCondition {
        exact,
        asymptotic: theta_b - theta_q > 0.5 * 3f64.ln(),
    })
}

/// Density matrix in the limit of no decay:
/// `(1+a₁)|↑↑⟩ₓ⟨↑↑| − a₁|Ψ⁻⟩⟨Ψ⁻| + c|Ψ⁻⟩⟨↑↑|ₓ + c*|↑↑⟩ₓ⟨Ψ⁻|`
/// with `c = a₂√2 e^{−iΔt}` for `sign = +1` and `c = i a₂√2 e^{−iΔt}` for
/// `sign = −1`.
pub fn zero_limit_state(
    a1: f64,
    a2: f64,
    sign: i8,
    t: f64,
    delta_field: f64,
) -> Result<TwoQubitDensityMatrix> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidCoefficients(format!("sign must be ±1, got {sign}")));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let up_x = Vector4::from_fn(|_, _| C64::from(0.5));
    let singlet = Vector4::new(C64::from(0.0), C64::from(s), C64::from(-s), C64::from(0.0));
    let phase = C64::from_polar(1.0, -delta_field * t);
    let c = if sign == 1 { phase } else { phase * C64::i() } * (a2 * std::f64::consts::SQRT_2);
    let coherence: Matrix4<C64> = &singlet * up_x.adjoint() * c;
    let m = &up_x * up_x.adjoint() * C64::from(1.0 + a1) - &singlet * singlet.adjoint() * C64::from(a1)
        + coherence
        + coherence.adjoint();
    TwoQubitDensityMatrix::new(m).map_err(|e| {
        Error::InvalidCoefficients(format!("a₁ = {a1}, a₂ = {a2} do not give a state: {e}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{density_to_bloch, states, wootters_concurrence, bloch_to_density};

    fn lam(x: f64) -> CorrelationScalar {
        CorrelationScalar::new(x).unwrap()
    }

    fn th(r: f64) -> BathThermal {
        BathThermal::from_ratio(r).unwrap()
    }

    #[test]
    fn slow_coefficient_examples() {
        assert!((slow_coefficient(&th(0.9), lam(-1.0)) + 0.4751).abs() < 5e-5);
        for r in [0.1, 0.5, 0.99] {
            assert!((slow_coefficient(&th(r), lam(-3.0)) + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn thermal_matched_correlation_is_stationary() {
        let t = th(0.7);
        let rates = RateSet::new(1.0, &t, 0.05).unwrap();
        let s = analytic_state(&t, &rates, lam(0.49), 3.0);
        assert!(s.max_abs_diff(&states::thermal(0.7)) < 1e-15);
    }

    #[test]
    fn concurrence_examples() {
        let rates = RateSet::new(1.0, &th(0.5), 0.03125).unwrap();
        let c = analytic_concurrence(&th(0.5), &rates, lam(-1.0), 0.0);
        assert!((c - 0.1538).abs() < 5e-5);
        let rates = RateSet::new(1.0, &th(0.9), 0.05).unwrap();
        let c = analytic_concurrence(&th(0.9), &rates, lam(-1.0), 0.0);
        assert!((c - 0.4252).abs() < 5e-5);
        let rates = RateSet::new(1.0, &BathThermal::zero_temperature(), 0.0).unwrap();
        for t in [0.0, 1.0, 1e6] {
            let c = analytic_concurrence(&BathThermal::zero_temperature(), &rates, lam(-3.0), t);
            assert!((c - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn formula_matches_wootters_on_the_analytic_state() {
        let rates = RateSet::new(1.0, &th(0.9), 0.05).unwrap();
        for l in [-3.0, -1.0, 0.0, 0.5] {
            for t in [0.0, 2.0, 10.0, 30.0] {
                let s = analytic_state(&th(0.9), &rates, lam(l), t);
                let c = wootters_concurrence(&bloch_to_density(&s)).unwrap();
                let f = analytic_concurrence(&th(0.9), &rates, lam(l), t);
                assert!((c - f).abs() < 1e-10, "Λ={l} t={t}: {c} vs {f}");
            }
        }
    }

    #[test]
    fn generation_examples() {
        assert!(generation_condition(&th(0.78), lam(0.0)));
        assert!(!generation_condition(&th(0.77), lam(0.0)));
        assert!(generation_condition(&th(0.5), lam(-1.0)));
        assert!((generation_threshold(&th(0.5)) + 0.636_363_636).abs() < 1e-8);
        assert!(generation_condition(&BathThermal::zero_temperature(), lam(0.999)));
        assert!(!generation_condition(&BathThermal::zero_temperature(), lam(1.0)));
    }

    #[test]
    fn survival_examples() {
        let s = scaled_survival_time(&th(0.9), lam(-1.0));
        // (1.81 × 2.19)/(3.81 × 0.19) = 5.475755…; the rounded ln 5.476 = 1.7005.
        assert!((s - (1.81f64 * 2.19 / (3.81 * 0.19)).ln()).abs() < 1e-12);
        assert!((s - 1.7005).abs() < 5e-4);
        assert!(scaled_survival_time(&BathThermal::zero_temperature(), lam(-1.0)).is_infinite());
        assert_eq!(scaled_survival_time(&th(0.3), lam(0.0)), 0.0);
    }

    #[test]
    fn thermal_condition_examples() {
        assert!(!thermal_bath_condition(1.3, 1.3).unwrap().exact);
        let c = thermal_bath_condition(4.6, 4.0).unwrap();
        assert!(c.exact && c.asymptotic);
        let c = thermal_bath_condition(4.5, 4.0).unwrap();
        assert!(!c.asymptotic);
        assert!(!c.exact);
        assert!(thermal_bath_condition(0.0, 1.0).is_err());
    }

    #[test]
    fn zero_limit_examples() {
        let s = zero_limit_state(-1.0, 0.0, 1, 0.0, 1.0).unwrap();
        let v = density_to_bloch(&s).unwrap();
        assert!(v.max_abs_diff(&states::singlet()) < 1e-15);
        let g = zero_limit_state(0.0, 0.0, 1, 0.0, 1.0).unwrap();
        assert!(density_to_bloch(&g).unwrap().max_abs_diff(&states::up_up_x()) < 1e-15);
        assert!(zero_limit_state(-0.5, 0.5, 1, 0.0, 1.0).is_err());
        assert!(zero_limit_state(-0.5, 0.1, -1, 0.3, 1.0).is_ok());
        assert!(zero_limit_state(-0.5, 0.1, 0, 0.0, 1.0).is_err());
    }
}
