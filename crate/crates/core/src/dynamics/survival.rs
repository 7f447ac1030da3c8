use serde::{Deserialize, Serialize};

use super::analytic::{first_order_rate, generation_condition, scaled_survival_time};
use super::propagate::default_times;
use crate::bath::{BathThermal, RateSet};
use crate::bloch::{
    bloch_to_density, concurrence_margin, correlation_scalar, states, CorrelationScalar, PauliVector, C64,
};
use super::ode::{integrate, OdeOptions};
use crate::error::{Error, Result};
use crate::liouvillian::{
    build_generator, classify_spectrum, coefficients_checked, Eigensystem, Matrix16, ModelParams,
};

/// Field used when a caller only fixes the bath. Without Lamb shift or
/// exchange the concurrence does not depend on it.
pub const DEFAULT_FIELD: f64 = 20.0;
/// Bisection stops once the bracket is this narrow in `|λ₁| t`.
pub const CROSSING_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurvivalReport {
    /// Whether the generation inequality holds.
    pub generated: bool,
    /// Closed-form survival time with the first-order slow rate; `0` when
    /// nothing is generated, infinite at `R = 1` or `δ = 0`.
    pub t_c: f64,
    /// `|λ₁| t_c` from the closed form.
    pub scaled_t_c: f64,
    /// Largest concurrence on the full trajectory.
    pub peak_concurrence: f64,
    pub peak_time: f64,
    /// Slow rate of the full generator, or the first-order value when the
    /// spectrum cannot be classified (`δ = 0`).
    pub lambda1: f64,
    /// Zero crossing of the full-trajectory concurrence after the peak.
    pub numeric_t_c: Option<f64>,
    /// `|λ₁| × numeric_t_c` with the numerical `λ₁`.
    pub numeric_scaled_t_c: Option<f64>,
}

/// A separable-where-possible state with the requested `Λ`, interpolating
/// linearly between the singlet (`Λ = −3`), `|↑↓⟩` (`−1`), the maximally
/// mixed state (`0`) and `(|↑↓⟩ + |↓↑⟩)/√2` (`+1`).
pub fn representative_state(lambda_corr: CorrelationScalar) -> PauliVector {
    let l = lambda_corr.value();
    let (w, a, b) = if l < -1.0 {
        ((-1.0 - l) / 2.0, states::singlet(), states::up_down_z())
    } else if l <= 0.0 {
        (-l, states::up_down_z(), states::maximally_mixed())
    } else {
        (l, states::triplet_zero(), states::maximally_mixed())
    };
    PauliVector::from_components(std::array::from_fn(|k| {
        w * a.components()[k] + (1.0 - w) * b.components()[k]
    }))
}

/// Concurrence margin along the trajectory, from the eigen-expansion or,
/// when the eigenbasis is defective, by direct integration.
enum Evaluator {
    Spectral {
        system: Eigensystem,
        coefficients: [C64; 16],
    },
    Direct {
        generator: Matrix16,
        initial: PauliVector,
    },
}

impl Evaluator {
    fn margin_of(s: &PauliVector) -> f64 {
        concurrence_margin(bloch_to_density(s).entries())
    }

    fn margins(&self, times: &[f64]) -> Result<Vec<f64>> {
        match self {
            Evaluator::Spectral { system, coefficients } => Ok(times
                .iter()
                .map(|&t| Self::margin_of(&system.evolve(coefficients, t)))
                .collect()),
            Evaluator::Direct { generator, initial } => {
                let ys = integrate(|y| generator * y, &initial.to_vector(), times, &OdeOptions::default())?;
                Ok(ys.iter().map(|y| Self::margin_of(&PauliVector::from_vector(y))).collect())
            }
        }
    }

    fn margin(&self, t: f64) -> f64 {
        match self {
            Evaluator::Spectral { system, coefficients } => Self::margin_of(&system.evolve(coefficients, t)),
            Evaluator::Direct { .. } => self.margins(&[t]).map_or(f64::NAN, |m| m[0]),
        }
    }
}

pub fn survival_time(
    thermal: &BathThermal,
    rates: &RateSet,
    lambda_corr: CorrelationScalar,
) -> Result<SurvivalReport> {
    survival_time_for(thermal, rates, &representative_state(lambda_corr), DEFAULT_FIELD)
}

/// Survival analysis for an explicit initial state.
pub fn survival_time_for(
    thermal: &BathThermal,
    rates: &RateSet,
    initial: &PauliVector,
    delta_field: f64,
) -> Result<SurvivalReport> {
    let lambda_corr = correlation_scalar(initial);
    let generated = generation_condition(thermal, lambda_corr);
    let scaled = scaled_survival_time(thermal, lambda_corr);
    let first_order = first_order_rate(thermal, rates);
    let t_c = if !generated {
        0.0
    } else if scaled.is_infinite() || first_order == 0.0 {
        f64::INFINITY
    } else {
        scaled / first_order.abs()
    };

    let generator = build_generator(&ModelParams::new(delta_field)?, rates, false, false)?;
    let (system, lambda1) = if rates.delta > 0.0 && rates.gamma0 > 0.0 {
        let report = classify_spectrum(&generator, rates)?;
        let l1 = report.slow_rate();
        (Ok(report.eigensystem().clone()), l1)
    } else {
        // `+ 0.0` turns the `−0` of a vanishing rate into `+0`.
        (Eigensystem::decompose(&generator), first_order + 0.0)
    };
    let exp = match system.and_then(|system| {
        let coefficients = coefficients_checked(&system, initial)?;
        Ok(Evaluator::Spectral { system, coefficients })
    }) {
        Ok(e) => e,
        Err(Error::Defective { condition }) => {
            log::info!("defective eigenbasis (condition {condition:e}); integrating directly");
            Evaluator::Direct {
                generator: *generator.entries(),
                initial: *initial,
            }
        }
        Err(e) => return Err(e),
    };

    let horizon = if lambda1 < 0.0 {
        let s = if scaled.is_finite() { scaled.max(1.0) } else { 1.0 };
        (3.0 * s).max(10.0) / lambda1.abs()
    } else {
        100.0 / rates.gamma0.max(f64::MIN_POSITIVE)
    };
    let grid = default_times(1e-3 / rates.gamma0.max(1e-300), horizon, 400);
    let margins = exp.margins(&grid)?;
    let k_peak = margins
        .iter()
        .enumerate()
        .fold(0, |best, (k, &m)| if m > margins[best] { k } else { best });
    let (peak_time, peak_margin) = match exp {
        Evaluator::Spectral { .. } => refine_peak(&exp, &grid, k_peak),
        // Each evaluation integrates from zero; the grid value has to do.
        Evaluator::Direct { .. } => (grid[k_peak], margins[k_peak]),
    };

    let mut numeric_t_c = None;
    if peak_margin > 0.0 && lambda1 < 0.0 {
        if let Some(k) = (k_peak + 1..grid.len()).find(|&k| margins[k] <= 0.0) {
            let (mut lo, mut hi) = (grid[k - 1].max(peak_time), grid[k]);
            while (hi - lo) * lambda1.abs() > CROSSING_TOL {
                let mid = 0.5 * (lo + hi);
                if exp.margin(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            numeric_t_c = Some(0.5 * (lo + hi));
        }
    }
    if !peak_margin.is_finite() {
        return Err(Error::Numerical("non-finite concurrence along trajectory".into()));
    }

    Ok(SurvivalReport {
        generated,
        t_c,
        scaled_t_c: scaled,
        peak_concurrence: peak_margin.clamp(0.0, 1.0),
        peak_time,
        lambda1,
        numeric_t_c,
        numeric_scaled_t_c: numeric_t_c.map(|t| t * lambda1.abs()),
    })
}

/// Golden-section search for the maximum between the grid neighbours of
/// the sampled peak.
fn refine_peak(exp: &Evaluator, grid: &[f64], k: usize) -> (f64, f64) {
    let at_k = (grid[k], exp.margin(grid[k]));
    if k == 0 {
        return at_k;
    }
    let (mut a, mut b) = (grid[k - 1], grid[(k + 1).min(grid.len() - 1)]);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (exp.margin(x1), exp.margin(x2));
    for _ in 0..60 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = exp.margin(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = exp.margin(x2);
        }
        if b - a < 1e-10 * b.max(1e-12) {
            break;
        }
    }
    let best = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    if best.1 > at_k.1 { best } else { at_k }
}
