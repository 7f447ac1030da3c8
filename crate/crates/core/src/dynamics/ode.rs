//! Adaptive Dormand–Prince 5(4) integrator for linear systems `ẏ = L y`.

use nalgebra::SVector;

use crate::error::{Error, Result};

pub type State16 = SVector<f64, 16>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Initial step; `None` picks one from the derivative norm.
    pub initial_step: Option<f64>,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            initial_step: None,
            max_steps: 5_000_000,
        }
    }
}

// Time nodes are not needed for an autonomous system.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Fifth minus fourth order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates `ẏ = f(y)` from `t = 0` and records `y` at each requested
/// output time, which must be non-negative and non-decreasing. Steps are
/// truncated so every output time is hit exactly.
pub fn integrate<F>(f: F, y0: &State16, times: &[f64], opts: &OdeOptions) -> Result<Vec<State16>>
where
    F: Fn(&State16) -> State16,
{
    if times.windows(2).any(|w| !(w[1] >= w[0])) || times.first().is_some_and(|&t| !(t >= 0.0)) {
        return Err(Error::Domain("output times must be non-negative and sorted".into()));
    }
    let mut out = Vec::with_capacity(times.len());
    let mut t = 0.0;
    let mut y = *y0;
    let mut k1 = f(&y);
    let t_end = times.last().copied().unwrap_or(0.0);
    let mut h = opts.initial_step.unwrap_or_else(|| {
        let d = k1.amax();
        let s = y.amax().max(opts.abs_tol);
        if d > 0.0 { 0.01 * s / d } else { t_end.max(1e-6) }
    });
    let mut steps = 0usize;
    for &target in times {
        while t < target {
            if steps >= opts.max_steps {
                return Err(Error::Integration {
                    t,
                    reason: format!("exceeded {} steps", opts.max_steps),
                });
            }
            steps += 1;
            let remaining = target - t;
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            if step <= 16.0 * f64::EPSILON * t.abs().max(1.0) && !last {
                return Err(Error::Integration {
                    t,
                    reason: format!("step size underflow (h = {step:e})"),
                });
            }
            let k2 = f(&(y + k1 * (step * A21)));
            let k3 = f(&(y + (k1 * A31 + k2 * A32) * step));
            let k4 = f(&(y + (k1 * A41 + k2 * A42 + k3 * A43) * step));
            let k5 = f(&(y + (k1 * A51 + k2 * A52 + k3 * A53 + k4 * A54) * step));
            let k6 = f(&(y + (k1 * A61 + k2 * A62 + k3 * A63 + k4 * A64 + k5 * A65) * step));
            let y_new = y + (k1 * B1 + k3 * B3 + k4 * B4 + k5 * B5 + k6 * B6) * step;
            let k7 = f(&y_new);
            let err_vec = (k1 * E1 + k3 * E3 + k4 * E4 + k5 * E5 + k6 * E6 + k7 * E7) * step;
            let mut err: f64 = 0.0;
            for i in 0..16 {
                let sc = opts.abs_tol + opts.rel_tol * y[i].abs().max(y_new[i].abs());
                err = err.max((err_vec[i] / sc).abs());
            }
            if !err.is_finite() {
                return Err(Error::Integration {
                    t,
                    reason: "non-finite state".into(),
                });
            }
            if err <= 1.0 {
                t = if last { target } else { t + step };
                y = y_new;
                k1 = k7;
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            // A truncated final step says nothing about the natural step size.
            if !(last && err <= 1.0) {
                h = step * factor;
            }
        }
        out.push(y);
    }
    Ok(out)
}
