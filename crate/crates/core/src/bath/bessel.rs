//! Bessel function of the first kind, order zero.

use std::f64::consts::{FRAC_PI_4, PI};

/// Below this argument the power series is summed directly; above it the
/// Hankel asymptotic expansion is used. At 12 the smallest asymptotic term
/// is ~1e-11, while the series still loses fewer than four digits to
/// cancellation.
const SERIES_LIMIT: f64 = 12.0;

/// `J₀(x)`, accurate to about 1e-10 absolute for all real `x`.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_LIMIT {
        series(x)
    } else {
        asymptotic(x)
    }
}

fn series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) || k > 200.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

fn asymptotic(x: f64) -> f64 {
    // a_k = [(1)(9)(25)...((2k-1)^2)] / (k! 8^k)
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a: f64 = 1.0;
    let mut prev = f64::INFINITY;
    let mut k = 0usize;
    let mut xpow: f64 = 1.0;
    loop {
        let term = a / xpow;
        if term.abs() > prev {
            break;
        }
        match k % 4 {
            0 => p += term,
            1 => q -= term,
            2 => p -= term,
            _ => q += term,
        }
        prev = term.abs();
        if prev < 1e-17 {
            break;
        }
        k += 1;
        let odd = (2 * k - 1) as f64;
        a *= odd * odd / (k as f64 * 8.0);
        xpow *= x;
    }
    let phase = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * phase.cos() - q * phase.sin())
}
