//! Adaptive Gauss–Kronrod quadrature and principal-value integrals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// One 15-point Kronrod panel: (integral, error estimate, ∫|f|).
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut lower = [0.0; 7];
    let mut upper = [0.0; 7];
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for k in 0..7 {
        let dx = half * XGK[k];
        lower[k] = f(center - dx);
        upper[k] = f(center + dx);
        kronrod += WGK[k] * (lower[k] + upper[k]);
        abs += WGK[k] * (lower[k].abs() + upper[k].abs());
        if k % 2 == 1 {
            gauss += WG[k / 2] * (lower[k] + upper[k]);
        }
    }
    let half_abs = half.abs();
    let mean = 0.5 * kronrod;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for k in 0..7 {
        resasc += WGK[k] * ((lower[k] - mean).abs() + (upper[k] - mean).abs());
    }
    resasc *= half_abs;
    let mut error = ((kronrod - gauss) * half).abs();
    // QUADPACK's rescaling of the raw Gauss/Kronrod difference.
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    let abs = abs * half_abs;
    let round = 50.0 * f64::EPSILON * abs;
    if round > f64::MIN_POSITIVE {
        error = error.max(round);
    }
    (kronrod * half, error, abs)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integration of `f` over the finite interval `[a, b]`.
///
/// Converges when the summed error estimate is below
/// `max(abs_tol, rel_tol · |I|)`, or when it has reached the rounding floor
/// set by `∫|f|`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Numerical(format!("integration limits must be finite: [{a}, {b}]")));
    }
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let (value, error, abs) = kronrod15(&f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error, abs });
    let mut total = value;
    let mut total_error = error;
    let mut total_abs = abs;
    while total_error > abs_tol.max(rel_tol * total.abs()).max(100.0 * f64::EPSILON * total_abs) {
        if !total.is_finite() {
            return Err(Error::Numerical(format!("integrand is not finite on [{a}, {b}]")));
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::Numerical(format!(
                "quadrature on [{a}, {b}] did not converge: estimate {total:.6e} ± {total_error:.3e} after {evaluations} evaluations"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::Numerical(format!(
                "quadrature interval collapsed near {mid:.6e}: integrand singular or too rough"
            )));
        }
        let (v1, e1, a1) = kronrod15(&f, worst.a, mid);
        let (v2, e2, a2) = kronrod15(&f, mid, worst.b);
        evaluations += 30;
        total += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        total_abs += a1 + a2 - worst.abs;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1, abs: a1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2, abs: a2 });
    }
    // Re-sum to shed the rounding accumulated by incremental updates.
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let error: f64 = heap.iter().map(|p| p.error).sum();
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::Numerical(format!("integrand is not finite on [{a}, {b}]")));
    }
    Ok(Integral { value, error, evaluations })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalValue {
    pub value: f64,
    /// Difference between the last two extrapolated estimates.
    pub error: f64,
    /// Diagonal of the extrapolation table, one entry per excision width.
    pub estimates: Vec<f64>,
}

/// `PV ∫_lower^upper h(ω) / (pole − ω) dω` for smooth `h`.
///
/// The pole is excised symmetrically, `(pole − ε, pole + ε)`, for a sequence
/// of halving widths starting from `min(scale, ...)/4`. The truncated
/// integral behaves as `PV + c₁ε + c₃ε³ + …`, so a Richardson table in odd
/// powers of `ε` extrapolates to `ε → 0`.
pub fn principal_value<F: Fn(f64) -> f64>(
    h: F,
    pole: f64,
    lower: f64,
    upper: f64,
    scale: f64,
    rel_tol: f64,
) -> Result<PrincipalValue> {
    if !(lower < pole && pole < upper) {
        return Err(Error::Numerical(format!(
            "pole {pole} must lie strictly inside [{lower}, {upper}]"
        )));
    }
    const MAX_LEVELS: usize = 14;
    const MAX_ORDER: usize = 4;

    let integrand = |w: f64| h(w) / (pole - w);
    let eps0 = (0.25 * scale).min(0.5 * (pole - lower)).min(0.5 * (upper - pole));

    let mut magnitude = 0.0;
    let truncated = |eps: f64, magnitude: f64| -> Result<(f64, f64)> {
        let tol = 1e-15 * magnitude;
        let left = integrate(integrand, lower, pole - eps, tol, 1e-13)?;
        let right = integrate(integrand, pole + eps, upper, tol, 1e-13)?;
        Ok((left.value + right.value, left.value.abs() + right.value.abs()))
    };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut estimates = Vec::new();
    let mut eps = eps0;
    for level in 0..MAX_LEVELS {
        let (value, mag) = truncated(eps, magnitude)?;
        if level == 0 {
            magnitude = mag;
            if mag == 0.0 {
                return Ok(PrincipalValue { value: 0.0, error: 0.0, estimates: vec![0.0] });
            }
        }
        let mut row = vec![value];
        if let Some(prev) = rows.last() {
            for m in 1..=level.min(MAX_ORDER) {
                let factor = 2f64.powi(2 * m as i32 - 1) - 1.0;
                let r = row[m - 1] + (row[m - 1] - prev[m - 1]) / factor;
                row.push(r);
            }
        }
        estimates.push(*row.last().expect("row is non-empty"));
        rows.push(row);
        eps *= 0.5;

        if estimates.len() >= 3 {
            let n = estimates.len();
            let best = estimates[n - 1];
            let diff = (best - estimates[n - 2]).abs();
            let diff_prev = (estimates[n - 2] - estimates[n - 3]).abs();
            let floor = 1e-13 * magnitude;
            if diff.max(diff_prev) <= rel_tol * best.abs() + floor {
                return Ok(PrincipalValue { value: best, error: diff, estimates });
            }
        }
    }
    Err(Error::Numerical(format!(
        "principal value at {pole} did not converge to relative {rel_tol:e}; estimates: {estimates:?}"
    )))
}
