//! Eigensystem of the generator and its classification into thermal, slow,
//! oscillatory and fast modes.

use faer::Mat;
use nalgebra::SMatrix;
use serde::{Deserialize, Serialize};

use super::generator::GeneratorMatrix;
use crate::bath::{BathThermal, RateSet};
use crate::bloch::{states, PauliVector, C64};
use crate::error::{Error, Result};

pub type ComplexMatrix16 = SMatrix<C64, 16, 16>;

/// Condition number of the normalised eigenvector matrix above which the
/// eigenbasis is treated as defective.
pub const DEFECTIVE_CONDITION: f64 = 1e10;
/// Zero eigenvalues satisfy `|λ| < ZERO_TOL_FACTOR · γ₀`.
pub const ZERO_TOL_FACTOR: f64 = 1e-9;
/// Two slow candidates closer than this (times `γ₀`) are indistinguishable.
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Fast modes are expected to satisfy `Re λ ≤ −FAST_BOUND · γ₀/R`.
pub const FAST_BOUND: f64 = 0.5;

/// Right eigenvectors as columns, left eigenvectors as the rows of the
/// inverse, so `left · right = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigensystem {
    eigenvalues: [C64; 16],
    right: ComplexMatrix16,
    left: ComplexMatrix16,
    condition: f64,
}

impl Eigensystem {
    /// Numerical eigendecomposition of `L`. Each right eigenvector is scaled
    /// to unit norm with its largest component real and positive.
    pub fn decompose(generator: &GeneratorMatrix) -> Result<Self> {
        let l = generator.entries();
        let m = Mat::<f64>::from_fn(16, 16, |i, j| l[(i, j)]);
        let evd = m
            .eigen()
            .map_err(|e| Error::Numerical(format!("eigendecomposition failed: {e:?}")))?;
        let values = evd.S().column_vector();
        let vectors = evd.U();
        let eigenvalues: [C64; 16] = std::array::from_fn(|k| {
            let v = values[k];
            C64::new(v.re, v.im)
        });
        let mut right = ComplexMatrix16::from_fn(|i, k| {
            let v = vectors[(i, k)];
            C64::new(v.re, v.im)
        });
        let lc = l.map(C64::from);
        let scale = l.norm().max(f64::MIN_POSITIVE);
        for cluster in clusters(&eigenvalues, CLUSTER_TOL * scale) {
            if cluster.len() > 1 {
                resolve_cluster(&lc, &eigenvalues, &cluster, &mut right, scale)?;
            }
        }
        Self::from_parts(eigenvalues, right)
    }

    /// Normalises the columns of `right` and inverts it.
    pub(crate) fn from_parts(eigenvalues: [C64; 16], mut right: ComplexMatrix16) -> Result<Self> {
        for k in 0..16 {
            let mut col = right.column_mut(k);
            let norm = col.norm();
            if norm == 0.0 || !norm.is_finite() {
                return Err(Error::Defective { condition: f64::INFINITY });
            }
            let pivot = col.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
            let phase = pivot.conj() / pivot.norm();
            col *= phase / norm;
        }
        Self::with_vectors(eigenvalues, right)
    }

    fn with_vectors(eigenvalues: [C64; 16], right: ComplexMatrix16) -> Result<Self> {
        let left = right
            .try_inverse()
            .ok_or(Error::Defective { condition: f64::INFINITY })?;
        let unit = right.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
        let condition = right.norm() * left.norm() / (16.0 * unit * unit).max(1.0);
        if !condition.is_finite() || condition > DEFECTIVE_CONDITION {
            return Err(Error::Defective { condition });
        }
        Ok(Self {
            eigenvalues,
            right,
            left,
            condition,
        })
    }

    pub fn eigenvalues(&self) -> &[C64; 16] {
        &self.eigenvalues
    }

    pub fn right(&self) -> &ComplexMatrix16 {
        &self.right
    }

    pub fn left(&self) -> &ComplexMatrix16 {
        &self.left
    }

    /// Frobenius condition number of the eigenvector matrix.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn right_vector(&self, l: usize) -> [C64; 16] {
        std::array::from_fn(|i| self.right[(i, l)])
    }

    pub fn left_vector(&self, l: usize) -> [C64; 16] {
        std::array::from_fn(|i| self.left[(l, i)])
    }

    /// `max |⟨L_k|R_l⟩ − δ_kl|`.
    pub fn biorthogonality_error(&self) -> f64 {
        let p = self.left * self.right;
        let mut worst: f64 = 0.0;
        for k in 0..16 {
            for l in 0..16 {
                let target = if k == l { 1.0 } else { 0.0 };
                worst = worst.max((p[(k, l)] - target).norm());
            }
        }
        worst
    }

    /// `a_l = ⟨L_l|α⟩`.
    pub fn coefficients(&self, alpha: &PauliVector) -> [C64; 16] {
        let v = alpha.to_vector().map(C64::from);
        let a = self.left * v;
        std::array::from_fn(|l| a[l])
    }

    /// `Σ_l a_l R_l e^{λ_l t}`, real part.
    pub fn evolve(&self, coefficients: &[C64; 16], t: f64) -> PauliVector {
        let weights = nalgebra::SVector::<C64, 16>::from_fn(|l, _| {
            coefficients[l] * (self.eigenvalues[l] * t).exp()
        });
        let v = self.right * weights;
        PauliVector::from_components(std::array::from_fn(|i| v[i].re))
    }

    /// Re-orders and rescales modes; `order[k]` is the old index placed at `k`.
    fn permuted(&self, order: &[usize; 16], scales: &[C64; 16]) -> Result<Self> {
        let eigenvalues = std::array::from_fn(|k| self.eigenvalues[order[k]]);
        let right = ComplexMatrix16::from_fn(|i, k| self.right[(i, order[k])] * scales[k]);
        Self::with_vectors(eigenvalues, right)
    }
}

/// Eigenvalues closer than this (relative to `‖L‖`) are treated as one
/// repeated eigenvalue.
const CLUSTER_TOL: f64 = 1e-9;
/// A repeated eigenvalue whose eigenspace has a singular value above this
/// (relative to `‖L‖`) is missing eigenvectors.
const NULL_TOL: f64 = 1e-7;

fn clusters(values: &[C64; 16], tol: f64) -> Vec<Vec<usize>> {
    let mut seen = [false; 16];
    let mut out = Vec::new();
    for i in 0..16 {
        if seen[i] {
            continue;
        }
        let mut group = vec![i];
        seen[i] = true;
        let mut k = 0;
        while k < group.len() {
            let anchor = values[group[k]];
            for j in 0..16 {
                if !seen[j] && (values[j] - anchor).norm() < tol {
                    seen[j] = true;
                    group.push(j);
                }
            }
            k += 1;
        }
        out.push(group);
    }
    out
}

/// Replaces the eigenvectors of a repeated eigenvalue by an orthonormal
/// basis of the null space of `L − λI`. Schur back-substitution can return
/// nearly parallel vectors in that case.
fn resolve_cluster(
    l: &ComplexMatrix16,
    values: &[C64; 16],
    cluster: &[usize],
    right: &mut ComplexMatrix16,
    scale: f64,
) -> Result<()> {
    let m = cluster.len();
    let mean = cluster.iter().map(|&k| values[k]).sum::<C64>() / m as f64;
    let shifted = l - ComplexMatrix16::identity() * mean;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.ok_or_else(|| Error::Numerical("SVD did not return vectors".into()))?;
    let mut order: Vec<usize> = (0..16).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let largest_null = svd.singular_values[order[m - 1]];
    if largest_null > NULL_TOL * scale {
        return Err(Error::Defective {
            condition: scale / svd.singular_values[order[m - 1]].max(f64::MIN_POSITIVE),
        });
    }
    for (slot, &k) in cluster.iter().enumerate() {
        let row = order[slot];
        for i in 0..16 {
            right[(i, k)] = v_t[(row, i)].conj();
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeLabel {
    Thermal,
    Slow,
    Oscillatory,
    Fast,
}

/// Classified eigensystem. Modes are ordered `l = 0` thermal, `l = 1` slow,
/// `l = 2, 3` the oscillatory pair (`Im λ₂ < 0`), then the twelve fast modes
/// by decreasing real part.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    system: Eigensystem,
    labels: [ModeLabel; 16],
    gamma0: f64,
    ratio_r: f64,
    fast_violations: Vec<usize>,
}

impl SpectrumReport {
    pub fn eigensystem(&self) -> &Eigensystem {
        &self.system
    }

    pub fn labels(&self) -> &[ModeLabel; 16] {
        &self.labels
    }

    pub fn eigenvalue(&self, l: usize) -> C64 {
        self.system.eigenvalues[l]
    }

    /// `λ₁`.
    pub fn slow_rate(&self) -> f64 {
        self.system.eigenvalues[1].re
    }

    /// `λ₂` (the member of the pair with negative imaginary part).
    pub fn oscillatory(&self) -> C64 {
        self.system.eigenvalues[2]
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    /// Thermal eigenvector, scaled so `α₀₀ = 1`.
    pub fn thermal_vector(&self) -> PauliVector {
        real_vector(&self.system.right_vector(0))
    }

    /// Slow eigenvector, scaled so `α₂₂ = 1`.
    pub fn slow_vector(&self) -> PauliVector {
        real_vector(&self.system.right_vector(1))
    }

    /// Fast modes whose real part is above `−½γ₀/R`.
    pub fn fast_violations(&self) -> &[usize] {
        &self.fast_violations
    }

    pub fn count(&self, label: ModeLabel) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    pub fn export(&self) -> SpectrumExport {
        let modes = (0..16)
            .map(|l| {
                let to_pairs = |v: [C64; 16]| v.iter().map(|c| [c.re, c.im]).collect();
                ModeExport {
                    index: l,
                    label: self.labels[l],
                    eigenvalue: [self.eigenvalue(l).re, self.eigenvalue(l).im],
                    right: to_pairs(self.system.right_vector(l)),
                    left: to_pairs(self.system.left_vector(l)),
                }
            })
            .collect();
        SpectrumExport {
            gamma0: self.gamma0,
            ratio_r: self.ratio_r,
            fast_violations: self.fast_violations.clone(),
            modes,
        }
    }
}

fn real_vector(v: &[C64; 16]) -> PauliVector {
    PauliVector::from_components(std::array::from_fn(|i| v[i].re))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeExport {
    pub index: usize,
    pub label: ModeLabel,
    /// `[re, im]`.
    pub eigenvalue: [f64; 2],
    pub right: Vec<[f64; 2]>,
    pub left: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumExport {
    pub gamma0: f64,
    pub ratio_r: f64,
    pub fast_violations: Vec<usize>,
    pub modes: Vec<ModeExport>,
}

pub fn classify_spectrum(generator: &GeneratorMatrix, rates: &RateSet) -> Result<SpectrumReport> {
    if !(rates.delta > 0.0) {
        return Err(Error::Domain(
            "mode classification needs δ > 0; at δ = 0 the null space is two-dimensional".into(),
        ));
    }
    if !(rates.gamma0 > 0.0) {
        return Err(Error::Domain("mode classification needs γ₀ > 0".into()));
    }
    let system = Eigensystem::decompose(generator)?;
    let gamma0 = rates.gamma0;
    let ratio_r = 1.0 / (1.0 + 2.0 * rates.occupation());
    let values = system.eigenvalues;

    let zero_tol = ZERO_TOL_FACTOR * gamma0;
    let zeros: Vec<usize> = (0..16).filter(|&k| values[k].norm() < zero_tol).collect();
    if zeros.len() != 1 {
        return Err(Error::NullSpace { count: zeros.len() });
    }
    let thermal = zeros[0];

    let real_tol = 1e-8 * generator.frequency_scale().max(gamma0);
    let mut real: Vec<usize> = (0..16)
        .filter(|&k| k != thermal && values[k].im.abs() <= real_tol)
        .collect();
    real.sort_by(|&a, &b| values[a].re.abs().total_cmp(&values[b].re.abs()));
    let slow = *real
        .first()
        .ok_or_else(|| Error::Numerical("no real non-zero eigenvalue for the slow mode".into()))?;
    if let Some(&next) = real.get(1) {
        if (values[next].re - values[slow].re).abs() < DEGENERACY_TOL * gamma0 {
            return Err(Error::Degenerate {
                first: values[slow],
                second: values[next],
            });
        }
    }

    let mut complex: Vec<usize> = (0..16)
        .filter(|&k| k != thermal && k != slow && values[k].im < -real_tol)
        .collect();
    complex.sort_by(|&a, &b| values[a].re.abs().total_cmp(&values[b].re.abs()));
    let osc = *complex
        .first()
        .ok_or_else(|| Error::Numerical("no complex pair for the oscillatory mode".into()))?;
    let target = values[osc].conj();
    let partner = (0..16)
        .filter(|&k| k != osc && values[k].im > real_tol)
        .min_by(|&a, &b| (values[a] - target).norm().total_cmp(&(values[b] - target).norm()))
        .ok_or_else(|| Error::Numerical("oscillatory eigenvalue has no conjugate partner".into()))?;

    let chosen = [thermal, slow, osc, partner];
    let mut fast: Vec<usize> = (0..16).filter(|k| !chosen.contains(k)).collect();
    fast.sort_by(|&a, &b| {
        values[b]
            .re
            .total_cmp(&values[a].re)
            .then(values[a].im.total_cmp(&values[b].im))
    });
    let mut order = [0usize; 16];
    order[..4].copy_from_slice(&chosen);
    order[4..].copy_from_slice(&fast);

    let mut scales = [C64::new(1.0, 0.0); 16];
    let thermal_norm = system.right[(PauliVector::index(0, 0), thermal)];
    scales[0] = thermal_norm.inv();
    let slow_pivot = system.right[(PauliVector::index(2, 2), slow)];
    if slow_pivot.norm() > 1e-8 {
        scales[1] = slow_pivot.inv();
    }
    // Keep the pair exactly conjugate.
    let mut system = system.permuted(&order, &scales)?;
    for i in 0..16 {
        system.right[(i, 3)] = system.right[(i, 2)].conj();
    }
    system.eigenvalues[3] = system.eigenvalues[2].conj();
    let system = Eigensystem::with_vectors(system.eigenvalues, system.right)?;

    let mut labels = [ModeLabel::Fast; 16];
    labels[0] = ModeLabel::Thermal;
    labels[1] = ModeLabel::Slow;
    labels[2] = ModeLabel::Oscillatory;
    labels[3] = ModeLabel::Oscillatory;
    let bound = -FAST_BOUND * gamma0 / ratio_r;
    let fast_violations = (4..16).filter(|&l| system.eigenvalues[l].re > bound).collect();

    Ok(SpectrumReport {
        system,
        labels,
        gamma0,
        ratio_r,
        fast_violations,
    })
}

/// Mode coefficients `a_l` of an initial state, with `a₀ = 1`.
pub fn mode_coefficients(report: &SpectrumReport, initial: &PauliVector) -> Result<[C64; 16]> {
    coefficients_checked(&report.system, initial)
}

pub(crate) fn coefficients_checked(system: &Eigensystem, initial: &PauliVector) -> Result<[C64; 16]> {
    let a = system.coefficients(initial);
    let rebuilt = system.evolve(&a, 0.0);
    let scale = initial.components().iter().map(|x| x.abs()).fold(1.0, f64::max);
    let err = rebuilt.max_abs_diff(initial);
    if err > 1e-8 * scale {
        return Err(Error::Defective {
            condition: system.condition,
        });
    }
    Ok(a)
}

/// Thermal fixed point `{α₀₀, α₀₁, α₁₁, α₂₂} = {1, R, R², 0}`.
pub fn thermal_pattern(thermal: &BathThermal) -> PauliVector {
    states::thermal(thermal.ratio())
}

/// First-order slow rate `λ₁ = −(1 + 3N)δγ₀` and the small-δ slow vector
/// `{α₀₀, α₀₁, α₁₁, α₂₂} ≈ {0, R, 1 + R², 1}`.
pub fn analytic_slow_eigenpair(thermal: &BathThermal, rates: &RateSet) -> (f64, PauliVector) {
    if rates.delta > 0.2 {
        log::warn!(
            "first-order slow mode used at δ = {}; corrections of order δ are not small",
            rates.delta
        );
    }
    let r = thermal.ratio();
    let lambda1 = -(1.0 + 3.0 * thermal.occupation()) * rates.delta * rates.gamma0;
    let mut v = PauliVector::zeros();
    v.set(0, 1, r);
    v.set(1, 0, r);
    v.set(1, 1, 1.0 + r * r);
    v.set(2, 2, 1.0);
    v.set(3, 3, 1.0);
    (lambda1, v)
}
