//! Two-qubit states in density-matrix and Pauli-product form.
//!
//! A state is stored either as a 4×4 density matrix in the z basis
//! (qubit 1 is the most significant index, `|↑⟩ = (1, 0)`) or as the
//! sixteen expectation values `α_ij = tr(ρ σ_i ⊗ σ_j)` with
//! `σ_0 = I, σ_1 = σ_x, σ_2 = σ_y, σ_3 = σ_z`. The 4×4 array `α_ij` is
//! flattened row-major, so component `(i, j)` lives at index `4 i + j`.

use std::sync::OnceLock;

use nalgebra::{Matrix2, Matrix4, SVector, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue still accepted as non-negative.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Largest imaginary part tolerated when reading `α_ij` off a density matrix.
pub const REALITY_TOL: f64 = 1e-10;
/// Eigenvalues of `ρ ρ̃` below this are treated as zero.
pub const CONCURRENCE_DUST: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Single-qubit Pauli matrix, `0 → I`, `1 → x`, `2 → y`, `3 → z`.
pub fn pauli(i: usize) -> Matrix2<C64> {
    match i {
        0 => Matrix2::new(ONE, ZERO, ZERO, ONE),
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -I, I, ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index {i} out of range"),
    }
}

fn product_basis() -> &'static [Matrix4<C64>; 16] {
    static BASIS: OnceLock<[Matrix4<C64>; 16]> = OnceLock::new();
    BASIS.get_or_init(|| {
        std::array::from_fn(|k| {
            let m = pauli(k / 4).kronecker(&pauli(k % 4));
            Matrix4::from_fn(|r, c| m[(r, c)])
        })
    })
}

/// `σ_i ⊗ σ_j`.
pub fn pauli_product(i: usize, j: usize) -> &'static Matrix4<C64> {
    assert!(i < 4 && j < 4, "Pauli index out of range");
    &product_basis()[4 * i + j]
}

/// Generalised Bloch vector of a two-qubit operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliVector {
    alpha: [f64; 16],
}

impl PauliVector {
    pub const fn from_components(alpha: [f64; 16]) -> Self {
        Self { alpha }
    }

    pub const fn zeros() -> Self {
        Self { alpha: [0.0; 16] }
    }

    /// The maximally mixed state `I/4`.
    pub const fn maximally_mixed() -> Self {
        let mut alpha = [0.0; 16];
        alpha[0] = 1.0;
        Self { alpha }
    }

    #[inline]
    pub const fn index(i: usize, j: usize) -> usize {
        4 * i + j
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.alpha[Self::index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.alpha[Self::index(i, j)] = value;
    }

    pub fn components(&self) -> &[f64; 16] {
        &self.alpha
    }

    pub fn to_vector(&self) -> SVector<f64, 16> {
        SVector::from_column_slice(&self.alpha)
    }

    pub fn from_vector(v: &SVector<f64, 16>) -> Self {
        let mut alpha = [0.0; 16];
        alpha.copy_from_slice(v.as_slice());
        Self { alpha }
    }

    /// Rescale so that `α_00 = 1`.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.alpha[0];
        if norm.abs() < 1e-14 {
            return Err(Error::InvalidState(
                "cannot normalise a vector with vanishing trace".into(),
            ));
        }
        let mut alpha = self.alpha;
        alpha.iter_mut().for_each(|a| *a /= norm);
        alpha[0] = 1.0;
        Ok(Self { alpha })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.alpha
            .iter()
            .zip(&other.alpha)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `Λ = ⟨σ¹·σ²⟩`, confined to `[-3, 1]` for physical states.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct CorrelationScalar(f64);

impl CorrelationScalar {
    pub const MIN: f64 = -3.0;
    pub const MAX: f64 = 1.0;

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(Self::MIN - 1e-9..=Self::MAX + 1e-9).contains(&value) {
            return Err(Error::Domain(format!(
                "spin correlation {value} outside [-3, 1]"
            )));
        }
        Ok(Self(value.clamp(Self::MIN, Self::MAX)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A 4×4 density matrix in the z basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitDensityMatrix {
    entries: Matrix4<C64>,
}

impl TwoQubitDensityMatrix {
    /// Checked constructor: Hermitian, unit trace and positive semidefinite.
    pub fn new(entries: Matrix4<C64>) -> Result<Self> {
        let rho = Self { entries };
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps a matrix without checking positivity. Hermiticity and trace
    /// are still verified wherever the matrix is consumed.
    pub fn new_unchecked(entries: Matrix4<C64>) -> Self {
        Self { entries }
    }

    /// `|ψ⟩⟨ψ|` for a normalised ket.
    pub fn from_pure(ket: &Vector4<C64>) -> Result<Self> {
        let norm = ket.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!("ket norm {norm} is not 1")));
        }
        Self::new(ket * ket.adjoint())
    }

    pub fn entries(&self) -> &Matrix4<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> Matrix4<C64> {
        self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues(&hermitian_part(&self.entries))
    }

    pub fn check_hermitian_unit_trace(&self) -> Result<()> {
        let m = &self.entries;
        let mut worst: f64 = 0.0;
        for r in 0..4 {
            for c in r..4 {
                worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
            }
        }
        if worst > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!(
                "matrix is not Hermitian (deviation {worst:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr - ONE).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.check_hermitian_unit_trace()?;
        let min = self.eigenvalues()[0];
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "matrix has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }
}

fn hermitian_part(m: &Matrix4<C64>) -> Matrix4<C64> {
    (m + m.adjoint()).scale(0.5)
}

fn hermitian_eigenvalues(m: &Matrix4<C64>) -> [f64; 4] {
    let eig = m.symmetric_eigenvalues();
    let mut out = [eig[0], eig[1], eig[2], eig[3]];
    out.sort_by(f64::total_cmp);
    out
}

/// `α_ij = tr(ρ σ_i ⊗ σ_j)`.
pub fn density_to_bloch(rho: &TwoQubitDensityMatrix) -> Result<PauliVector> {
    rho.check_hermitian_unit_trace()?;
    let mut alpha = [0.0; 16];
    for (k, sigma) in product_basis().iter().enumerate() {
        let value = (rho.entries * sigma).trace();
        if value.im.abs() > REALITY_TOL {
            return Err(Error::InvalidState(format!(
                "component {k} has imaginary part {:.3e}",
                value.im
            )));
        }
        alpha[k] = value.re;
    }
    Ok(PauliVector { alpha })
}

/// `ρ = ¼ Σ α_ij σ_i ⊗ σ_j`. Positivity is not checked.
pub fn bloch_to_density(v: &PauliVector) -> TwoQubitDensityMatrix {
    let mut m = Matrix4::<C64>::zeros();
    for (k, sigma) in product_basis().iter().enumerate() {
        let a = v.alpha[k];
        if a != 0.0 {
            m += sigma.scale(0.25 * a);
        }
    }
    TwoQubitDensityMatrix { entries: m }
}

pub fn correlation_scalar(v: &PauliVector) -> CorrelationScalar {
    let lambda = v.get(1, 1) + v.get(2, 2) + v.get(3, 3);
    CorrelationScalar(lambda.clamp(CorrelationScalar::MIN, CorrelationScalar::MAX))
}

/// `√μ₁ − √μ₂ − √μ₃ − √μ₄` before clipping at zero.
///
/// The `μ_k` are computed as the spectrum of the Hermitian matrix
/// `√ρ ρ̃ √ρ`, which shares its eigenvalues with `ρ ρ̃`.
pub fn concurrence_margin(rho: &Matrix4<C64>) -> f64 {
    let h = hermitian_part(rho);
    let eig = h.symmetric_eigen();
    let sqrt_diag = Matrix4::from_diagonal(&eig.eigenvalues.map(|l| C64::from(l.max(0.0).sqrt())));
    let sqrt_rho = &eig.eigenvectors * sqrt_diag * eig.eigenvectors.adjoint();

    let yy = pauli_product(2, 2);
    let flipped = yy * h.conjugate() * yy;
    let m = hermitian_part(&(&sqrt_rho * flipped * &sqrt_rho));

    let mut mu = hermitian_eigenvalues(&m);
    mu.reverse();
    let roots = mu.map(|x| if x < CONCURRENCE_DUST { 0.0 } else { x.sqrt() });
    roots[0] - roots[1] - roots[2] - roots[3]
}

/// Wootters concurrence, in `[0, 1]`.
pub fn wootters_concurrence(rho: &TwoQubitDensityMatrix) -> Result<f64> {
    rho.validate()?;
    Ok(concurrence_margin(&rho.entries).clamp(0.0, 1.0))
}

/// Trace distance `½‖ρ_a − ρ_b‖₁` between two Pauli vectors.
pub fn trace_distance(a: &PauliVector, b: &PauliVector) -> f64 {
    let mut diff = PauliVector::zeros();
    for k in 0..16 {
        diff.alpha[k] = a.alpha[k] - b.alpha[k];
    }
    let m = bloch_to_density(&diff).entries;
    0.5 * hermitian_eigenvalues(&m).iter().map(|l| l.abs()).sum::<f64>()
}

/// Frequently used states. Kets are in the z basis.
pub mod states {
    use super::*;

    fn ket(amplitudes: [f64; 4]) -> Vector4<C64> {
        Vector4::from_fn(|k, _| C64::from(amplitudes[k]))
    }

    fn pure(amplitudes: [f64; 4]) -> PauliVector {
        let rho = TwoQubitDensityMatrix::from_pure(&ket(amplitudes))
            .expect("built-in ket is normalised");
        density_to_bloch(&rho).expect("built-in state is valid")
    }

    /// `(|↑↓⟩ − |↓↑⟩)/√2`, `Λ = −3`.
    pub fn singlet() -> PauliVector {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        pure([0.0, s, -s, 0.0])
    }

    /// `(|↑↓⟩ + |↓↑⟩)/√2`, `Λ = +1`.
    pub fn triplet_zero() -> PauliVector {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        pure([0.0, s, s, 0.0])
    }

    pub fn up_up_z() -> PauliVector {
        pure([1.0, 0.0, 0.0, 0.0])
    }

    /// `|↑↓⟩` in z, `Λ = −1`.
    pub fn up_down_z() -> PauliVector {
        pure([0.0, 1.0, 0.0, 0.0])
    }

    /// `|↑↑⟩ₓ`, the ground state of `−(Δ/2)(σ_x¹ + σ_x²)`.
    pub fn up_up_x() -> PauliVector {
        pure([0.5, 0.5, 0.5, 0.5])
    }

    pub fn maximally_mixed() -> PauliVector {
        PauliVector::maximally_mixed()
    }

    /// `p |Ψ⁻⟩⟨Ψ⁻| + (1 − p) I/4`.
    pub fn werner(p: f64) -> PauliVector {
        let mut v = PauliVector::maximally_mixed();
        for i in 1..4 {
            v.set(i, i, -p);
        }
        v
    }

    /// Product of two single-qubit states with Bloch vectors `n1`, `n2`
    /// (each of length at most one).
    pub fn product(n1: [f64; 3], n2: [f64; 3]) -> PauliVector {
        let a = [1.0, n1[0], n1[1], n1[2]];
        let b = [1.0, n2[0], n2[1], n2[2]];
        let mut v = PauliVector::zeros();
        for i in 0..4 {
            for j in 0..4 {
                v.set(i, j, a[i] * b[j]);
            }
        }
        v
    }

    /// Two-qubit thermal product state with polarisation `r` along `+x`.
    pub fn thermal(r: f64) -> PauliVector {
        product([r, 0.0, 0.0], [r, 0.0, 0.0])
    }
}
