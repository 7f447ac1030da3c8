use nalgebra::{Matrix4, SMatrix};
use serde::{Deserialize, Serialize};

use crate::bath::{LambShift, RateSet};
use crate::bloch::{pauli_product, PauliVector, C64};
use crate::error::{Error, Result};

pub type Matrix16 = SMatrix<f64, 16, 16>;

/// Coherent-sector parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Static field `Δ`; `H_S = −(Δ/2)(σ_x¹ + σ_x²)`.
    pub delta_field: f64,
    pub lamb_a: f64,
    pub lamb_b: f64,
    /// Exchange strength `ξ` of `H_E = ξ σ¹·σ²`.
    pub exchange_xi: f64,
}

impl ModelParams {
    pub fn new(delta_field: f64) -> Result<Self> {
        Self {
            delta_field,
            lamb_a: 0.0,
            lamb_b: 0.0,
            exchange_xi: 0.0,
        }
        .validated()
    }

    pub fn with_lamb(mut self, shift: LambShift) -> Self {
        self.lamb_a = shift.a;
        self.lamb_b = shift.b;
        self
    }

    pub fn with_exchange(mut self, xi: f64) -> Self {
        self.exchange_xi = xi;
        self
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.delta_field > 0.0) || !self.delta_field.is_finite() {
            return Err(Error::Domain(format!(
                "field Δ must be positive, got {}",
                self.delta_field
            )));
        }
        if ![self.lamb_a, self.lamb_b, self.exchange_xi]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(Error::Domain("Lamb-shift and exchange strengths must be finite".into()));
        }
        Ok(self)
    }
}

/// Real 16×16 generator `L` with `dα/dt = L α`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrix {
    entries: Matrix16,
    params: ModelParams,
    rates: RateSet,
    include_lamb: bool,
    include_exchange: bool,
}

impl GeneratorMatrix {
    pub fn entries(&self) -> &Matrix16 {
        &self.entries
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn rates(&self) -> &RateSet {
        &self.rates
    }

    pub fn includes_lamb(&self) -> bool {
        self.include_lamb
    }

    pub fn includes_exchange(&self) -> bool {
        self.include_exchange
    }

    /// `L α`.
    pub fn apply(&self, alpha: &PauliVector) -> PauliVector {
        PauliVector::from_vector(&(self.entries * alpha.to_vector()))
    }

    /// Largest `|Re|` among rates and frequencies, used to scale tolerances.
    pub fn frequency_scale(&self) -> f64 {
        let p = &self.params;
        [
            self.rates.gamma11_plus,
            p.delta_field,
            if self.include_lamb { p.lamb_a.abs() + p.lamb_b.abs() } else { 0.0 },
            if self.include_exchange { p.exchange_xi.abs() } else { 0.0 },
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn export(&self) -> GeneratorExport {
        GeneratorExport {
            rows: (0..16)
                .map(|r| (0..16).map(|c| self.entries[(r, c)]).collect())
                .collect(),
            params: self.params,
            rates: self.rates,
            include_lamb: self.include_lamb,
            include_exchange: self.include_exchange,
        }
    }
}

/// JSON form of a generator, rows in the `4i + j` component order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorExport {
    pub rows: Vec<Vec<f64>>,
    pub params: ModelParams,
    pub rates: RateSet,
    pub include_lamb: bool,
    pub include_exchange: bool,
}

fn sum_x() -> Matrix4<C64> {
    pauli_product(1, 0) + pauli_product(0, 1)
}

/// Total Hamiltonian of the coherent sector.
pub fn hamiltonian(params: &ModelParams, include_lamb: bool, include_exchange: bool) -> Matrix4<C64> {
    let mut h = sum_x().scale(-0.5 * params.delta_field);
    if include_lamb {
        h += sum_x().scale(params.lamb_a);
        h += (pauli_product(3, 3) + pauli_product(2, 2)).scale(params.lamb_b);
    }
    if include_exchange {
        h += (pauli_product(1, 1) + pauli_product(2, 2) + pauli_product(3, 3))
            .scale(params.exchange_xi);
    }
    h
}

/// `A_n(±Δ) = (σ_z^n ∓ iσ_y^n)/2` for qubit `n ∈ {0, 1}`.
pub fn jump_operator(qubit: usize, positive: bool) -> Matrix4<C64> {
    let (z, y) = match qubit {
        0 => (pauli_product(3, 0), pauli_product(2, 0)),
        1 => (pauli_product(0, 3), pauli_product(0, 2)),
        _ => panic!("qubit index {qubit} out of range"),
    };
    let sign = if positive { -1.0 } else { 1.0 };
    (z + y * C64::new(0.0, sign)).scale(0.5)
}

/// `D(ρ) = Σ_ω Σ_nm γ_nm(ω)(A_m ρ A_n† − ½{A_n† A_m, ρ})`, secular form.
pub fn dissipator(rates: &RateSet, rho: &Matrix4<C64>) -> Matrix4<C64> {
    let mut out = Matrix4::zeros();
    for positive in [true, false] {
        let gamma = rates.matrix(positive);
        let ops = [jump_operator(0, positive), jump_operator(1, positive)];
        for n in 0..2 {
            for m in 0..2 {
                let g = gamma[n][m];
                if g == 0.0 {
                    continue;
                }
                let an_dag = ops[n].adjoint();
                let am = &ops[m];
                let prod = &an_dag * am;
                out += (am * rho * &an_dag - (&prod * rho + rho * &prod).scale(0.5)).scale(g);
            }
        }
    }
    out
}

/// Builds `L` column by column: each basis operator `σ_i ⊗ σ_j / 4` is
/// pushed through `−i[H, ·] + D(·)` and projected back onto the Pauli
/// products.
pub fn build_generator(
    params: &ModelParams,
    rates: &RateSet,
    include_lamb: bool,
    include_exchange: bool,
) -> Result<GeneratorMatrix> {
    let params = params.validated()?;
    if rates.min_rate_eigenvalue() < -1e-12 * rates.gamma11_plus.max(1.0) {
        return Err(Error::InvalidRates("rate matrix is not positive semidefinite".into()));
    }
    let h = hamiltonian(&params, include_lamb, include_exchange);
    // Entries are sums of rates and frequencies; anything this small is rounding.
    let snap = 1e-14 * (rates.gamma11_plus + h.norm());
    let minus_i = C64::new(0.0, -1.0);
    let mut entries = Matrix16::zeros();
    for c in 0..16 {
        let basis = pauli_product(c / 4, c % 4).scale(0.25);
        let image = (&h * &basis - &basis * &h) * minus_i + dissipator(rates, &basis);
        for r in 0..16 {
            let value = (pauli_product(r / 4, r % 4) * image).trace();
            debug_assert!(value.im.abs() < 1e-12 * (1.0 + value.re.abs()));
            entries[(r, c)] = if value.re.abs() < snap { 0.0 } else { value.re };
        }
    }
    Ok(GeneratorMatrix {
        entries,
        params,
        rates: *rates,
        include_lamb,
        include_exchange,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::BathThermal;

    fn rates(delta: f64, r: f64) -> RateSet {
        RateSet::new(1.0, &BathThermal::from_ratio(r).unwrap(), delta).unwrap()
    }

    #[test]
    fn trace_row_vanishes() {
        let p = ModelParams::new(7.0)
            .unwrap()
            .with_lamb(LambShift { a: 0.3, b: -0.8 })
            .with_exchange(1.1);
        for flags in [(false, false), (true, false), (false, true), (true, true)] {
            let l = build_generator(&p, &rates(0.05, 0.9), flags.0, flags.1).unwrap();
            assert!((0..16).all(|c| l.entries()[(0, c)] == 0.0));
        }
    }

    #[test]
    fn closed_system_is_antisymmetric() {
        // A commutator generator is anti-Hermitian in the Hilbert–Schmidt
        // inner product, which is diagonal in the Pauli basis.
        let l = build_generator(&ModelParams::new(3.0).unwrap(), &RateSet::zero(), false, false).unwrap();
        let m = l.entries();
        assert!((m + m.transpose()).norm() < 1e-14);
        // Heisenberg picture: d⟨σ_y⟩/dt = ⟨i[H, σ_y]⟩ = Δ⟨σ_z⟩.
        assert!((m[(PauliVector::index(2, 0), PauliVector::index(3, 0))] - 3.0).abs() < 1e-14);
        assert!((m[(PauliVector::index(3, 0), PauliVector::index(2, 0))] + 3.0).abs() < 1e-14);
    }

    #[test]
    fn jump_operators_lower_energy() {
        let p = ModelParams::new(2.0).unwrap();
        let h = hamiltonian(&p, false, false);
        for q in 0..2 {
            let a = jump_operator(q, true);
            let comm = &h * &a - &a * &h;
            // [H, A(ω)] = −ω A(ω)
            assert!((comm + a.scale(2.0)).norm() < 1e-14);
            assert!((jump_operator(q, false) - a.adjoint()).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(0.0).is_err());
        assert!(ModelParams::new(f64::NAN).is_err());
        let bad = ModelParams::new(1.0).unwrap().with_exchange(f64::INFINITY);
        assert!(build_generator(&bad, &RateSet::zero(), false, true).is_err());
    }

    #[test]
    fn export_round_trips_through_json() {
        let l = build_generator(&ModelParams::new(5.0).unwrap(), &rates(0.1, 0.5), false, false).unwrap();
        let json = serde_json::to_string(&l.export()).unwrap();
        let back: GeneratorExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.rows.len(), 16);
        assert_eq!(back.rows[3][5], l.entries()[(3, 5)]);
    }
}
