//! Python module `twospin`.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use twospin::bath::{BathThermal, LambShift, RateSet};
use twospin::bloch::{
    self, bloch_to_density, correlation_scalar, density_to_bloch, wootters_concurrence,
    CorrelationScalar, TwoQubitDensityMatrix,
};
use twospin::dynamics;
use twospin::iontrap::{self, TrapConfig};
use twospin::liouvillian::{self as liou, ModelParams};

fn err(e: twospin::Error) -> PyErr {
    use twospin::Error as E;
    match e {
        E::Numerical(_)
        | E::Degenerate { .. }
        | E::NullSpace { .. }
        | E::Defective { .. }
        | E::Integration { .. } => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn lambda(x: f64) -> PyResult<CorrelationScalar> {
    CorrelationScalar::new(x).map_err(err)
}

fn thermal(r: f64) -> PyResult<BathThermal> {
    BathThermal::from_ratio(r).map_err(err)
}

/// Sixteen expectation values `<σ_i ⊗ σ_j>`, index `4 i + j`.
#[pyclass(name = "PauliVector", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPauliVector(bloch::PauliVector);

#[pymethods]
impl PyPauliVector {
    #[new]
    fn new(components: [f64; 16]) -> Self {
        Self(bloch::PauliVector::from_components(components))
    }

    /// From a 4×4 density matrix given as nested lists of complex numbers.
    #[staticmethod]
    fn from_density(rows: [[Complex64; 4]; 4]) -> PyResult<Self> {
        let m = nalgebra_matrix(rows);
        let rho = TwoQubitDensityMatrix::new(m).map_err(err)?;
        density_to_bloch(&rho).map(Self).map_err(err)
    }

    #[getter]
    fn components(&self) -> [f64; 16] {
        *self.0.components()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<f64> {
        if i > 3 || j > 3 {
            return Err(PyValueError::new_err("Pauli indices run from 0 to 3"));
        }
        Ok(self.0.get(i, j))
    }

    fn density(&self) -> [[Complex64; 4]; 4] {
        let m = bloch_to_density(&self.0);
        std::array::from_fn(|r| std::array::from_fn(|c| m.entries()[(r, c)]))
    }

    fn correlation(&self) -> f64 {
        correlation_scalar(&self.0).value()
    }

    fn concurrence(&self) -> PyResult<f64> {
        wootters_concurrence(&bloch_to_density(&self.0)).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("PauliVector({:?})", self.0.components())
    }
}

fn nalgebra_matrix(rows: [[Complex64; 4]; 4]) -> nalgebra::Matrix4<Complex64> {
    nalgebra::Matrix4::from_fn(|r, c| rows[r][c])
}

/// Named states: `singlet`, `triplet_zero`, `up_down`, `up_up`,
/// `maximally_mixed`, plus `thermal(r)` and `werner(p)` as functions.
#[pyfunction]
fn state(name: &str) -> PyResult<PyPauliVector> {
    use bloch::states as s;
    let v = match name {
        "singlet" => s::singlet(),
        "triplet_zero" => s::triplet_zero(),
        "up_down" => s::up_down_z(),
        "up_up" => s::up_up_z(),
        "maximally_mixed" => s::maximally_mixed(),
        other => return Err(PyValueError::new_err(format!("unknown state {other:?}"))),
    };
    Ok(PyPauliVector(v))
}

#[pyfunction]
fn thermal_state(r: f64) -> PyPauliVector {
    PyPauliVector(bloch::states::thermal(r))
}

#[pyfunction]
fn werner_state(p: f64) -> PyPauliVector {
    PyPauliVector(bloch::states::werner(p))
}

/// A separable-where-possible state with the given spin correlation.
#[pyfunction]
fn representative_state(lambda_corr: f64) -> PyResult<PyPauliVector> {
    Ok(PyPauliVector(dynamics::representative_state(lambda(lambda_corr)?)))
}

/// Classified spectrum of the 16×16 generator.
#[pyclass(name = "Model", frozen)]
pub struct PyModel {
    generator: liou::GeneratorMatrix,
    report: liou::SpectrumReport,
}

#[pymethods]
impl PyModel {
    #[new]
    #[pyo3(signature = (delta, r, gamma0 = 1.0, field = 20.0, lamb_a = 0.0, lamb_b = 0.0, xi = 0.0))]
    fn new(delta: f64, r: f64, gamma0: f64, field: f64, lamb_a: f64, lamb_b: f64, xi: f64) -> PyResult<Self> {
        let rates = RateSet::new(gamma0, &thermal(r)?, delta).map_err(err)?;
        let params = ModelParams::new(field)
            .map_err(err)?
            .with_lamb(LambShift { a: lamb_a, b: lamb_b })
            .with_exchange(xi);
        let generator =
            liou::build_generator(&params, &rates, lamb_a != 0.0 || lamb_b != 0.0, xi != 0.0).map_err(err)?;
        let report = liou::classify_spectrum(&generator, &rates).map_err(err)?;
        Ok(Self { generator, report })
    }

    /// Generator rows, `dα/dt = L α`.
    fn generator(&self) -> Vec<Vec<f64>> {
        let m = self.generator.entries();
        (0..16).map(|r| (0..16).map(|c| m[(r, c)]).collect()).collect()
    }

    #[getter]
    fn eigenvalues(&self) -> Vec<Complex64> {
        self.report.eigensystem().eigenvalues().to_vec()
    }

    /// One of `thermal`, `slow`, `oscillatory`, `fast` per eigenvalue.
    #[getter]
    fn labels(&self) -> Vec<&'static str> {
        self.report
            .labels()
            .iter()
            .map(|l| match l {
                liou::ModeLabel::Thermal => "thermal",
                liou::ModeLabel::Slow => "slow",
                liou::ModeLabel::Oscillatory => "oscillatory",
                liou::ModeLabel::Fast => "fast",
            })
            .collect()
    }

    #[getter]
    fn slow_rate(&self) -> f64 {
        self.report.slow_rate()
    }

    #[getter]
    fn oscillatory(&self) -> Complex64 {
        self.report.oscillatory()
    }

    fn thermal_vector(&self) -> PyPauliVector {
        PyPauliVector(self.report.thermal_vector())
    }

    fn slow_vector(&self) -> PyPauliVector {
        PyPauliVector(self.report.slow_vector())
    }

    fn coefficients(&self, initial: &PyPauliVector) -> PyResult<Vec<Complex64>> {
        liou::mode_coefficients(&self.report, &initial.0)
            .map(|a| a.to_vec())
            .map_err(err)
    }

    /// Spectral propagation; returns `(states, concurrence)`.
    fn propagate(&self, initial: &PyPauliVector, times: Vec<f64>) -> PyResult<(Vec<PyPauliVector>, Vec<f64>)> {
        let t = dynamics::propagate_spectral(&self.report, &initial.0, &times).map_err(err)?;
        Ok((t.states.into_iter().map(PyPauliVector).collect(), t.concurrence))
    }

    /// Direct adaptive integration of the same generator.
    fn integrate(&self, initial: &PyPauliVector, times: Vec<f64>) -> PyResult<(Vec<PyPauliVector>, Vec<f64>)> {
        let t = dynamics::propagate_ode(&self.generator, &initial.0, &times, &Default::default())
            .map_err(err)?;
        Ok((t.states.into_iter().map(PyPauliVector).collect(), t.concurrence))
    }
}

#[pyfunction]
#[pyo3(signature = (r, delta, lambda_corr, t, gamma0 = 1.0))]
fn analytic_concurrence(r: f64, delta: f64, lambda_corr: f64, t: f64, gamma0: f64) -> PyResult<f64> {
    let th = thermal(r)?;
    let rates = RateSet::new(gamma0, &th, delta).map_err(err)?;
    Ok(dynamics::analytic_concurrence(&th, &rates, lambda(lambda_corr)?, t))
}

#[pyfunction]
fn generation_condition(r: f64, lambda_corr: f64) -> PyResult<bool> {
    Ok(dynamics::generation_condition(&thermal(r)?, lambda(lambda_corr)?))
}

/// Survival of generated entanglement from the representative state.
#[pyfunction]
#[pyo3(signature = (r, delta, lambda_corr, gamma0 = 1.0))]
fn survival_time<'py>(py: Python<'py>, r: f64, delta: f64, lambda_corr: f64, gamma0: f64) -> PyResult<Bound<'py, PyDict>> {
    let th = thermal(r)?;
    let rates = RateSet::new(gamma0, &th, delta).map_err(err)?;
    let rep = dynamics::survival_time(&th, &rates, lambda(lambda_corr)?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("generated", rep.generated)?;
    d.set_item("t_c", rep.t_c)?;
    d.set_item("scaled_t_c", rep.scaled_t_c)?;
    d.set_item("peak_concurrence", rep.peak_concurrence)?;
    d.set_item("peak_time", rep.peak_time)?;
    d.set_item("lambda1", rep.lambda1)?;
    d.set_item("numeric_t_c", rep.numeric_t_c)?;
    d.set_item("numeric_scaled_t_c", rep.numeric_scaled_t_c)?;
    Ok(d)
}

/// Ion-trap feasibility; keyword arguments override the default trap.
#[pyfunction]
#[pyo3(signature = (**overrides))]
fn plan_iontrap<'py>(py: Python<'py>, overrides: Option<&Bound<'py, PyDict>>) -> PyResult<Bound<'py, PyDict>> {
    let mut cfg = TrapConfig::default();
    if let Some(o) = overrides {
        for (k, v) in o.iter() {
            let key: String = k.extract()?;
            match key.as_str() {
                "trap_frequency" => cfg.trap_frequency = v.extract()?,
                "ion_count" => cfg.ion_count = v.extract()?,
                "rabi_ratio" => cfg.rabi_ratio = v.extract()?,
                "ohmic_coupling" => cfg.ohmic_coupling = v.extract()?,
                "addressed_spacing" => cfg.addressed_spacing = v.extract()?,
                "bath_dimension" => cfg.bath_dimension = v.extract()?,
                "target_r" => cfg.target_r = v.extract()?,
                "kappa_d" => cfg.kappa_d = v.extract()?,
                "exchange_xi" => cfg.exchange_xi = v.extract()?,
                other => return Err(PyValueError::new_err(format!("unknown trap parameter {other:?}"))),
            }
        }
    }
    let r = iontrap::plan(&cfg).map_err(err)?.report;
    let d = PyDict::new(py);
    d.set_item("kappa_d", r.kappa_d)?;
    d.set_item("delta", r.delta)?;
    d.set_item("delta_exact", r.delta_exact)?;
    d.set_item("gamma0", r.gamma0)?;
    d.set_item("revival_time", r.revival_time)?;
    d.set_item("revival_gamma0", r.revival_gamma0)?;
    d.set_item("t_peak_estimate", r.t_peak_estimate)?;
    d.set_item("decay_window", r.decay_window)?;
    d.set_item("t_c", r.t_c)?;
    d.set_item("peak_concurrence", r.peak_concurrence)?;
    d.set_item("generated", r.generated)?;
    d.set_item("feasible", r.feasible)?;
    d.set_item("bath_temperature", r.bath_temperature)?;
    d.set_item("diagnostics", r.diagnostics)?;
    Ok(d)
}

#[pymodule(name = "twospin")]
fn twospin_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauliVector>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(state, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_state, m)?)?;
    m.add_function(wrap_pyfunction!(werner_state, m)?)?;
    m.add_function(wrap_pyfunction!(representative_state, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(generation_condition, m)?)?;
    m.add_function(wrap_pyfunction!(survival_time, m)?)?;
    m.add_function(wrap_pyfunction!(plan_iontrap, m)?)?;
    Ok(())
}
