use std::io::Write;

use serde::{Deserialize, Serialize};

use super::ode::{integrate, OdeOptions};
use crate::bloch::{bloch_to_density, concurrence_margin, PauliVector};
use crate::error::{Error, Result};
use crate::liouvillian::{coefficients_checked, Eigensystem, GeneratorMatrix, SpectrumReport};

/// States whose density matrix has an eigenvalue below `−POSITIVITY_FLAG`
/// are flagged.
pub const POSITIVITY_FLAG: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeUnit {
    /// Multiples of `1/γ₀`.
    Gamma0,
    /// Dimensionless `|λ₁| t`.
    Lambda1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Spectral,
    Ode,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub unit: TimeUnit,
    pub states: Vec<PauliVector>,
    pub concurrence: Vec<f64>,
    /// `true` where the state has drifted out of the positive cone.
    pub positivity_violation: Vec<bool>,
    pub method: Method,
}

impl Trajectory {
    fn from_states(times: &[f64], states: Vec<PauliVector>, method: Method) -> Self {
        let mut concurrence = Vec::with_capacity(states.len());
        let mut positivity_violation = Vec::with_capacity(states.len());
        for s in &states {
            let rho = bloch_to_density(s);
            positivity_violation.push(rho.eigenvalues()[0] < -POSITIVITY_FLAG);
            concurrence.push(concurrence_margin(rho.entries()).clamp(0.0, 1.0));
        }
        Self {
            times: times.to_vec(),
            unit: TimeUnit::Gamma0,
            states,
            concurrence,
            positivity_violation,
            method,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Index and value of the largest concurrence.
    pub fn peak(&self) -> (usize, f64) {
        self.concurrence
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, c)| if c > best.1 { (k, c) } else { best })
    }

    pub fn any_positivity_violation(&self) -> bool {
        self.positivity_violation.iter().any(|&v| v)
    }

    /// Times expressed in `|λ₁| t`. Only valid on a trajectory in `γ₀` units.
    pub fn scaled_times(&self, lambda1: f64) -> Vec<f64> {
        match self.unit {
            TimeUnit::Gamma0 => self.times.iter().map(|t| t * lambda1.abs()).collect(),
            TimeUnit::Lambda1 => self.times.clone(),
        }
    }

    /// Writes the trajectory as CSV. `analytic` holds one value per row;
    /// when absent the column is `nan`.
    pub fn write_csv<W: Write>(&self, out: &mut W, lambda1: f64, analytic: Option<&[f64]>) -> Result<()> {
        if let Some(a) = analytic {
            if a.len() != self.len() {
                return Err(Error::Domain(format!(
                    "analytic column has {} rows, trajectory has {}",
                    a.len(),
                    self.len()
                )));
            }
        }
        let io = |e| Error::Io {
            path: "<trajectory csv>".into(),
            source: e,
        };
        let mut header = String::from("t_gamma0,t_lambda1");
        for i in 0..4 {
            for j in 0..4 {
                header.push_str(&format!(",alpha_{i}{j}"));
            }
        }
        header.push_str(",concurrence_numeric,concurrence_analytic");
        writeln!(out, "{header}").map_err(io)?;
        let (t_gamma0, t_lambda1): (Vec<f64>, Vec<f64>) = match self.unit {
            TimeUnit::Gamma0 => (self.times.clone(), self.scaled_times(lambda1)),
            TimeUnit::Lambda1 => (
                self.times.iter().map(|s| s / lambda1.abs()).collect(),
                self.times.clone(),
            ),
        };
        for k in 0..self.len() {
            let mut row = format!("{},{}", format_number(t_gamma0[k]), format_number(t_lambda1[k]));
            for a in self.states[k].components() {
                row.push(',');
                row.push_str(&format_number(*a));
            }
            row.push(',');
            row.push_str(&format_number(self.concurrence[k]));
            row.push(',');
            row.push_str(&format_number(analytic.map_or(f64::NAN, |a| a[k])));
            writeln!(out, "{row}").map_err(io)?;
        }
        Ok(())
    }
}

/// Nine significant digits; infinities as `inf`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.8e}")
    }
}

pub(crate) fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::Domain("no output times".into()));
    }
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::Domain("output times must be finite and non-negative".into()));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("output times must be strictly increasing".into()));
    }
    Ok(())
}

/// `0` followed by `count` log-spaced points from `start` to `end`.
pub fn default_times(start: f64, end: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count + 1);
    out.push(0.0);
    if count == 1 {
        out.push(end);
        return out;
    }
    let (a, b) = (start.ln(), end.ln());
    for k in 0..count {
        out.push((a + (b - a) * k as f64 / (count - 1) as f64).exp());
    }
    out
}

pub(crate) fn spectral_states(system: &Eigensystem, initial: &PauliVector, times: &[f64]) -> Result<Vec<PauliVector>> {
    let a = coefficients_checked(system, initial)?;
    Ok(times
        .iter()
        .map(|&t| if t == 0.0 { *initial } else { system.evolve(&a, t) })
        .collect())
}

/// `α(t) = Σ_l a_l α_l e^{λ_l t}`.
pub fn propagate_spectral(report: &SpectrumReport, initial: &PauliVector, times: &[f64]) -> Result<Trajectory> {
    check_times(times)?;
    let states = spectral_states(report.eigensystem(), initial, times)?;
    Ok(Trajectory::from_states(times, states, Method::Spectral))
}

/// Direct integration of `α̇ = Lα`.
pub fn propagate_ode(
    generator: &GeneratorMatrix,
    initial: &PauliVector,
    times: &[f64],
    options: &OdeOptions,
) -> Result<Trajectory> {
    check_times(times)?;
    let l = *generator.entries();
    let ys = integrate(|y| l * y, &initial.to_vector(), times, options)?;
    let states = ys.iter().map(PauliVector::from_vector).collect();
    Ok(Trajectory::from_states(times, states, Method::Ode))
}

/// Spectral propagation from the raw eigensystem, falling back to ODE
/// integration when the eigenbasis is defective.
pub fn evolve(generator: &GeneratorMatrix, initial: &PauliVector, times: &[f64]) -> Result<Trajectory> {
    check_times(times)?;
    let spectral = Eigensystem::decompose(generator)
        .and_then(|system| spectral_states(&system, initial, times));
    match spectral {
        Ok(states) => Ok(Trajectory::from_states(times, states, Method::Spectral)),
        Err(Error::Defective { condition }) => {
            log::warn!("defective eigenbasis (condition {condition:e}); integrating directly");
            propagate_ode(generator, initial, times, &OdeOptions::default())
        }
        Err(e) => Err(e),
    }
}
