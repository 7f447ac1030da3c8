use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutoffForm {
    /// `e^{−ω/ω_c}`.
    #[default]
    Exponential,
    /// Step function at `ω_c`.
    Hard,
}

/// Bath spectral density `J(ω)`, zero for `ω < 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum SpectralDensity {
    /// `J(ω) = (coupling/2) ω · cutoff(ω)`.
    Ohmic {
        coupling: f64,
        cutoff_frequency: f64,
        cutoff_form: CutoffForm,
    },
    Tabulated(TabulatedDensity),
}

impl SpectralDensity {
    /// Ohmic density with the default exponential cutoff at `10 Δ`.
    pub fn ohmic(coupling: f64, delta_freq: f64) -> Self {
        Self::Ohmic {
            coupling,
            cutoff_frequency: 10.0 * delta_freq,
            cutoff_form: CutoffForm::Exponential,
        }
    }

    pub fn eval(&self, omega: f64) -> f64 {
        if omega < 0.0 {
            return 0.0;
        }
        match self {
            Self::Ohmic {
                coupling,
                cutoff_frequency,
                cutoff_form,
            } => {
                let cut = match cutoff_form {
                    CutoffForm::Exponential => (-omega / cutoff_frequency).exp(),
                    CutoffForm::Hard => {
                        if omega <= *cutoff_frequency {
                            1.0
                        } else {
                            0.0
                        }
                    }
                };
                0.5 * coupling * omega * cut
            }
            Self::Tabulated(t) => t.eval(omega),
        }
    }

    /// Frequency beyond which `J` is negligible (below ~1e-17 relative), or
    /// `None` when the density has no effective cutoff.
    pub fn support_end(&self) -> Option<f64> {
        match self {
            Self::Ohmic {
                cutoff_frequency,
                cutoff_form,
                ..
            } => {
                if !cutoff_frequency.is_finite() || *cutoff_frequency <= 0.0 {
                    return None;
                }
                Some(match cutoff_form {
                    CutoffForm::Exponential => 45.0 * cutoff_frequency,
                    CutoffForm::Hard => *cutoff_frequency,
                })
            }
            Self::Tabulated(t) => t.omega.last().copied(),
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        match self {
            Self::Ohmic { coupling, .. } => *coupling == 0.0,
            Self::Tabulated(t) => t.values.iter().all(|&v| v == 0.0),
        }
    }
}

/// Piecewise-linear `J(ω)` read from a two-column table; zero outside it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TabulatedDensity {
    omega: Vec<f64>,
    values: Vec<f64>,
}

impl TabulatedDensity {
    pub fn new(omega: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if omega.len() != values.len() || omega.len() < 2 {
            return Err(Error::Domain(
                "table needs at least two (omega, J) rows of equal length".into(),
            ));
        }
        if omega.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("table frequencies must be strictly increasing".into()));
        }
        if omega[0] < 0.0 || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("table must have omega >= 0 and finite J".into()));
        }
        Ok(Self { omega, values })
    }

    /// Parses whitespace- or comma-separated `ω J` rows. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut omega = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|e| {
                    Error::Domain(format!("line {}: cannot parse {s:?}: {e}", lineno + 1))
                })
            };
            match fields.as_slice() {
                [w, j] => {
                    omega.push(parse(w)?);
                    values.push(parse(j)?);
                }
                _ => {
                    return Err(Error::Domain(format!(
                        "line {}: expected two columns, found {}",
                        lineno + 1,
                        fields.len()
                    )))
                }
            }
        }
        Self::new(omega, values)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn eval(&self, omega: f64) -> f64 {
        let w = &self.omega;
        if omega < w[0] || omega > w[w.len() - 1] {
            return 0.0;
        }
        let k = w.partition_point(|&x| x <= omega).clamp(1, w.len() - 1);
        let t = (omega - w[k - 1]) / (w[k] - w[k - 1]);
        self.values[k - 1] + t * (self.values[k] - self.values[k - 1])
    }
}
