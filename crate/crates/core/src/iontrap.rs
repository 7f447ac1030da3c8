//! Linear-ion-trap planner. Two addressed ions play the qubits and the
//! collective motion of the chain is the bath. This is the only module
//! that deals with physical units; everything it hands on is expressed in
//! units of the trap frequency `ω_t`.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bath::{
    correlation_delta, BathDimension, BathGeometry, BathParams, BathThermal, CutoffForm, RateSet,
    SpectralDensity,
};
use crate::bloch::CorrelationScalar;
use crate::dynamics::{analytic_concurrence, generation_condition, scaled_survival_time, first_order_rate};
use crate::error::{Error, Result};
use crate::liouvillian::ModelParams;

pub const HBAR: f64 = 1.054_571_817e-34;
pub const K_BOLTZMANN: f64 = 1.380_649e-23;
/// Chain length at which the revival time equals one trap period.
pub const REVIVAL_REFERENCE_IONS: f64 = 100.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrapConfig {
    /// Angular trap frequency `ω_t` in rad/s.
    pub trap_frequency: f64,
    pub ion_count: u32,
    /// `Δ/ω_t`.
    pub rabi_ratio: f64,
    /// Ohmic coupling `α` in `J(ω) = (α/2)ω`.
    pub ohmic_coupling: f64,
    /// Ions between the addressed pair, in units of the ion spacing.
    pub addressed_spacing: u32,
    pub bath_dimension: u8,
    pub target_r: f64,
    /// Replaces the wavelength estimate of `κ(Δ)d`.
    pub kappa_d: Option<f64>,
    /// Exchange strength in units of `ω_t`; zero unless given.
    pub exchange_xi: Option<f64>,
}

impl Default for TrapConfig {
    fn default() -> Self {
        Self {
            trap_frequency: 2.0 * PI * 1e6,
            ion_count: 100,
            rabi_ratio: 25.0,
            ohmic_coupling: 0.1,
            addressed_spacing: 1,
            bath_dimension: 1,
            target_r: 0.5,
            kappa_d: None,
            exchange_xi: None,
        }
    }
}

impl TrapConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.trap_frequency > 0.0) || !self.trap_frequency.is_finite() {
            return bad(format!("trap_frequency must be positive, got {}", self.trap_frequency));
        }
        if self.ion_count < 2 {
            return bad(format!("ion_count must be at least 2, got {}", self.ion_count));
        }
        if !(self.rabi_ratio > 0.0) || !self.rabi_ratio.is_finite() {
            return bad(format!("rabi_ratio must be positive, got {}", self.rabi_ratio));
        }
        if !(self.ohmic_coupling >= 0.0) || !self.ohmic_coupling.is_finite() {
            return bad(format!("ohmic_coupling must be >= 0, got {}", self.ohmic_coupling));
        }
        if self.addressed_spacing < 1 {
            return bad("addressed_spacing must be at least 1".into());
        }
        BathDimension::try_from(self.bath_dimension)?;
        if !(self.target_r > 0.0 && self.target_r < 1.0) {
            return bad(format!("target_r must lie in (0, 1), got {}", self.target_r));
        }
        if let Some(k) = self.kappa_d {
            if !(k >= 0.0) || !k.is_finite() {
                return bad(format!("kappa_d must be >= 0, got {k}"));
            }
        }
        if let Some(x) = self.exchange_xi {
            if !x.is_finite() {
                return bad("exchange_xi must be finite".into());
            }
        }
        Ok(())
    }

    /// `κ(Δ)d`, from the override or `spacing·(Δ/ω_t)/N`.
    pub fn kappa_d(&self) -> f64 {
        self.kappa_d
            .unwrap_or(f64::from(self.addressed_spacing) * self.rabi_ratio / f64::from(self.ion_count))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub kappa_d: f64,
    /// Small-separation estimate `(κd)²/2D`, used for the rates.
    pub delta: f64,
    /// `1 − f(κd)`.
    pub delta_exact: f64,
    /// In units of `ω_t`.
    pub gamma0: f64,
    /// In units of `1/ω_t`.
    pub revival_time: f64,
    /// Revival time in units of `1/γ₀`.
    pub revival_gamma0: f64,
    /// `1/γ₀`, in units of `1/ω_t`.
    pub t_peak_estimate: f64,
    /// `1/(δγ₀)`, in units of `1/ω_t`.
    pub decay_window: f64,
    /// Closed-form survival time for `Λ = −1`, in units of `1/ω_t`.
    pub t_c: f64,
    pub peak_concurrence: f64,
    pub generated: bool,
    pub feasible: bool,
    /// Bath temperature giving `target_r`, in kelvin.
    pub bath_temperature: f64,
    pub diagnostics: Vec<String>,
}

impl FeasibilityReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| s.push_str(&format!("{k:<18} {v}\n"));
        line("kappa_d", format!("{:.6}", self.kappa_d));
        line("delta", format!("{:.6}", self.delta));
        line("delta_exact", format!("{:.6}", self.delta_exact));
        line("gamma0 [w_t]", format!("{:.6}", self.gamma0));
        line("revival [1/w_t]", format!("{:.6}", self.revival_time));
        line("revival [1/g0]", format!("{:.6}", self.revival_gamma0));
        line("t_peak [1/w_t]", format!("{:.6}", self.t_peak_estimate));
        line("decay [1/w_t]", format!("{:.6}", self.decay_window));
        line("t_c [1/w_t]", format!("{:.6}", self.t_c));
        line("peak C", format!("{:.6}", self.peak_concurrence));
        line("T_bath [K]", format!("{:.6e}", self.bath_temperature));
        line("generated", self.generated.to_string());
        line("feasible", self.feasible.to_string());
        for d in &self.diagnostics {
            s.push_str(&format!("note: {d}\n"));
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct TrapPlan {
    pub report: FeasibilityReport,
    pub model: ModelParams,
    pub bath: BathParams,
}

/// `T_B = ħΔ / (2k_B artanh R)` with `Δ = rabi_ratio·ω_t`, in kelvin.
pub fn temperature_requirement(config: &TrapConfig) -> Result<f64> {
    let r = config.target_r;
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("target R must lie in (0, 1), got {r}")));
    }
    let delta = config.rabi_ratio * config.trap_frequency;
    Ok(HBAR * delta / (2.0 * K_BOLTZMANN * r.atanh()))
}

pub fn plan(config: &TrapConfig) -> Result<TrapPlan> {
    config.validate()?;
    let mut diagnostics = Vec::new();
    let n = f64::from(config.ion_count);
    let delta_field = config.rabi_ratio;
    if config.rabi_ratio >= n {
        diagnostics.push(format!(
            "rabi_ratio {} is not below the ion count {}; the wavelength estimate does not hold",
            config.rabi_ratio, config.ion_count
        ));
    }
    let kappa_d = config.kappa_d();
    if config.kappa_d.is_some() {
        diagnostics.push(format!("kappa_d = {kappa_d} set explicitly"));
    }
    let dim = BathDimension::try_from(config.bath_dimension)?;
    let delta = kappa_d * kappa_d / (2.0 * f64::from(config.bath_dimension));
    let geometry = BathGeometry::from_phase(kappa_d, dim, delta_field)?;
    let delta_exact = correlation_delta(&geometry, delta_field);

    let spectral = SpectralDensity::Ohmic {
        coupling: config.ohmic_coupling,
        cutoff_frequency: f64::INFINITY,
        cutoff_form: CutoffForm::Exponential,
    };
    let gamma0 = 2.0 * PI * spectral.eval(delta_field);
    let thermal = BathThermal::from_ratio(config.target_r)?;
    let rates_delta = if (1.0 - delta).abs() <= 1.0 {
        delta
    } else {
        diagnostics.push(format!(
            "small-separation δ = {delta} is outside [0, 2]; rates use 1 − f(κd) = {delta_exact}"
        ));
        delta_exact
    };
    let rates = RateSet::new(gamma0, &thermal, rates_delta)?;

    let revival_time = 2.0 * PI * n / REVIVAL_REFERENCE_IONS;
    if config.ion_count != REVIVAL_REFERENCE_IONS as u32 {
        diagnostics.push("revival time scaled linearly in N from the N = 100 anchor".into());
    }
    let lambda_corr = CorrelationScalar::new(-1.0)?;
    let generated = generation_condition(&thermal, lambda_corr);
    let peak_concurrence = analytic_concurrence(&thermal, &rates, lambda_corr, 0.0);
    let bath_temperature = temperature_requirement(config)?;

    let (t_peak_estimate, decay_window, t_c, feasible);
    if gamma0 > 0.0 {
        t_peak_estimate = 1.0 / gamma0;
        decay_window = if rates_delta > 0.0 { 1.0 / (rates_delta * gamma0) } else { f64::INFINITY };
        let scaled = scaled_survival_time(&thermal, lambda_corr);
        let l1 = first_order_rate(&thermal, &rates);
        t_c = if !generated {
            0.0
        } else if l1 == 0.0 {
            f64::INFINITY
        } else {
            scaled / l1.abs()
        };
        let window = t_peak_estimate.max(decay_window);
        let fits = revival_time > window;
        if !fits {
            diagnostics.push(format!(
                "revival at {revival_time:.4}/ω_t comes before max(1/γ₀, 1/(δγ₀)) = {window:.4}/ω_t"
            ));
        }
        if !generated {
            diagnostics.push(format!(
                "R = {} is too hot to entangle |↑↓⟩ (Λ = −1)",
                config.target_r
            ));
        }
        feasible = fits && generated;
    } else {
        diagnostics.push("no dissipation: γ₀ = 0".into());
        t_peak_estimate = f64::INFINITY;
        decay_window = f64::INFINITY;
        t_c = f64::INFINITY;
        feasible = false;
    }

    let model = ModelParams::new(delta_field)?.with_exchange(config.exchange_xi.unwrap_or(0.0));
    let report = FeasibilityReport {
        kappa_d,
        delta,
        delta_exact,
        gamma0,
        revival_time,
        revival_gamma0: revival_time * gamma0,
        t_peak_estimate,
        decay_window,
        t_c,
        peak_concurrence,
        generated,
        feasible,
        bath_temperature,
        diagnostics,
    };
    Ok(TrapPlan {
        report,
        model,
        bath: BathParams {
            spectral,
            thermal,
            geometry,
            rates,
        },
    })
}
