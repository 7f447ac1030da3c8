use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::json;
use twospin::bath::{BathThermal, LambShift, RateSet};
use twospin::bloch::CorrelationScalar;
use twospin::dynamics::{
    analytic_concurrence, propagate_spectral, representative_state, survival_time_for,
};
use twospin::iontrap::{plan, TrapConfig};
use twospin::liouvillian::{build_generator, classify_spectrum, ModelParams, SpectrumReport};

use crate::output::{Cell, Output, Table};
use crate::params::{Key, Kind, Params};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Fig1Surface,
    Fig2Trajectories,
    Fig2Inset,
    Iontrap,
    Sweep,
    Spectrum,
}

macro_rules! key {
    ($name:literal, $kind:ident, $default:literal, $help:literal) => {
        Key { name: $name, kind: Kind::$kind, default: $default, help: $help }
    };
}

const FIG1_KEYS: &[Key] = &[
    key!("delta", Float, "0.05", "correlation deficit"),
    key!("gamma0", Float, "1", "single-qubit decay rate"),
    key!("field", Float, "20", "qubit splitting in units of gamma0"),
    key!("lambda", Float, "-1", "spin correlation of the initial state"),
    key!("r_min", Float, "0.5", "smallest R"),
    key!("r_max", Float, "0.99", "largest R"),
    key!("r_count", Count, "50", "number of R values"),
    key!("scaled_t_max", Float, "4", "last time, in units of 1/|lambda1|"),
    key!("t_count", Count, "200", "number of times per R"),
];

const FIG2_KEYS: &[Key] = &[
    key!("delta", Float, "0.05", "correlation deficit"),
    key!("r", Float, "0.9", "thermal polarization R"),
    key!("gamma0", Float, "1", "single-qubit decay rate"),
    key!("field", Float, "20", "qubit splitting in units of gamma0"),
    key!("t_max", Float, "30", "last time, in units of 1/gamma0"),
    key!("t_count", Count, "3001", "number of equally spaced times"),
];

const INSET_KEYS: &[Key] = &[
    key!("delta", Float, "0.05", "correlation deficit"),
    key!("r", Float, "0.9", "thermal polarization R"),
    key!("gamma0", Float, "1", "single-qubit decay rate"),
    key!("field", Float, "20", "qubit splitting in units of gamma0"),
    key!("t_max", Float, "30", "last time, in units of 1/gamma0"),
    key!("t_count", Count, "3001", "number of equally spaced times"),
    key!("strength", FloatOrAuto, "auto", "induced coupling and exchange; auto = 1/(2|lambda1|)"),
    key!("lamb_a", Float, "0", "field renormalization"),
];

const SWEEP_KEYS: &[Key] = &[
    key!("deltas", FloatList, "0.01,0.05,0.2", "correlation deficits"),
    key!("ratios", FloatList, "0.5,0.7,0.9,0.99", "thermal polarizations R"),
    key!("lambdas", FloatList, "-3,-1,0", "initial spin correlations"),
    key!("gamma0", Float, "1", "single-qubit decay rate"),
    key!("field", Float, "20", "qubit splitting in units of gamma0"),
];

const SPECTRUM_KEYS: &[Key] = &[
    key!("delta", Float, "0.05", "correlation deficit"),
    key!("r", Float, "0.9", "thermal polarization R"),
    key!("gamma0", Float, "1", "single-qubit decay rate"),
    key!("field", Float, "20", "qubit splitting in units of gamma0"),
    key!("lamb_a", Float, "0", "field renormalization"),
    key!("lamb_b", Float, "0", "induced qubit-qubit coupling"),
    key!("xi", Float, "0", "exchange strength"),
];

const IONTRAP_KEYS: &[Key] = &[
    key!("trap_frequency", Float, "6283185.307179586", "angular trap frequency in rad/s"),
    key!("ion_count", Count, "100", "ions in the chain"),
    key!("rabi_ratio", Float, "25", "qubit splitting over trap frequency"),
    key!("ohmic_coupling", Float, "0.1", "alpha in J(w) = (alpha/2) w"),
    key!("addressed_spacing", Count, "1", "qubit separation in ion spacings"),
    key!("bath_dimension", Count, "1", "1, 2 or 3"),
    key!("target_r", Float, "0.5", "thermal polarization to reach"),
    key!("kappa_d", FloatOrAuto, "auto", "phase kappa*d; auto = wavelength estimate"),
    key!("exchange_xi", FloatOrAuto, "auto", "exchange in units of the trap frequency"),
];

impl Scenario {
    pub fn keys(self) -> &'static [Key] {
        match self {
            Scenario::Fig1Surface => FIG1_KEYS,
            Scenario::Fig2Trajectories => FIG2_KEYS,
            Scenario::Fig2Inset => INSET_KEYS,
            Scenario::Iontrap => IONTRAP_KEYS,
            Scenario::Sweep => SWEEP_KEYS,
            Scenario::Spectrum => SPECTRUM_KEYS,
        }
    }

    pub fn run(self, p: &Params) -> Result<Output, CliError> {
        match self {
            Scenario::Fig1Surface => fig1(p),
            Scenario::Fig2Trajectories => fig2(p),
            Scenario::Fig2Inset => inset(p),
            Scenario::Iontrap => iontrap(p),
            Scenario::Sweep => sweep(p),
            Scenario::Spectrum => spectrum(p),
        }
    }
}

const FIG2_STATES: [f64; 4] = [-3.0, -1.0, 0.0, 1.0];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn lambda(x: f64) -> Result<CorrelationScalar, CliError> {
    CorrelationScalar::new(x).map_err(|e| usage(format!("lambda: {e}")))
}

fn thermal(r: f64) -> Result<BathThermal, CliError> {
    BathThermal::from_ratio(r).map_err(|e| usage(format!("R: {e}")))
}

fn rates(gamma0: f64, th: &BathThermal, delta: f64) -> Result<RateSet, CliError> {
    if !(gamma0 > 0.0) {
        return Err(usage(format!("gamma0 must be positive, got {gamma0}")));
    }
    RateSet::new(gamma0, th, delta).map_err(|e| usage(e.to_string()))
}

fn model(field: f64) -> Result<ModelParams, CliError> {
    ModelParams::new(field).map_err(|e| usage(e.to_string()))
}

fn bare_spectrum(field: f64, rs: &RateSet) -> Result<SpectrumReport, CliError> {
    if !(rs.delta > 0.0) {
        return Err(usage("this scenario needs delta > 0"));
    }
    let g = build_generator(&model(field)?, rs, false, false)?;
    Ok(classify_spectrum(&g, rs)?)
}

fn linspace(a: f64, b: f64, n: u64) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

fn state_suffix(l: f64) -> String {
    let sign = if l < 0.0 { "m" } else { "p" };
    format!("lambda_{sign}{}", l.abs())
}

fn fig1(p: &Params) -> Result<Output, CliError> {
    let (r_min, r_max, n_r) = (p.float("r_min"), p.float("r_max"), p.count("r_count"));
    if !(r_min > 0.0 && r_max < 1.0 && r_min <= r_max) || n_r == 0 {
        return Err(usage("R grid must satisfy 0 < r_min <= r_max < 1 with r_count >= 1"));
    }
    let (s_max, n_t) = (p.float("scaled_t_max"), p.count("t_count"));
    if !(s_max >= 0.0) || n_t == 0 {
        return Err(usage("time grid needs scaled_t_max >= 0 and t_count >= 1"));
    }
    let l = lambda(p.float("lambda"))?;
    let (delta, gamma0, field) = (p.float("delta"), p.float("gamma0"), p.float("field"));
    let scaled = linspace(0.0, s_max, n_t);
    let blocks = linspace(r_min, r_max, n_r)
        .into_par_iter()
        .map(|r| -> Result<Vec<Vec<Cell>>, CliError> {
            let rs = rates(gamma0, &thermal(r)?, delta)?;
            let report = bare_spectrum(field, &rs)?;
            let l1 = report.slow_rate().abs();
            let times: Vec<f64> = scaled.iter().map(|s| s / l1).collect();
            let traj = propagate_spectral(&report, &representative_state(l), &times)?;
            Ok(scaled
                .iter()
                .zip(&traj.concurrence)
                .map(|(&s, &c)| vec![Cell::Num(r), Cell::Num(s), Cell::Num(c)])
                .collect())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["R", "lambda1_t", "concurrence_numeric"]);
    t.rows = blocks.into_iter().flatten().collect();
    Ok(Output::Table(t))
}

struct Fig2Setup {
    thermal: BathThermal,
    rates: RateSet,
    field: f64,
    times: Vec<f64>,
}

fn fig2_setup(p: &Params) -> Result<Fig2Setup, CliError> {
    let (t_max, n) = (p.float("t_max"), p.count("t_count"));
    if !(t_max > 0.0) || n < 2 {
        return Err(usage("time grid needs t_max > 0 and t_count >= 2"));
    }
    let th = thermal(p.float("r"))?;
    let rs = rates(p.float("gamma0"), &th, p.float("delta"))?;
    Ok(Fig2Setup {
        thermal: th,
        rates: rs,
        field: p.float("field"),
        times: linspace(0.0, t_max, n),
    })
}

fn fig2(p: &Params) -> Result<Output, CliError> {
    let s = fig2_setup(p)?;
    let report = bare_spectrum(s.field, &s.rates)?;
    let l1 = report.slow_rate().abs();
    let mut header = vec!["t_gamma0".to_string(), "t_lambda1".to_string()];
    let mut columns = Vec::new();
    for &l in &FIG2_STATES {
        let corr = lambda(l)?;
        let traj = propagate_spectral(&report, &representative_state(corr), &s.times)?;
        header.push(format!("numeric_{}", state_suffix(l)));
        header.push(format!("analytic_{}", state_suffix(l)));
        columns.push(traj.concurrence);
        columns.push(
            s.times
                .iter()
                .map(|&t| analytic_concurrence(&s.thermal, &s.rates, corr, t))
                .collect(),
        );
    }
    Ok(Output::Table(time_table(header, &s.times, s.rates.gamma0, l1, &columns)))
}

fn inset(p: &Params) -> Result<Output, CliError> {
    let s = fig2_setup(p)?;
    let bare = bare_spectrum(s.field, &s.rates)?;
    let l1 = bare.slow_rate().abs();
    let strength = p.float_or_auto("strength").unwrap_or(1.0 / (2.0 * l1));
    let dressed_model = model(s.field)?
        .with_lamb(LambShift { a: p.float("lamb_a"), b: strength })
        .with_exchange(strength)
        .validated()
        .map_err(|e| usage(e.to_string()))?;
    let g = build_generator(&dressed_model, &s.rates, true, true)?;
    let dressed = classify_spectrum(&g, &s.rates)?;
    let mut header = vec!["t_gamma0".to_string(), "t_lambda1".to_string()];
    let mut columns = Vec::new();
    for &l in &FIG2_STATES {
        let init = representative_state(lambda(l)?);
        header.push(format!("bare_{}", state_suffix(l)));
        header.push(format!("dressed_{}", state_suffix(l)));
        columns.push(propagate_spectral(&bare, &init, &s.times)?.concurrence);
        columns.push(propagate_spectral(&dressed, &init, &s.times)?.concurrence);
    }
    Ok(Output::Table(time_table(header, &s.times, s.rates.gamma0, l1, &columns)))
}

fn time_table(header: Vec<String>, times: &[f64], gamma0: f64, l1: f64, columns: &[Vec<f64>]) -> Table {
    let rows = times
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let mut row = vec![Cell::Num(t * gamma0), Cell::Num(t * l1)];
            row.extend(columns.iter().map(|c| Cell::Num(c[k])));
            row
        })
        .collect();
    Table { header, rows }
}

fn sweep(p: &Params) -> Result<Output, CliError> {
    let (gamma0, field) = (p.float("gamma0"), p.float("field"));
    let mut cells = Vec::new();
    for &d in p.list("deltas") {
        for &r in p.list("ratios") {
            for &l in p.list("lambdas") {
                cells.push((d, r, l));
            }
        }
    }
    // Validate the whole grid before spending time on it.
    for &(d, r, l) in &cells {
        rates(gamma0, &thermal(r)?, d)?;
        lambda(l)?;
    }
    model(field)?;
    let rows = cells
        .into_par_iter()
        .map(|(d, r, l)| -> Result<Vec<Cell>, CliError> {
            let th = thermal(r)?;
            let rs = rates(gamma0, &th, d)?;
            let rep = survival_time_for(&th, &rs, &representative_state(lambda(l)?), field)?;
            let opt = |x: Option<f64>| x.map_or(Cell::Text(String::new()), Cell::Num);
            Ok(vec![
                Cell::Num(d),
                Cell::Num(r),
                Cell::Num(l),
                Cell::Bool(rep.generated),
                Cell::Num(rep.peak_concurrence),
                Cell::Num(rep.peak_time),
                Cell::Num(rep.lambda1),
                Cell::Num(rep.t_c),
                Cell::Num(rep.scaled_t_c),
                opt(rep.numeric_t_c),
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "delta",
        "R",
        "lambda",
        "generated",
        "peak_concurrence",
        "peak_time",
        "lambda1",
        "t_c",
        "scaled_t_c",
        "numeric_t_c",
    ]);
    t.rows = rows;
    Ok(Output::Table(t))
}

fn spectrum(p: &Params) -> Result<Output, CliError> {
    let th = thermal(p.float("r"))?;
    let rs = rates(p.float("gamma0"), &th, p.float("delta"))?;
    if !(rs.delta > 0.0) {
        return Err(usage("spectrum classification needs delta > 0"));
    }
    let m = model(p.float("field"))?
        .with_lamb(LambShift { a: p.float("lamb_a"), b: p.float("lamb_b") })
        .with_exchange(p.float("xi"))
        .validated()
        .map_err(|e| usage(e.to_string()))?;
    let lamb = m.lamb_a != 0.0 || m.lamb_b != 0.0;
    let g = build_generator(&m, &rs, lamb, m.exchange_xi != 0.0)?;
    let report = classify_spectrum(&g, &rs)?;
    let export = report.export();
    let mut t = Table::new(&["index", "label", "re", "im"]);
    for mode in &export.modes {
        let label = serde_json::to_value(mode.label)?;
        t.rows.push(vec![
            Cell::Int(mode.index as i64),
            Cell::Text(label.as_str().unwrap_or_default().to_string()),
            Cell::Num(mode.eigenvalue[0]),
            Cell::Num(mode.eigenvalue[1]),
        ]);
    }
    Ok(Output::Table(t))
}

fn iontrap(p: &Params) -> Result<Output, CliError> {
    let small = |name: &str, max: u64| -> Result<u32, CliError> {
        let v = p.count(name);
        if v > max {
            return Err(usage(format!("{name} = {v} is out of range")));
        }
        Ok(v as u32)
    };
    let config = TrapConfig {
        trap_frequency: p.float("trap_frequency"),
        ion_count: small("ion_count", u32::MAX as u64)?,
        rabi_ratio: p.float("rabi_ratio"),
        ohmic_coupling: p.float("ohmic_coupling"),
        addressed_spacing: small("addressed_spacing", u32::MAX as u64)?,
        bath_dimension: small("bath_dimension", 3)? as u8,
        target_r: p.float("target_r"),
        kappa_d: p.float_or_auto("kappa_d"),
        exchange_xi: p.float_or_auto("exchange_xi"),
    };
    let r = plan(&config).map_err(|e| usage(e.to_string()))?.report;
    eprint!("{}", r.to_text());
    let num = |x: f64| Cell::Num(x);
    let fields = [
        ("kappa_d", num(r.kappa_d)),
        ("delta", num(r.delta)),
        ("delta_exact", num(r.delta_exact)),
        ("gamma0", num(r.gamma0)),
        ("revival_time", num(r.revival_time)),
        ("revival_gamma0", num(r.revival_gamma0)),
        ("t_peak_estimate", num(r.t_peak_estimate)),
        ("decay_window", num(r.decay_window)),
        ("t_c", num(r.t_c)),
        ("peak_concurrence", num(r.peak_concurrence)),
        ("generated", Cell::Bool(r.generated)),
        ("feasible", Cell::Bool(r.feasible)),
        ("bath_temperature", num(r.bath_temperature)),
    ];
    let mut obj = serde_json::Map::new();
    for (k, c) in fields {
        obj.insert(k.into(), c.json());
    }
    obj.insert("diagnostics".into(), json!(r.diagnostics));
    Ok(Output::Record(serde_json::Value::Object(obj)))
}
