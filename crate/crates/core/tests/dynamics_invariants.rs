use twospin::bath::{BathThermal, RateSet};
use twospin::bloch::{
    bloch_to_density, concurrence_margin, correlation_scalar, density_to_bloch, states,
    trace_distance, CorrelationScalar, PauliVector,
};
use twospin::dynamics::{
    default_times, propagate_ode, propagate_spectral, representative_state, survival_time,
    zero_limit_state, OdeOptions,
};
use twospin::liouvillian::{
    build_generator, classify_spectrum, GeneratorMatrix, ModeLabel, ModelParams, SpectrumReport,
};

const FIELD: f64 = 20.0;

fn setup(delta: f64, r: f64) -> (GeneratorMatrix, SpectrumReport) {
    let rates = RateSet::new(1.0, &BathThermal::from_ratio(r).unwrap(), delta).unwrap();
    let g = build_generator(&ModelParams::new(FIELD).unwrap(), &rates, false, false).unwrap();
    let report = classify_spectrum(&g, &rates).unwrap();
    (g, report)
}

fn lam(x: f64) -> CorrelationScalar {
    CorrelationScalar::new(x).unwrap()
}

fn initial_states() -> [PauliVector; 4] {
    [
        states::singlet(),
        states::up_down_z(),
        states::werner(0.3),
        states::product([0.0, 0.6, 0.8], [1.0, 0.0, 0.0]),
    ]
}

#[test]
fn spectral_matches_direct_integration() {
    for delta in [0.01, 0.05, 0.2] {
        for r in [0.5, 0.9, 0.99] {
            let (g, report) = setup(delta, r);
            let times = default_times(1e-3, 5.0 / report.slow_rate().abs(), 40);
            for s in initial_states() {
                let a = propagate_spectral(&report, &s, &times).unwrap();
                let b = propagate_ode(&g, &s, &times, &OdeOptions::default()).unwrap();
                let worst = a
                    .states
                    .iter()
                    .zip(&b.states)
                    .map(|(x, y)| trace_distance(x, y))
                    .fold(0.0, f64::max);
                assert!(worst < 1e-8, "δ={delta} R={r}: {worst:e}");
            }
        }
    }
}

#[test]
fn trace_preserved() {
    for (delta, r) in [(0.01, 0.5), (0.2, 0.99)] {
        let (g, report) = setup(delta, r);
        let times = default_times(1e-3, 50.0, 100);
        for s in initial_states() {
            for traj in [
                propagate_spectral(&report, &s, &times).unwrap(),
                propagate_ode(&g, &s, &times, &OdeOptions::default()).unwrap(),
            ] {
                assert!(traj.states.iter().all(|v| (v.get(0, 0) - 1.0).abs() < 1e-10));
                assert!(!traj.any_positivity_violation());
            }
        }
    }
}

#[test]
fn relaxes_to_thermal_state() {
    let (_, report) = setup(0.05, 0.9);
    let t = 100.0 / report.slow_rate().abs();
    let traj = propagate_spectral(&report, &states::singlet(), &[0.0, t]).unwrap();
    assert_eq!(traj.states[0], states::singlet());
    assert!(traj.states[1].max_abs_diff(&states::thermal(0.9)) < 1e-6);
}

/// After the peak the concurrence of an initially separable state only
/// decreases.
#[test]
fn monotone_after_peak() {
    for (delta, r) in [(0.05, 0.9), (0.01, 0.9), (0.05, 0.99)] {
        let (_, report) = setup(delta, r);
        let times = default_times(1e-3, 10.0 / report.slow_rate().abs(), 400);
        for l in [-1.0, 0.0] {
            let traj = propagate_spectral(&report, &representative_state(lam(l)), &times).unwrap();
            let (k, peak) = traj.peak();
            assert!(peak > 0.0);
            for w in traj.concurrence[k..].windows(2) {
                assert!(w[1] <= w[0] + 1e-9, "δ={delta} R={r} Λ={l}: {} -> {}", w[0], w[1]);
            }
        }
    }
}

#[test]
fn peaks_near_inverse_damping() {
    for r in [0.9, 0.99] {
        let (_, report) = setup(0.05, r);
        let times = default_times(1e-3, 10.0 / report.slow_rate().abs(), 400);
        for l in [-1.0, 0.0] {
            let traj = propagate_spectral(&report, &representative_state(lam(l)), &times).unwrap();
            let t = traj.times[traj.peak().0];
            assert!((0.3..=5.0).contains(&t), "R={r} Λ={l}: peak at {t}");
        }
    }
}

/// Between 0.2 and 0.8 of the survival time the margin above its thermal
/// value decays with the slow rate.
#[test]
fn exponential_tail() {
    for (delta, r, l) in [(0.05, 0.9, -1.0), (0.05, 0.9, -3.0), (0.01, 0.95, 0.0)] {
        let th = BathThermal::from_ratio(r).unwrap();
        let rates = RateSet::new(1.0, &th, delta).unwrap();
        let rep = survival_time(&th, &rates, lam(l)).unwrap();
        let t_c = rep.numeric_t_c.unwrap();
        let (_, report) = setup(delta, r);
        let times: Vec<f64> = (0..=30).map(|k| t_c * (0.2 + 0.6 * k as f64 / 30.0)).collect();
        let traj = propagate_spectral(&report, &representative_state(lam(l)), &times).unwrap();
        let offset = (r * r - 1.0) / 2.0;
        let ys: Vec<f64> = traj
            .states
            .iter()
            .map(|s| (concurrence_margin(bloch_to_density(s).entries()) - offset).ln())
            .collect();
        let n = times.len() as f64;
        let (mt, my) = (times.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let sxy: f64 = times.iter().zip(&ys).map(|(t, y)| (t - mt) * (y - my)).sum();
        let sxx: f64 = times.iter().map(|t| (t - mt).powi(2)).sum();
        let slope = sxy / sxx;
        let l1 = report.slow_rate();
        assert!((slope / l1 - 1.0).abs() < 0.05, "δ={delta} R={r} Λ={l}: {slope} vs {l1}");
    }
}

#[test]
fn thermal_margin_offset() {
    // Product thermal states sit exactly at (R² − 1)/2.
    for r in [0.3, 0.7, 0.95] {
        let m = concurrence_margin(bloch_to_density(&states::thermal(r)).entries());
        assert!((m - (r * r - 1.0) / 2.0).abs() < 1e-12);
    }
}

#[test]
fn non_generating_states_stay_separable() {
    for (r, l) in [(0.5, 0.0), (0.7, 0.0), (0.5, -0.5)] {
        let (_, report) = setup(0.05, r);
        let times = default_times(1e-3, 10.0 / report.slow_rate().abs(), 400);
        let traj = propagate_spectral(&report, &representative_state(lam(l)), &times).unwrap();
        assert!(traj.peak().1 <= 1e-6, "R={r} Λ={l}: {}", traj.peak().1);
    }
}

/// Near zero temperature and zero separation the state built from the
/// coherent-mixture formula is reproduced by the thermal, slow and
/// oscillatory modes alone, and evolves as the formula says.
#[test]
fn zero_limit_matches_spectral_evolution() {
    let (_, report) = setup(1e-6, 1.0);
    let sys = report.eigensystem();
    let keep: Vec<usize> = (0..16).filter(|&l| report.labels()[l] != ModeLabel::Fast).collect();
    for sign in [1i8, -1] {
        let rho0 = zero_limit_state(-0.5, 0.1, sign, 0.0, FIELD).unwrap();
        let s = density_to_bloch(&rho0).unwrap();
        let a = sys.coefficients(&s);
        let mut partial = a;
        for l in 0..16 {
            if !keep.contains(&l) {
                partial[l] = 0.0.into();
            }
        }
        assert!(sys.evolve(&partial, 0.0).max_abs_diff(&s) < 1e-3);
        let slow = (0..16).find(|&l| report.labels()[l] == ModeLabel::Slow).unwrap();
        assert!((a[slow].re + 0.5).abs() < 1e-3 && a[slow].im.abs() < 1e-3);

        for t in [0.05, 0.3, 1.0] {
            let want = density_to_bloch(&zero_limit_state(-0.5, 0.1, sign, t, FIELD).unwrap()).unwrap();
            let got = propagate_spectral(&report, &s, &[0.0, t]).unwrap().states[1].clone();
            assert!(trace_distance(&got, &want) < 1e-3, "sign {sign}, t={t}");
        }
    }
    assert!((correlation_scalar(&states::singlet()).value() + 3.0).abs() < 1e-15);
}
