//! Lamb-shift coefficients against reference values computed separately
//! at 30 digits with the pole subtracted analytically:
//! `PV∫₀^∞ G/(1−ω) = ∫₀² (G(ω) − G(1))/(1−ω) + ∫₂^∞ G/(1−ω)`.
//!
//! Bath: Ohmic, `α = 0.1`, exponential cutoff at `10Δ`, `Δ = 1`.

use twospin::bath::{
    lamb_a, lamb_b, lamb_shift_coefficients, BathDimension, BathGeometry, BathThermal, LambShift,
    SpectralDensity, LAMB_REL_TOL,
};

const A_ZERO_T: f64 = -0.174_151_215_062_804_10;
const A_HALF_R: f64 = -0.052_150_515_697_894_313;
const B_COINCIDENT: f64 = -0.486_343_480_295_979_47;
const B_3D_HALF: f64 = -0.113_578_994_392_951_67;

fn bath() -> SpectralDensity {
    SpectralDensity::ohmic(0.1, 1.0)
}

fn close(got: f64, want: f64) {
    assert!(
        (got - want).abs() <= LAMB_REL_TOL * want.abs(),
        "{got} vs {want} (rel {:.2e})",
        ((got - want) / want).abs()
    );
}

#[test]
fn shift_a_zero_temperature() {
    close(lamb_a(&bath(), &BathThermal::zero_temperature(), 1.0).unwrap(), A_ZERO_T);
}

#[test]
fn shift_a_finite_temperature() {
    close(lamb_a(&bath(), &BathThermal::from_ratio(0.5).unwrap(), 1.0).unwrap(), A_HALF_R);
}

#[test]
fn shift_b_coincident_qubits() {
    let g = BathGeometry::from_phase(0.0, BathDimension::One, 1.0).unwrap();
    close(lamb_b(&bath(), &g, 1.0).unwrap(), B_COINCIDENT);
}

#[test]
fn shift_b_three_dimensional() {
    let g = BathGeometry::from_phase(0.5, BathDimension::Three, 1.0).unwrap();
    close(lamb_b(&bath(), &g, 1.0).unwrap(), B_3D_HALF);
}

#[test]
fn combined_call_matches_parts() {
    let g = BathGeometry::from_phase(0.0, BathDimension::Two, 1.0).unwrap();
    let t = BathThermal::zero_temperature();
    let both = lamb_shift_coefficients(&bath(), &t, &g, 1.0).unwrap();
    assert_eq!(
        both,
        LambShift {
            a: lamb_a(&bath(), &t, 1.0).unwrap(),
            b: lamb_b(&bath(), &g, 1.0).unwrap(),
        }
    );
}

#[test]
fn shift_scales_with_coupling() {
    let g = BathGeometry::from_phase(0.0, BathDimension::One, 1.0).unwrap();
    let t = BathThermal::zero_temperature();
    let weak = lamb_shift_coefficients(&SpectralDensity::ohmic(0.1, 1.0), &t, &g, 1.0).unwrap();
    let strong = lamb_shift_coefficients(&SpectralDensity::ohmic(0.3, 1.0), &t, &g, 1.0).unwrap();
    assert!((strong.a - 3.0 * weak.a).abs() < 1e-9);
    assert!((strong.b - 3.0 * weak.b).abs() < 1e-9);
}
