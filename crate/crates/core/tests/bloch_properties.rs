mod common;

use common::*;
use nalgebra::Matrix4;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twospin::bloch::{
    bloch_to_density, correlation_scalar, density_to_bloch, pauli_product, states,
    wootters_concurrence, PauliVector, TwoQubitDensityMatrix,
};

fn conjugate(v: &PauliVector, u: &Matrix4<C64>) -> PauliVector {
    let rho = bloch_to_density(v);
    let m = u * rho.entries() * u.adjoint();
    density_to_bloch(&TwoQubitDensityMatrix::new(m).unwrap()).unwrap()
}

/// Concurrence from the eigenvalues of the non-Hermitian `ρ ρ̃`.
fn concurrence_brute_force(rho: &Matrix4<C64>) -> f64 {
    let yy = pauli_product(2, 2);
    let r = rho * (yy * rho.conjugate() * yy);
    let eig = r.schur().eigenvalues().expect("complex Schur form is triangular");
    let mut roots: Vec<f64> = eig.iter().map(|l| l.re.max(0.0).sqrt()).collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    (roots[0] - roots[1] - roots[2] - roots[3]).max(0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_state(&mut rng);
        let back = density_to_bloch(&bloch_to_density(&v)).unwrap();
        prop_assert!(back.max_abs_diff(&v) < 1e-12);
        prop_assert!((v.get(0, 0) - 1.0).abs() < 1e-12);
        prop_assert!(v.components().iter().all(|a| a.abs() <= 1.0 + 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn concurrence_invariant_under_local_unitaries(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_state(&mut rng);
        let u = kron2(&random_su2(&mut rng), &random_su2(&mut rng));
        let c0 = wootters_concurrence(&bloch_to_density(&v)).unwrap();
        let c1 = wootters_concurrence(&bloch_to_density(&conjugate(&v, &u))).unwrap();
        prop_assert!((c0 - c1).abs() < 1e-9, "{} vs {}", c0, c1);
        prop_assert!((0.0..=1.0).contains(&c0));
    }

    #[test]
    fn concurrence_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_state(&mut rng);
        let rho = bloch_to_density(&v);
        let c = wootters_concurrence(&rho).unwrap();
        // The non-Hermitian route loses accuracy near rank deficiency.
        prop_assert!((c - concurrence_brute_force(rho.entries())).abs() < 1e-6);
    }

    #[test]
    fn correlation_invariant_under_common_rotation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_state(&mut rng);
        let u1 = random_su2(&mut rng);
        let rotated = conjugate(&v, &kron2(&u1, &u1));
        let (a, b) = (correlation_scalar(&v).value(), correlation_scalar(&rotated).value());
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn product_correlation_is_dot_product(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n1, n2) = (unit_vector(&mut rng), unit_vector(&mut rng));
        let v = states::product(n1, n2);
        let dot: f64 = (0..3).map(|k| n1[k] * n2[k]).sum();
        prop_assert!((correlation_scalar(&v).value() - dot).abs() < 1e-10);
        prop_assert!(wootters_concurrence(&bloch_to_density(&v)).unwrap() < 1e-7);
    }

    #[test]
    fn werner_concurrence(p in 0.0f64..=1.0) {
        let c = wootters_concurrence(&bloch_to_density(&states::werner(p))).unwrap();
        prop_assert!((c - ((3.0 * p - 1.0) / 2.0).max(0.0)).abs() < 1e-9);
    }
}

#[test]
fn named_states() {
    let s = states::singlet();
    assert_eq!(correlation_scalar(&s).value(), -3.0);
    assert_eq!(correlation_scalar(&states::up_down_z()).value(), -1.0);
    assert_eq!(correlation_scalar(&states::maximally_mixed()).value(), 0.0);
    assert!((wootters_concurrence(&bloch_to_density(&s)).unwrap() - 1.0).abs() < 1e-12);
    let id = bloch_to_density(&states::thermal(0.0));
    assert!((id.entries() - Matrix4::identity() * C64::from(0.25)).norm() < 1e-15);
}
