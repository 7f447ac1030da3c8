//! Random states shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;
use twospin::bloch::{density_to_bloch, PauliVector, TwoQubitDensityMatrix};

pub fn random_ket<R: Rng>(rng: &mut R) -> Vector4<C64> {
    let v = Vector4::from_fn(|_, _| C64::new(gauss(rng), gauss(rng)));
    v / C64::from(v.norm())
}

/// Ginibre-distributed mixed state of full rank.
pub fn random_density<R: Rng>(rng: &mut R) -> TwoQubitDensityMatrix {
    let g = Matrix4::from_fn(|_, _| C64::new(gauss(rng), gauss(rng)));
    let m = &g * g.adjoint();
    let m = m / m.trace();
    TwoQubitDensityMatrix::new((&m + m.adjoint()) * C64::from(0.5)).unwrap()
}

/// Mixture of a random pure state and a random mixed state, so that
/// rank-deficient and nearly pure states are both sampled.
pub fn random_state<R: Rng>(rng: &mut R) -> PauliVector {
    let pure = TwoQubitDensityMatrix::from_pure(&random_ket(rng)).unwrap();
    let mixed = random_density(rng);
    let p: f64 = if rng.gen_bool(0.3) { 1.0 } else { rng.gen() };
    let m = pure.entries() * C64::from(p) + mixed.entries() * C64::from(1.0 - p);
    density_to_bloch(&TwoQubitDensityMatrix::new(m).unwrap()).unwrap()
}

pub fn random_su2<R: Rng>(rng: &mut R) -> Matrix2<C64> {
    let q = [gauss(rng), gauss(rng), gauss(rng), gauss(rng)];
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (a, b, c, d) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
    Matrix2::new(C64::new(a, b), C64::new(c, d), C64::new(-c, d), C64::new(a, -b))
}

pub fn kron2(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    a.kronecker(b)
}

pub fn unit_vector<R: Rng>(rng: &mut R) -> [f64; 3] {
    let v = [gauss(rng), gauss(rng), gauss(rng)];
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

pub fn gauss<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub type CMatrix16 = nalgebra::SMatrix<C64, 16, 16>;

fn paulis() -> [Matrix2<C64>; 4] {
    let (o, l, i) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0));
    [
        Matrix2::new(l, o, o, l),
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}

fn kron4(a: &Matrix4<C64>, b: &Matrix4<C64>) -> CMatrix16 {
    CMatrix16::from_fn(|r, c| a[(r / 4, c / 4)] * b[(r % 4, c % 4)])
}

/// Superoperator parameters for [`superoperator_generator`].
pub struct OracleModel {
    pub field: f64,
    pub lamb_a: f64,
    pub lamb_b: f64,
    pub xi: f64,
    pub gamma0: f64,
    pub ratio: f64,
    pub delta: f64,
}

/// Generator assembled as a complex superoperator on column-stacked `ρ`,
/// `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)`, then changed to the Pauli-product basis.
pub fn superoperator_generator(m: &OracleModel) -> nalgebra::SMatrix<f64, 16, 16> {
    let p = paulis();
    let pp = |i: usize, j: usize| kron2(&p[i], &p[j]);
    let id = Matrix4::<C64>::identity();
    let c = |x: f64| C64::new(x, 0.0);
    let h = (pp(1, 0) + pp(0, 1)) * c(m.lamb_a - 0.5 * m.field)
        + (pp(3, 3) + pp(2, 2)) * c(m.lamb_b)
        + (pp(1, 1) + pp(2, 2) + pp(3, 3)) * c(m.xi);
    let mi = C64::new(0.0, -1.0);
    let mut s = (kron4(&id, &h) - kron4(&h.transpose(), &id)) * mi;

    let n = (1.0 - m.ratio) / (2.0 * m.ratio);
    let half = c(0.5);
    let iy = [pp(2, 0), pp(0, 2)].map(|y| y * C64::new(0.0, 1.0));
    let z = [pp(3, 0), pp(0, 3)];
    for (sign, g11) in [(-1.0, (n + 1.0) * m.gamma0), (1.0, n * m.gamma0)] {
        let ops = [0, 1].map(|q| (z[q] + iy[q] * c(sign)) * half);
        for a in 0..2 {
            for b in 0..2 {
                let g = if a == b { g11 } else { (1.0 - m.delta) * g11 };
                let prod = ops[a].adjoint() * ops[b];
                s += (kron4(&ops[a].conjugate(), &ops[b])
                    - kron4(&id, &prod) * half
                    - kron4(&prod.transpose(), &id) * half)
                    * c(g);
            }
        }
    }

    let vec = |x: &Matrix4<C64>| nalgebra::SVector::<C64, 16>::from_fn(|k, _| x[(k % 4, k / 4)]);
    let mut out = nalgebra::SMatrix::<f64, 16, 16>::zeros();
    for col in 0..16 {
        let image = s * vec(&pp(col / 4, col % 4)) * c(0.25);
        for row in 0..16 {
            let probe = vec(&pp(row / 4, row % 4).transpose());
            let v: C64 = probe.iter().zip(image.iter()).map(|(a, b)| a * b).sum();
            assert!(v.im.abs() < 1e-10, "imaginary generator entry {v}");
            out[(row, col)] = v.re;
        }
    }
    out
}

/// First-order coefficient `s` in `λ₁(δ) = s δ + O(δ²)`, from degenerate
/// perturbation theory on the two-dimensional null space at `δ = 0`.
/// Built from [`superoperator_generator`] so it shares nothing with the
/// library's spectral code.
pub fn slow_rate_slope(gamma0: f64, ratio: f64, field: f64) -> f64 {
    let model = |delta| OracleModel {
        field,
        lamb_a: 0.0,
        lamb_b: 0.0,
        xi: 0.0,
        gamma0,
        ratio,
        delta,
    };
    let l0 = superoperator_generator(&model(0.0));
    let dl = superoperator_generator(&model(1.0)) - l0;
    let svd = l0.svd(true, true);
    let sv = svd.singular_values;
    let mut order: Vec<usize> = (0..16).collect();
    order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
    assert!(sv[order[1]] < 1e-12 * sv.max() && sv[order[2]] > 1e-6 * sv.max());
    let u = svd.u.unwrap();
    let vt = svd.v_t.unwrap();
    let x = nalgebra::SMatrix::<f64, 16, 2>::from_columns(&[
        vt.row(order[0]).transpose(),
        vt.row(order[1]).transpose(),
    ]);
    let y = nalgebra::SMatrix::<f64, 16, 2>::from_columns(&[u.column(order[0]), u.column(order[1])]);
    let m = (y.transpose() * x).try_inverse().unwrap() * y.transpose() * dl * x;
    // The thermal mode stays at zero, so the other eigenvalue is the trace.
    assert!(m.determinant().abs() < 1e-10 * m.norm().powi(2));
    m.trace()
}
