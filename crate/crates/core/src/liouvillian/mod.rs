//! The 16×16 generator acting on Pauli vectors and its spectral analysis.

mod generator;
mod spectrum;

pub use generator::{
    build_generator, dissipator, hamiltonian, jump_operator, GeneratorExport, GeneratorMatrix,
    Matrix16, ModelParams,
};
pub use spectrum::{
    analytic_slow_eigenpair, classify_spectrum, mode_coefficients, thermal_pattern,
    ComplexMatrix16, Eigensystem, ModeExport, ModeLabel, SpectrumExport, SpectrumReport,
    DEFECTIVE_CONDITION, FAST_BOUND,
};
pub(crate) use spectrum::coefficients_checked;
