//! Bath description: thermal occupation, spatial correlations, dissipative
//! rates and Lamb-shift coefficients.

mod bessel;
mod lamb;
pub mod quadrature;
mod rates;
mod spatial;
mod spectral;
mod thermal;

pub use bessel::bessel_j0;
pub use lamb::{lamb_a, lamb_b, lamb_shift_coefficients, LambShift, LAMB_REL_TOL};
pub use rates::{build_rates, RateSet};
pub use spatial::{
    correlation_delta, correlation_delta_with, spatial_correlation, BathDimension, BathGeometry,
    DeltaApproximation, Dispersion,
};
pub use spectral::{CutoffForm, SpectralDensity, TabulatedDensity};
pub use thermal::{thermal_occupation, BathThermal};

/// Everything the generator needs from the bath.
#[derive(Clone, Debug)]
pub struct BathParams {
    pub spectral: SpectralDensity,
    pub thermal: BathThermal,
    pub geometry: BathGeometry,
    pub rates: RateSet,
}
