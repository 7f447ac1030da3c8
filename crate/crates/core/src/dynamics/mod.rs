//! Time evolution, concurrence trajectories and survival of generated
//! entanglement.

mod analytic;
pub mod ode;
mod propagate;
mod survival;

pub use analytic::{
    analytic_concurrence, analytic_concurrence_with_rate, analytic_margin, analytic_state,
    analytic_state_with_rate, first_order_rate, generation_condition, generation_threshold,
    scaled_survival_time, slow_coefficient, thermal_bath_condition, zero_limit_state,
    ThermalCondition,
};
pub use ode::OdeOptions;
pub use propagate::{
    default_times, evolve, format_number, propagate_ode, propagate_spectral, Method, TimeUnit,
    Trajectory, POSITIVITY_FLAG,
};
pub use survival::{
    representative_state, survival_time, survival_time_for, SurvivalReport, CROSSING_TOL,
    DEFAULT_FIELD,
};
