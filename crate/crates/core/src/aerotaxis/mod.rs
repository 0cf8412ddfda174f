//! Oxygen-seeking bacteria in a capillary: the band-formation PDE, its
//! steady and quasi-steady oracles, a slow-adaptation Monte-Carlo
//! comparator, the diffusion-limit coefficients and the piston receptor.

mod keller_segel;
mod metrics;
mod montecarlo;
mod params;
mod pde;
mod piston;
mod quasi;
mod steady;
mod turning;

pub use keller_segel::{keller_segel_coefficients, random_walk_diffusivity};
pub use metrics::{band_metrics, band_metrics_series, BandDetection, BandMetrics, MIN_PEAK_TO_MEAN};
pub use montecarlo::{
    monte_carlo_slow_adaptation, monte_carlo_trace, monte_carlo_trials, MonteCarloConfig, MonteCarloResult,
};
pub use params::{
    nondimensionalize, AerotaxisParams, DimensionalParams, Nondimensional, BACTERIA_SCALE, LENGTH_SCALE_M,
    OXYGEN_SCALE, TIME_SCALE_S,
};
pub use pde::{simulate_band, CellField, FieldSeries};
pub use piston::{piston_receptor_simulate, PistonParams, PistonRun};
pub use quasi::{diffusion_time, quasi_steady_state, QuasiInputs, QuasiSteady};
pub use steady::{
    steady_state, steady_state_general, steady_state_general_exact, steady_state_intermediate, steady_state_low,
    Regime, SolutionKind, SteadyInputs, SteadyStateSolution,
};
pub use turning::{turning_rates, TurningThresholds};
