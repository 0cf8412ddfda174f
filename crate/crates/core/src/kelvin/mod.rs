//! Linear viscoelastic cell mechanics built from three-parameter Kelvin
//! bodies composed in series and in parallel.

mod body;
mod network;
mod parallel;
mod sweep;

pub use body::{
    body_from_creep, convert_micropipette_params, material_params, single_body_deform, Forcing, KelvinBody, Material,
};
pub use network::{
    network_deform, network_i, network_ii, series_deform, DeformationResult, Element, ElementRun, KelvinNetwork,
};
pub use parallel::{
    dense_system, exact_parallel_solution, parallel_assemble, parallel_simulate, rhs_closed_forms, ExactParallel,
    ExactRun, GroupRun, ParallelGroup, ParallelSystem,
};
pub use sweep::{
    frequency_sweep, group_metrics, parameter_sweep, peak_envelope, FrequencyRow, GroupMetrics, SweepParam, SweepRow,
};
