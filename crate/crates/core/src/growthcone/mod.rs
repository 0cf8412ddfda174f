//! Growth-cone gradient sensing: the calcium / adenylate-cyclase switch,
//! the perfectly adapting pathway, its two-compartment and spatial
//! extensions, and a calcium-dependent activation rate.

mod adaptation;
mod caac;
mod rd;
mod switch;
mod twocomp;

pub use adaptation::{
    adaptation_asymptotic, adaptation_simulate, step_schedule, AdaptationAsymptotic, AdaptationParams, AdaptationState,
    InitialState, Integrator,
};
pub use caac::{
    bifurcation_scan, ca_ac_nullclines, ca_ac_rhs, ca_ac_simulate, ca_ac_steady_states, hysteresis_sweep, BranchRow,
    CaAcParams, CaAcState, HysteresisSweep, Nullclines, SteadyState,
};
pub use rd::{reaction_diffusion_simulate, LigandProfile, RdConfig, RdField, RdSeries};
pub use switch::{calcium_switch_rate, SwitchRateParams};
pub use twocomp::{
    optimal_ligand_sum, two_compartment_matched_asymptotic, two_compartment_simulate, two_compartment_simulate_ka,
    two_compartment_steady, two_compartment_steady_ka, CompartmentCoupling, MatchedAsymptotic, TwoCompartmentSteady,
};
