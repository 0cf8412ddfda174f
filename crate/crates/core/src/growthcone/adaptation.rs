//! Perfectly adapting two-state pathway: a modified substance `M` is
//! produced at rate `m`, activated by ligand-bound receptor at rate
//! `k_a(l) = k l`, deactivated at `k_d`, and the active form `A` is
//! recycled at `r`. `λ` separates the fast exchange from the slow turnover.

use crate::error::{Error, Result};
use crate::numerics::{euler_integrate, rk4_integrate, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptationParams {
    pub m: f64,
    pub lambda: f64,
    pub k: f64,
    pub kd: f64,
    pub r: f64,
}

impl Default for AdaptationParams {
    fn default() -> Self {
        AdaptationParams { m: 0.1, lambda: 5.0, k: 0.2, kd: 0.2, r: 1.0 }
    }
}

impl AdaptationParams {
    pub fn validate(&self) -> Result<()> {
        if ![self.m, self.lambda, self.k, self.kd, self.r].iter().all(|v| *v > 0.0 && v.is_finite()) {
            return Err(Error::invalid(format!("adaptation parameters must be positive: {self:?}")));
        }
        Ok(())
    }

    pub fn ka(&self, l: f64) -> f64 {
        self.k * l
    }

    /// Baseline activity `m/r`, independent of ligand.
    pub fn a_star(&self) -> f64 {
        self.m / self.r
    }

    /// Exact equilibrium `(M, A)` for a constant activation rate.
    pub fn steady_state_ka(&self, ka: f64) -> AdaptationState {
        let a = self.a_star();
        AdaptationState { m: a * (self.r + self.lambda * self.kd) / (self.lambda * ka), a }
    }

    pub fn steady_state(&self, l: f64) -> AdaptationState {
        self.steady_state_ka(self.ka(l))
    }

    /// Slow adaptation rate `r k l/(k_d + k l)` at ligand `l`.
    pub fn slow_rate(&self, l: f64) -> f64 {
        self.r * self.ka(l) / (self.kd + self.ka(l))
    }

    pub fn fast_rate(&self, l: f64) -> f64 {
        self.lambda * (self.kd + self.ka(l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptationState {
    pub m: f64,
    pub a: f64,
}

pub(crate) fn adaptation_rhs(p: &AdaptationParams, ka: f64, m: f64, a: f64) -> (f64, f64) {
    let exchange = p.lambda * (ka * m - p.kd * a);
    (p.m - exchange, -p.r * a + exchange)
}

/// Starting point for a simulation at ligand `l_init`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    /// exact equilibrium, `M = (m/r)(r + λk_d)/(λk_a)`
    Exact,
    /// its `λ → ∞` limit `M = (m/r) k_d/k_a`, shared with the asymptotic solution
    LeadingOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    Euler,
    Rk4,
}

/// Integrate from the (exact or leading-order) equilibrium at ligand
/// `l_init`. States are `[M, A]`.
pub fn adaptation_simulate<S>(
    l_init: f64,
    init: InitialState,
    schedule: S,
    p: &AdaptationParams,
    t_end: f64,
    h: f64,
    method: Integrator,
) -> Result<Trajectory>
where
    S: Fn(f64) -> f64,
{
    p.validate()?;
    if !(l_init > 0.0) {
        return Err(Error::invalid(format!("initial ligand must be positive, got {l_init}")));
    }
    let s0 = match init {
        InitialState::Exact => p.steady_state(l_init),
        InitialState::LeadingOrder => AdaptationState { m: p.a_star() * p.kd / p.ka(l_init), a: p.a_star() },
    };
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
        let (dm, da) = adaptation_rhs(p, p.ka(schedule(t)), y[0], y[1]);
        dy[0] = dm;
        dy[1] = da;
    };
    match method {
        Integrator::Euler => euler_integrate(rhs, &[s0.m, s0.a], 0.0, t_end, h),
        Integrator::Rk4 => rk4_integrate(rhs, &[s0.m, s0.a], 0.0, t_end, h),
    }
}

/// Ligand jumping from `l0` to `l1` at `t_step`.
pub fn step_schedule(l0: f64, l1: f64, t_step: f64) -> impl Fn(f64) -> f64 {
    move |t| if t < t_step { l0 } else { l1 }
}

/// Two-time-scale approximation of the response to a ligand step
/// `l0 → l1` at `t = 0`, valid for `λ ≫ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptationAsymptotic {
    pub r_fast: f64,
    pub r_slow: f64,
    pub a_s: f64,
    pub a1: f64,
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
    /// false when `λ < 5`
    pub lambda_ok: bool,
}

impl AdaptationAsymptotic {
    pub fn eval(&self, t: f64) -> AdaptationState {
        let (ef, es) = ((-self.r_fast * t).exp(), (-self.r_slow * t).exp());
        AdaptationState {
            m: self.m2 + (self.m0 - self.m1) * ef + (self.m1 - self.m2) * es,
            a: self.a_s + (self.a1 - self.a_s) * (es - ef),
        }
    }
}

pub fn adaptation_asymptotic(l0: f64, l1: f64, p: &AdaptationParams) -> Result<AdaptationAsymptotic> {
    p.validate()?;
    if !(l0 > 0.0 && l1 > 0.0) {
        return Err(Error::invalid("ligand levels must be positive"));
    }
    let (ka0, ka1) = (p.ka(l0), p.ka(l1));
    let a_s = p.a_star();
    let lift = (1.0 + p.kd / ka0) / (1.0 + p.kd / ka1);
    Ok(AdaptationAsymptotic {
        r_fast: p.fast_rate(l1),
        r_slow: p.slow_rate(l1),
        a_s,
        a1: a_s * lift,
        m0: a_s * p.kd / ka0,
        m1: a_s * (p.kd / ka1) * lift,
        m2: a_s * p.kd / ka1,
        lambda_ok: p.lambda >= 5.0,
    })
}
