//! Two coupled copies of the adaptation pathway, one per side of the growth
//! cone, exchanging `M` at rate `k1` and `A` at rate `k2`.

use super::adaptation::{adaptation_rhs, AdaptationParams};
use crate::error::{Error, Result};
use crate::numerics::{rk4_integrate_sampled, solve_linear_dense, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompartmentCoupling {
    pub k1: f64,
    pub k2: f64,
}

impl Default for CompartmentCoupling {
    fn default() -> Self {
        CompartmentCoupling { k1: 1.0, k2: 0.1 }
    }
}

impl CompartmentCoupling {
    pub fn validate(&self) -> Result<()> {
        if !(self.k1 >= 0.0 && self.k2 >= 0.0 && self.k1.is_finite() && self.k2.is_finite()) {
            return Err(Error::invalid(format!("coupling fluxes must be non-negative: {self:?}")));
        }
        Ok(())
    }
}

fn positive_rates(ka: &[f64]) -> Result<()> {
    if ka.iter().all(|v| *v > 0.0 && v.is_finite()) {
        Ok(())
    } else {
        Err(Error::invalid(format!("activation rates must be positive, got {ka:?}")))
    }
}

/// States are `[M1, A1, M2, A2]`, starting from the single-compartment
/// equilibrium at ligand `l0`.
#[allow(clippy::too_many_arguments)]
pub fn two_compartment_simulate(
    l0: f64,
    l1: f64,
    l2: f64,
    p: &AdaptationParams,
    cpl: &CompartmentCoupling,
    t_end: f64,
    h: f64,
    sample_every: usize,
) -> Result<Trajectory> {
    two_compartment_simulate_ka(p.ka(l0), p.ka(l1), p.ka(l2), p, cpl, t_end, h, sample_every)
}

/// As [`two_compartment_simulate`] with activation rates given directly.
#[allow(clippy::too_many_arguments)]
pub fn two_compartment_simulate_ka(
    ka0: f64,
    ka1: f64,
    ka2: f64,
    p: &AdaptationParams,
    cpl: &CompartmentCoupling,
    t_end: f64,
    h: f64,
    sample_every: usize,
) -> Result<Trajectory> {
    p.validate()?;
    cpl.validate()?;
    positive_rates(&[ka0, ka1, ka2])?;
    let s0 = p.steady_state_ka(ka0);
    let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| {
        let (dm1, da1) = adaptation_rhs(p, ka1, y[0], y[1]);
        let (dm2, da2) = adaptation_rhs(p, ka2, y[2], y[3]);
        let fm = cpl.k1 * (y[2] - y[0]);
        let fa = cpl.k2 * (y[3] - y[1]);
        dy[0] = dm1 + fm;
        dy[1] = da1 + fa;
        dy[2] = dm2 - fm;
        dy[3] = da2 - fa;
    };
    rk4_integrate_sampled(rhs, &[s0.m, s0.a, s0.m, s0.a], 0.0, t_end, h, sample_every)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoCompartmentSteady {
    pub a1: f64,
    pub a2: f64,
    pub m1: f64,
    pub m2: f64,
}

pub fn two_compartment_steady(
    l1: f64,
    l2: f64,
    p: &AdaptationParams,
    cpl: &CompartmentCoupling,
) -> Result<TwoCompartmentSteady> {
    two_compartment_steady_ka(p.ka(l1), p.ka(l2), p, cpl)
}

/// Closed-form equilibrium with `r1 = r + λk_d`, `r2 = r + 2k2`,
/// `k = ka1 − ka2`, `ks = ka1 + ka2`, `kp = ka1 ka2`.
pub fn two_compartment_steady_ka(
    ka1: f64,
    ka2: f64,
    p: &AdaptationParams,
    cpl: &CompartmentCoupling,
) -> Result<TwoCompartmentSteady> {
    p.validate()?;
    cpl.validate()?;
    positive_rates(&[ka1, ka2])?;
    let (lam, kd, r, k1) = (p.lambda, p.kd, p.r, cpl.k1);
    let r1 = r + lam * kd;
    let r2 = r + 2.0 * cpl.k2;
    let (k, ks, kp) = (ka1 - ka2, ka1 + ka2, ka1 * ka2);
    let base = p.a_star();

    let den = lam * r2 * kp + k1 * ks * (r2 + lam * kd);
    let shift = r1 * k1 * k / den;
    let dd = r2 * (lam * kp + k1 * ks) + lam * kd * k1 * ks;
    let pre = p.m * r1 / (lam * r);
    let m_of = |ka_other: f64| pre * (r2 * (lam * ka_other + 2.0 * k1) + 2.0 * lam * kd * k1) / dd;
    Ok(TwoCompartmentSteady { a1: base * (1.0 + shift), a2: base * (1.0 - shift), m1: m_of(ka2), m2: m_of(ka1) })
}

/// Sum of activation rates `λr/(k1(r + λk_d))` beyond which the steady
/// gradient shrinks as the overall ligand level grows.
pub fn optimal_ligand_sum(p: &AdaptationParams, cpl: &CompartmentCoupling) -> Result<f64> {
    p.validate()?;
    cpl.validate()?;
    if cpl.k1 == 0.0 {
        return Err(Error::invalid("optimal ligand sum needs k1 > 0"));
    }
    Ok(p.lambda * p.r / (cpl.k1 * (p.r + p.lambda * p.kd)))
}

/// Fast/slow composite for a ligand step `l0 → (l1, l2)` with `k2 = 0`.
/// Each compartment first equilibrates its own `M ⇌ A` exchange at rate
/// `λ(ka_i + k_d)`, then drifts on the slow manifold `A_i = (ka_i/k_d) M_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedAsymptotic {
    pub ka: [f64; 2],
    pub kd: f64,
    pub a_s: f64,
    pub m0: f64,
    pub fast_rates: [f64; 2],
    pub slow_rates: [f64; 2],
    /// fast-scale limits
    pub m1: [f64; 2],
    pub a1: [f64; 2],
    /// offsets: `M_i → −d_i` on the slow scale
    pub d: [f64; 2],
    /// `(r + k1) k_d |ka1 − ka2| / (k1 k_d)`
    pub validity_ratio: f64,
    pub valid: bool,
}

impl MatchedAsymptotic {
    /// `[M1, A1, M2, A2]` at time `t`.
    pub fn eval(&self, t: f64) -> [f64; 4] {
        let mut out = [0.0; 4];
        for i in 0..2 {
            let ef = (-self.fast_rates[i] * t).exp();
            let slow_m = (self.m1[i] + self.d[i]) * (-self.slow_rates[i] * t).exp() - self.d[i];
            out[2 * i] = slow_m + (self.m0 - self.m1[i]) * ef;
            out[2 * i + 1] = self.ka[i] / self.kd * slow_m + (self.a_s - self.a1[i]) * ef;
        }
        out
    }
}

const VALIDITY_MIN: f64 = 5.0;

pub fn two_compartment_matched_asymptotic(
    l0: f64,
    l1: f64,
    l2: f64,
    p: &AdaptationParams,
    cpl: &CompartmentCoupling,
) -> Result<MatchedAsymptotic> {
    p.validate()?;
    cpl.validate()?;
    if cpl.k2 != 0.0 {
        return Err(Error::invalid("matched asymptotics assume k2 = 0"));
    }
    let (ka0, ka) = (p.ka(l0), [p.ka(l1), p.ka(l2)]);
    positive_rates(&[ka0, ka[0], ka[1]])?;
    let (kd, r, k1, m) = (p.kd, p.r, cpl.k1, p.m);
    let a_s = p.a_star();
    let total0 = a_s * (1.0 + kd / ka0);
    let m1 = ka.map(|k| total0 * kd / (k + kd));
    let a1 = ka.map(|k| total0 * k / (k + kd));
    let slow_rates = ka.map(|k| (r * k + k1 * kd) / (kd + k));
    // slow system  M' = D M + h;  D d = h gives the offsets
    let dmat = vec![vec![-slow_rates[0], k1 * kd / (kd + ka[0])], vec![k1 * kd / (kd + ka[1]), -slow_rates[1]]];
    let hvec = [m * kd / (kd + ka[0]), m * kd / (kd + ka[1])];
    let dv = solve_linear_dense(&dmat, &hvec)?;
    let validity_ratio = if k1 == 0.0 { f64::INFINITY } else { (r + k1) * kd * (ka[0] - ka[1]).abs() / (k1 * kd) };
    Ok(MatchedAsymptotic {
        ka,
        kd,
        a_s,
        m0: a_s * kd / ka0,
        fast_rates: ka.map(|k| p.lambda * (k + kd)),
        slow_rates,
        m1,
        a1,
        d: [dv[0], dv[1]],
        validity_ratio,
        valid: validity_ratio >= VALIDITY_MIN,
    })
}
