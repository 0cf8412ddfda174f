//! Two-part receptor driven by the proton motive force `p(t) = c0 ± k t`.
//! The fast part sits at its equilibrium `z_f0 + c1 p`; the slow part
//! relaxes towards `z_f0 − Δz + c1 p` with time constant `τ`. The receptor
//! locks (cell tumbles) when the two parts meet.

use crate::error::{Error, Result};
use crate::numerics::Rk4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PistonParams {
    pub z_f0: f64,
    pub delta_z: f64,
    pub c0: f64,
    pub c1: f64,
    /// PMF ramp rate
    pub k: f64,
    pub tau: f64,
    pub lock_tol: f64,
}

impl Default for PistonParams {
    fn default() -> Self {
        PistonParams { z_f0: 0.0, delta_z: 1.0, c0: 1.0, c1: 1.0, k: 1.0, tau: 2.0, lock_tol: 1e-3 }
    }
}

impl PistonParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.delta_z > 0.0 && self.lock_tol > 0.0) {
            return Err(Error::invalid("piston needs tau, delta_z and lock_tol positive"));
        }
        Ok(())
    }

    fn pmf(&self, sign: f64, t: f64) -> f64 {
        self.c0 + sign * self.k * t
    }

    pub fn z_fast(&self, sign: f64, t: f64) -> f64 {
        self.z_f0 + self.c1 * self.pmf(sign, t)
    }

    /// Closed-form `z_f − z_s` when the slow part starts at its equilibrium.
    pub fn separation(&self, sign: f64, t: f64) -> f64 {
        self.delta_z + sign * self.c1 * self.k * self.tau * (-(-t / self.tau).exp_m1())
    }

    /// First time the parts meet on a down-gradient ramp, if they ever do.
    pub fn lock_time(&self, sign: f64) -> Option<f64> {
        let drive = -sign * self.c1 * self.k * self.tau;
        if drive <= self.delta_z {
            return None;
        }
        Some(-self.tau * (1.0 - self.delta_z / drive).ln())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PistonRun {
    pub times: Vec<f64>,
    pub z_fast: Vec<f64>,
    pub z_slow: Vec<f64>,
    /// times at which `|z_f − z_s|` drops to within `lock_tol`
    pub lock_events: Vec<f64>,
}

/// Integrate the slow part with RK4. `ramp_sign` is +1 swimming up the
/// oxygen gradient and −1 swimming down it.
pub fn piston_receptor_simulate(p: &PistonParams, ramp_sign: f64, t_end: f64, h: f64) -> Result<PistonRun> {
    p.validate()?;
    if ramp_sign != 1.0 && ramp_sign != -1.0 {
        return Err(Error::invalid(format!("ramp sign must be +1 or -1, got {ramp_sign}")));
    }
    if !(h > 0.0 && t_end > 0.0) {
        return Err(Error::invalid("t_end and h must be positive"));
    }
    let mut rk = Rk4::new(1);
    let mut rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = (p.z_fast(ramp_sign, t) - p.delta_z - y[0]) / p.tau;
    };
    let steps = (t_end / h).ceil() as usize;
    let mut run =
        PistonRun { times: vec![0.0], z_fast: vec![p.z_fast(ramp_sign, 0.0)], z_slow: vec![], lock_events: vec![] };
    let mut y = [p.z_fast(ramp_sign, 0.0) - p.delta_z];
    run.z_slow.push(y[0]);
    let mut locked = false;
    for i in 1..=steps {
        let t0 = (i - 1) as f64 * h;
        let step = h.min(t_end - t0);
        rk.step(&mut rhs, t0, &mut y, step)?;
        let t = t0 + step;
        let zf = p.z_fast(ramp_sign, t);
        let now = (zf - y[0]).abs() <= p.lock_tol;
        if now && !locked {
            run.lock_events.push(t);
        }
        locked = now;
        run.times.push(t);
        run.z_fast.push(zf);
        run.z_slow.push(y[0]);
    }
    Ok(run)
}
