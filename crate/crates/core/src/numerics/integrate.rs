use super::Trajectory;
use crate::error::{Error, Result};

/// Reusable RK4 stage buffers.
#[derive(Debug, Clone)]
pub struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4 {
    pub fn new(dim: usize) -> Self {
        Rk4 { k1: vec![0.0; dim], k2: vec![0.0; dim], k3: vec![0.0; dim], k4: vec![0.0; dim], tmp: vec![0.0; dim] }
    }

    /// Advance `y` in place from `t` by `h`.
    pub fn step<F>(&mut self, rhs: &mut F, t: f64, y: &mut [f64], h: f64) -> Result<()>
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let n = y.len();
        rhs(t, y, &mut self.k1);
        check(t, &self.k1)?;
        for i in 0..n {
            self.tmp[i] = y[i] + 0.5 * h * self.k1[i];
        }
        rhs(t + 0.5 * h, &self.tmp, &mut self.k2);
        check(t + 0.5 * h, &self.k2)?;
        for i in 0..n {
            self.tmp[i] = y[i] + 0.5 * h * self.k2[i];
        }
        rhs(t + 0.5 * h, &self.tmp, &mut self.k3);
        check(t + 0.5 * h, &self.k3)?;
        for i in 0..n {
            self.tmp[i] = y[i] + h * self.k3[i];
        }
        rhs(t + h, &self.tmp, &mut self.k4);
        check(t + h, &self.k4)?;
        for i in 0..n {
            y[i] += h / 6.0 * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
        Ok(())
    }
}

/// Single classical RK4 step (allocates; prefer [`Rk4`] in loops).
pub fn rk4_step<F>(mut rhs: F, t: f64, y: &[f64], h: f64) -> Result<Vec<f64>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let mut out = y.to_vec();
    Rk4::new(y.len()).step(&mut rhs, t, &mut out, h)?;
    Ok(out)
}

fn check(t: f64, dy: &[f64]) -> Result<()> {
    if dy.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { t })
    }
}

fn validate(y0: &[f64], t0: f64, t1: f64, h: f64) -> Result<usize> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::invalid(format!("step must be positive, got {h}")));
    }
    if !(t1 > t0) {
        return Err(Error::invalid(format!("need t1 > t0, got [{t0}, {t1}]")));
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("initial state is not finite"));
    }
    // tolerate round-off so that (t1-t0)/h = 10.000000000002 is 10 steps
    let steps = ((t1 - t0) / h * (1.0 - 1e-12)).ceil() as usize;
    Ok(steps.max(1))
}

/// Fixed-step classical RK4 over `[t0, t1]`; the final step is shortened to
/// land exactly on `t1`.
pub fn rk4_integrate<F>(rhs: F, y0: &[f64], t0: f64, t1: f64, h: f64) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    rk4_integrate_sampled(rhs, y0, t0, t1, h, 1)
}

/// As [`rk4_integrate`] but records only every `every`-th step (the final
/// state is always recorded).
pub fn rk4_integrate_sampled<F>(mut rhs: F, y0: &[f64], t0: f64, t1: f64, h: f64, every: usize) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let steps = validate(y0, t0, t1, h)?;
    let every = every.max(1);
    let mut traj = Trajectory::with_capacity(steps / every + 2);
    let mut y = y0.to_vec();
    let mut rk = Rk4::new(y.len());
    traj.push(t0, &y);
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        let dt = if k + 1 == steps { t1 - t } else { h };
        rk.step(&mut rhs, t, &mut y, dt)?;
        if (k + 1) % every == 0 || k + 1 == steps {
            traj.push(if k + 1 == steps { t1 } else { t0 + (k + 1) as f64 * h }, &y);
        }
    }
    Ok(traj)
}

/// Fixed-step explicit Euler over `[t0, t1]`.
pub fn euler_integrate<F>(mut rhs: F, y0: &[f64], t0: f64, t1: f64, h: f64) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let steps = validate(y0, t0, t1, h)?;
    let mut traj = Trajectory::with_capacity(steps + 1);
    let mut y = y0.to_vec();
    let mut dy = vec![0.0; y.len()];
    traj.push(t0, &y);
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        let dt = if k + 1 == steps { t1 - t } else { h };
        rhs(t, &y, &mut dy);
        check(t, &dy)?;
        for (yi, di) in y.iter_mut().zip(&dy) {
            *yi += dt * di;
        }
        traj.push(if k + 1 == steps { t1 } else { t0 + (k + 1) as f64 * h }, &y);
    }
    Ok(traj)
}
