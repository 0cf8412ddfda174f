//! Single-cell run-and-tumble walk between reflecting walls with a
//! favourable band in the middle and slowly adapting turning.
//!
//! Rules: no turning inside the band; a cell outside the band swimming away
//! from it is (re)stimulated to rate `c`; after that the rate decays as
//! `c e^{−(t−τ)/t_a}`, `τ` being the last time the cell was stimulated.
//! With `t_a = 0` the rate is `c` while swimming away and zero otherwise.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloConfig {
    pub v: f64,
    /// turning rate right after stimulation
    pub c: f64,
    /// adaptation time
    pub t_a: f64,
    pub band_half_width: f64,
    pub wall_half_width: f64,
    pub n_trials: usize,
    pub seed: u64,
    pub dt: f64,
    pub t_end: f64,
    /// leading fraction of each trial excluded from the average
    pub burn_in: f64,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            v: 1.0,
            c: 5.0,
            t_a: 0.2,
            band_half_width: 1.0,
            wall_half_width: 2.0,
            n_trials: 10_000,
            seed: 0,
            dt: 0.01,
            t_end: 200.0,
            burn_in: 0.2,
        }
    }
}

impl MonteCarloConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.band_half_width && self.band_half_width < self.wall_half_width) {
            return Err(Error::invalid("need 0 < band_half_width < wall_half_width"));
        }
        if self.n_trials == 0 {
            return Err(Error::invalid("n_trials must be at least 1"));
        }
        if !(self.v > 0.0 && self.dt > 0.0 && self.t_end > 0.0) {
            return Err(Error::invalid("v, dt and t_end must be positive"));
        }
        if !(self.c >= 0.0 && self.t_a >= 0.0) {
            return Err(Error::invalid("c and t_a must be non-negative"));
        }
        if !(0.0..1.0).contains(&self.burn_in) {
            return Err(Error::invalid("burn_in must lie in [0, 1)"));
        }
        if self.v * self.dt >= self.wall_half_width - self.band_half_width {
            return Err(Error::invalid("step length v*dt must be shorter than the gap between band and wall"));
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    fn burn_steps(&self) -> usize {
        (self.burn_in * self.steps() as f64).floor() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloResult {
    /// time-and-trial averaged fraction of cells inside the band
    pub inside_fraction: f64,
    /// density inside over density outside
    pub inside_outside_ratio: f64,
    pub inside_samples: u64,
    pub total_samples: u64,
}

struct Walker {
    x: f64,
    dir: f64,
    stimulated_at: f64,
}

impl Walker {
    fn new(rng: &mut ChaCha8Rng, cfg: &MonteCarloConfig) -> Self {
        let w = cfg.wall_half_width;
        let x = rng.gen_range(-w..w);
        let dir = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        Walker { x, dir, stimulated_at: f64::NEG_INFINITY }
    }

    /// Advance one step; returns whether the cell ends inside the band.
    fn step(&mut self, t: f64, rng: &mut ChaCha8Rng, cfg: &MonteCarloConfig) -> bool {
        let w = cfg.wall_half_width;
        self.x += cfg.v * self.dir * cfg.dt;
        if self.x > w {
            self.x = 2.0 * w - self.x;
            self.dir = -1.0;
        } else if self.x < -w {
            self.x = -2.0 * w - self.x;
            self.dir = 1.0;
        }
        let inside = self.x.abs() < cfg.band_half_width;
        let leaving = !inside && self.x * self.dir > 0.0;
        if leaving {
            self.stimulated_at = t;
        }
        let sigma = if inside {
            0.0
        } else if cfg.t_a == 0.0 {
            if leaving {
                cfg.c
            } else {
                0.0
            }
        } else {
            cfg.c * (-(t - self.stimulated_at) / cfg.t_a).exp()
        };
        if sigma > 0.0 {
            let p = -(-sigma * cfg.dt).exp_m1();
            if rng.gen::<f64>() < p {
                self.dir = -self.dir;
            }
        }
        inside
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(cfg: &MonteCarloConfig, trial: usize) -> (u64, u64) {
    let mut rng = trial_rng(cfg.seed, trial);
    let mut w = Walker::new(&mut rng, cfg);
    let burn = cfg.burn_steps();
    let (mut inside, mut total) = (0u64, 0u64);
    for k in 1..=cfg.steps() {
        let is_in = w.step(k as f64 * cfg.dt, &mut rng, cfg);
        if k > burn {
            inside += is_in as u64;
            total += 1;
        }
    }
    (inside, total)
}

/// `(inside, total)` sample counts of every trial, in trial order. Each
/// trial owns the RNG stream `(seed, trial)`, so the result does not depend
/// on thread count.
pub fn monte_carlo_trials(cfg: &MonteCarloConfig) -> Result<Vec<(u64, u64)>> {
    cfg.validate()?;
    Ok((0..cfg.n_trials).into_par_iter().map(|i| run_trial(cfg, i)).collect())
}

/// Average over `n_trials` independent cells.
pub fn monte_carlo_slow_adaptation(cfg: &MonteCarloConfig) -> Result<MonteCarloResult> {
    Ok(MonteCarloResult::from_trials(cfg, &monte_carlo_trials(cfg)?))
}

impl MonteCarloResult {
    /// Pool per-trial counts; the ratio compares densities per unit length.
    pub fn from_trials(cfg: &MonteCarloConfig, trials: &[(u64, u64)]) -> Self {
        let (inside, total) = trials.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        let frac = inside as f64 / total as f64;
        let band = 2.0 * cfg.band_half_width;
        let outside = 2.0 * (cfg.wall_half_width - cfg.band_half_width);
        let ratio = if frac < 1.0 { (frac / band) / ((1.0 - frac) / outside) } else { f64::INFINITY };
        MonteCarloResult {
            inside_fraction: frac,
            inside_outside_ratio: ratio,
            inside_samples: inside,
            total_samples: total,
        }
    }
}

/// Position of one trial's cell every `every` steps, as `(t, x)`.
pub fn monte_carlo_trace(cfg: &MonteCarloConfig, trial: usize, every: usize) -> Result<Vec<(f64, f64)>> {
    cfg.validate()?;
    let every = every.max(1);
    let mut rng = trial_rng(cfg.seed, trial);
    let mut w = Walker::new(&mut rng, cfg);
    let mut out = vec![(0.0, w.x)];
    for k in 1..=cfg.steps() {
        let t = k as f64 * cfg.dt;
        w.step(t, &mut rng, cfg);
        if k % every == 0 {
            out.push((t, w.x));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(c: f64, t_a: f64) -> MonteCarloConfig {
        MonteCarloConfig { c, t_a, n_trials: 400, t_end: 100.0, ..Default::default() }
    }

    #[test]
    fn no_turning_is_unbiased() {
        let r = monte_carlo_slow_adaptation(&small(0.0, 0.2)).unwrap();
        assert!((r.inside_outside_ratio - 1.0).abs() < 0.1, "{}", r.inside_outside_ratio);
    }

    #[test]
    fn fast_adaptation_beats_slow() {
        let slow = monte_carlo_slow_adaptation(&small(5.0, 0.2)).unwrap();
        let fast = monte_carlo_slow_adaptation(&small(5.0, 0.0)).unwrap();
        assert!(slow.inside_outside_ratio > 1.5);
        assert!(fast.inside_outside_ratio > slow.inside_outside_ratio);
    }

    #[test]
    fn deterministic_for_seed() {
        let cfg = MonteCarloConfig { n_trials: 64, t_end: 20.0, seed: 7, ..Default::default() };
        let a = monte_carlo_slow_adaptation(&cfg).unwrap();
        let b = monte_carlo_slow_adaptation(&cfg).unwrap();
        assert_eq!(a, b);
        let other = monte_carlo_slow_adaptation(&MonteCarloConfig { seed: 8, ..cfg }).unwrap();
        assert_ne!(a.inside_samples, other.inside_samples);
    }

    #[test]
    fn trace_stays_between_walls() {
        let cfg = MonteCarloConfig { t_end: 50.0, ..Default::default() };
        let tr = monte_carlo_trace(&cfg, 3, 10).unwrap();
        assert!(tr.iter().all(|&(_, x)| x.abs() <= cfg.wall_half_width));
        assert_eq!(tr.len(), 501);
    }

    #[test]
    fn rejects_bad_geometry() {
        let cfg = MonteCarloConfig { band_half_width: 3.0, ..Default::default() };
        assert!(cfg.validate().is_err());
    }
}
