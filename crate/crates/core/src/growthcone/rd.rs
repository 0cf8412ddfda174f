//! Spatially extended adaptation pathway on a segment with no-flux ends:
//! `M` diffuses with `D1`, `A` with `D2`, ligand fixed in space.

use super::adaptation::{adaptation_rhs, AdaptationParams};
use crate::error::{Error, Result};
use crate::numerics::{ftcs_diffusion_step, Boundary, Grid1D};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdConfig {
    pub d1: f64,
    pub d2: f64,
    pub grid: Grid1D,
    pub t_end: f64,
    /// record every this many steps (the final state is always kept)
    pub sample_every: usize,
}

impl Default for RdConfig {
    fn default() -> Self {
        let dx = 1.0 / 9.0;
        RdConfig { d1: 0.5, d2: 0.0, grid: Grid1D { n: 91, dx, dt: 0.01 }, t_end: 1000.0, sample_every: 10_000 }
    }
}

impl RdConfig {
    pub fn length(&self) -> f64 {
        (self.grid.n - 1) as f64 * self.grid.dx
    }
}

/// Ligand shapes used by the experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LigandProfile {
    Uniform {
        level: f64,
    },
    /// straight line from `left` to `right`
    Linear {
        left: f64,
        right: f64,
    },
    /// parabola through `edge` at both ends and `centre` in the middle
    Quadratic {
        centre: f64,
        edge: f64,
    },
}

impl LigandProfile {
    pub fn sample(&self, grid: &Grid1D) -> Vec<f64> {
        let len = (grid.n - 1) as f64 * grid.dx;
        (0..grid.n)
            .map(|i| {
                let s = grid.x(i) / len;
                match *self {
                    LigandProfile::Uniform { level } => level,
                    LigandProfile::Linear { left, right } => left + (right - left) * s,
                    LigandProfile::Quadratic { centre, edge } => centre + (edge - centre) * (2.0 * s - 1.0).powi(2),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RdField {
    pub m: Vec<f64>,
    pub a: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RdSeries {
    pub times: Vec<f64>,
    pub fields: Vec<RdField>,
}

impl RdSeries {
    pub fn last(&self) -> &RdField {
        self.fields.last().expect("series always holds the initial field")
    }
}

/// FTCS diffusion followed by an explicit reaction update, starting from
/// `A = m/r`, `M = (m/r) k_d/k_a(l(x))`.
pub fn reaction_diffusion_simulate(ligand: &[f64], p: &AdaptationParams, cfg: &RdConfig) -> Result<RdSeries> {
    p.validate()?;
    let g = cfg.grid;
    if ligand.len() != g.n {
        return Err(Error::invalid(format!("ligand has {} nodes, grid has {}", ligand.len(), g.n)));
    }
    if !ligand.iter().all(|l| *l > 0.0 && l.is_finite()) {
        return Err(Error::invalid("ligand must be positive everywhere"));
    }
    if !(cfg.d1 >= 0.0 && cfg.d2 >= 0.0 && cfg.t_end > 0.0) {
        return Err(Error::invalid("diffusivities must be non-negative and t_end positive"));
    }
    let ka: Vec<f64> = ligand.iter().map(|&l| p.ka(l)).collect();
    let stiff = ka.iter().fold(0.0f64, |acc, &k| acc.max(p.r + p.lambda * (k + p.kd)));
    if stiff * g.dt > 1.0 {
        return Err(Error::invalid(format!("reaction step unstable: dt * rate = {}", stiff * g.dt)));
    }
    let mut field = RdField { m: vec![], a: vec![] };
    for &k in &ka {
        field.m.push(p.a_star() * p.kd / k);
        field.a.push(p.a_star());
    }
    let steps = (cfg.t_end / g.dt).round() as usize;
    let every = cfg.sample_every.max(1);
    let mut out = RdSeries { times: vec![0.0], fields: vec![field.clone()] };
    for step in 1..=steps {
        let mut m = ftcs_diffusion_step(&field.m, cfg.d1, &g, Boundary::ZERO_FLUX)?;
        let mut a = if cfg.d2 > 0.0 {
            ftcs_diffusion_step(&field.a, cfg.d2, &g, Boundary::ZERO_FLUX)?
        } else {
            field.a.clone()
        };
        for i in 0..g.n {
            let (dm, da) = adaptation_rhs(p, ka[i], field.m[i], field.a[i]);
            m[i] += g.dt * dm;
            a[i] += g.dt * da;
        }
        if !(m.iter().chain(&a).all(|v| v.is_finite())) {
            return Err(Error::NonFinite { t: step as f64 * g.dt });
        }
        field = RdField { m, a };
        if step % every == 0 || step == steps {
            out.times.push(step as f64 * g.dt);
            out.fields.push(field.clone());
        }
    }
    Ok(out)
}
