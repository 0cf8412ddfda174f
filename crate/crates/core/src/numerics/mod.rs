//! Shared kernels: fixed-step integrators, explicit finite-difference steps,
//! scalar root finding and small dense linear algebra.

mod fd;
mod integrate;
mod linalg;
mod roots;

pub use fd::{discrete_mass, ftcs_diffusion_step, upwind_advection_reaction_step, Bc, Boundary};
pub use integrate::{euler_integrate, rk4_integrate, rk4_integrate_sampled, rk4_step, Rk4};
pub use linalg::{eig2, mat_vec, solve_linear_dense, Eig2, PIVOT_TOL};
pub use roots::{find_sign_changes, newton_polish, solve_scalar_root};

use crate::error::{Error, Result};

/// Time series of state vectors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn with_capacity(n: usize) -> Self {
        Trajectory { times: Vec::with_capacity(n), states: Vec::with_capacity(n) }
    }

    pub fn push(&mut self, t: f64, y: &[f64]) {
        self.times.push(t);
        self.states.push(y.to_vec());
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &[f64])> {
        Some((*self.times.last()?, self.states.last()?.as_slice()))
    }

    /// One state component as its own series.
    pub fn component(&self, i: usize) -> Vec<f64> {
        self.states.iter().map(|s| s[i]).collect()
    }
}

/// Uniform 1-D grid with its time step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub n: usize,
    pub dx: f64,
    pub dt: f64,
}

impl Grid1D {
    pub fn new(n: usize, dx: f64, dt: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("grid needs at least 3 nodes, got {n}")));
        }
        if !(dx > 0.0 && dx.is_finite()) || !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::invalid(format!("grid spacing and step must be positive (dx={dx}, dt={dt})")));
        }
        Ok(Grid1D { n, dx, dt })
    }

    /// `n` nodes spanning `[0, length]` inclusive.
    pub fn spanning(n: usize, length: f64, dt: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("grid needs at least 3 nodes, got {n}")));
        }
        Self::new(n, length / (n - 1) as f64, dt)
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx
    }
}

/// Interval known (or hoped) to contain a sign change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::invalid(format!("bracket requires lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Bracket { lo, hi })
    }
}
