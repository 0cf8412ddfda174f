use super::{turning_rates, AerotaxisParams};
use crate::error::{Error, Result};
use crate::numerics::{ftcs_diffusion_step, upwind_advection_reaction_step, Bc, Boundary};

/// Right-movers, left-movers and oxygen on the grid. Node 0 is the meniscus.
#[derive(Debug, Clone, PartialEq)]
pub struct CellField {
    pub r: Vec<f64>,
    pub l: Vec<f64>,
    pub oxygen: Vec<f64>,
}

impl CellField {
    /// Uniform bacteria, oxygen only at the meniscus.
    pub fn initial(p: &AerotaxisParams) -> Self {
        let n = p.grid.n;
        let mut oxygen = vec![0.0; n];
        oxygen[0] = p.l0;
        CellField { r: vec![0.5 * p.b0; n], l: vec![0.5 * p.b0; n], oxygen }
    }

    pub fn density(&self) -> Vec<f64> {
        self.r.iter().zip(&self.l).map(|(a, b)| a + b).collect()
    }

    /// `Σ (r + l) dx`, the quantity the scheme conserves.
    pub fn total_bacteria(&self, dx: f64) -> f64 {
        self.r.iter().chain(&self.l).sum::<f64>() * dx
    }

    /// Advance one step in place.
    ///
    /// `r` swims away from the meniscus, `l` towards it. A right-mover
    /// reverses at rate `f_lr(L)` and a left-mover at `f_rl(L)`: with that
    /// assignment the asymmetric bins send cells back towards
    /// `[Lmin, Lmax)` from both sides.
    pub fn step(&mut self, p: &AerotaxisParams) -> Result<()> {
        let n = p.grid.n;
        let mut to_left = Vec::with_capacity(n);
        let mut to_right = Vec::with_capacity(n);
        for &lev in &self.oxygen {
            let (f_rl, f_lr) = turning_rates(lev, &p.thresholds);
            to_left.push(f_lr);
            to_right.push(f_rl);
        }
        let (r, l) = upwind_advection_reaction_step(&self.r, &self.l, p.v, &to_left, &to_right, &p.grid)?;
        let bc = Boundary { left: Bc::Dirichlet(p.l0), right: Bc::ZeroFlux };
        let mut ox = ftcs_diffusion_step(&self.oxygen, p.d, &p.grid, bc)?;
        for i in 0..n {
            ox[i] = (ox[i] - p.grid.dt * p.kappa * (self.r[i] + self.l[i])).max(0.0);
        }
        ox[0] = p.l0;
        self.r = r;
        self.l = l;
        self.oxygen = ox;
        Ok(())
    }

    fn is_finite(&self) -> bool {
        self.r.iter().chain(&self.l).chain(&self.oxygen).all(|v| v.is_finite())
    }
}

/// Sampled fields with their nondimensional times.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FieldSeries {
    pub times: Vec<f64>,
    pub fields: Vec<CellField>,
}

impl FieldSeries {
    pub fn last(&self) -> Option<&CellField> {
        self.fields.last()
    }
}

/// Integrate the band model from the standard initial condition up to
/// `t_end`, keeping every `sample_every`-th step plus the first and last.
pub fn simulate_band(p: &AerotaxisParams, t_end: f64, sample_every: usize) -> Result<FieldSeries> {
    p.validate()?;
    if !(t_end >= 0.0) {
        return Err(Error::invalid(format!("t_end must be non-negative, got {t_end}")));
    }
    let sample_every = sample_every.max(1);
    let steps = (t_end / p.grid.dt).round() as usize;
    let mut field = CellField::initial(p);
    let mut out = FieldSeries::default();
    out.times.push(0.0);
    out.fields.push(field.clone());
    for k in 1..=steps {
        field.step(p)?;
        if !field.is_finite() {
            return Err(Error::NonFinite { t: k as f64 * p.grid.dt });
        }
        if k % sample_every == 0 || k == steps {
            out.times.push(k as f64 * p.grid.dt);
            out.fields.push(field.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_signal_stays_uniform() {
        let p = AerotaxisParams { kappa: 0.0, l0: 0.0, ..Default::default() };
        let run = simulate_band(&p, 10.0, 100).unwrap();
        for f in &run.fields {
            for i in 0..p.grid.n {
                assert!((f.r[i] - 0.5).abs() < 1e-12 && (f.l[i] - 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mass_conserved_and_nonnegative() {
        let p = AerotaxisParams::default();
        let run = simulate_band(&p, 30.0, 500).unwrap();
        let m0 = run.fields[0].total_bacteria(p.grid.dx);
        for f in &run.fields {
            assert!((f.total_bacteria(p.grid.dx) - m0).abs() <= 1e-8 * m0);
            assert!(f.r.iter().chain(&f.l).chain(&f.oxygen).all(|&v| v >= 0.0));
            assert_eq!(f.oxygen[0], p.l0);
        }
    }

    #[test]
    fn samples_include_endpoints() {
        let p = AerotaxisParams::default();
        let run = simulate_band(&p, 1.0, 30).unwrap();
        assert_eq!(run.times.first(), Some(&0.0));
        assert!((run.times.last().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(run.times.len(), run.fields.len());
    }

    #[test]
    fn cells_accumulate() {
        let p = AerotaxisParams::default();
        let run = simulate_band(&p, 15.0, 10_000).unwrap();
        let b = run.last().unwrap().density();
        let max = b.iter().cloned().fold(0.0, f64::max);
        assert!(max > 3.0 * p.b0, "peak density {max}");
    }
}
