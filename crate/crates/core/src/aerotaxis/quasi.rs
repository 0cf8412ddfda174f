use crate::error::{Error, Result};

/// Inputs of the two-region (front + band) estimate valid while cells
/// behind the band have not yet had time to join it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiInputs {
    /// `k b0`
    pub kb0: f64,
    pub b0: f64,
    pub l0: f64,
    pub l_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiSteady {
    pub d: f64,
    pub h: f64,
    pub b_band: f64,
    /// oxygen gradient across the cell-free front
    pub c1: f64,
    /// false when `d < 5h`, i.e. `d ≫ h` is not credible
    pub separation_ok: bool,
}

/// `d = √(L0/(k b0))`, `h = 2 Lmax/(k b0 d)`, `B = b0 (d+h)/h`.
pub fn quasi_steady_state(inp: &QuasiInputs) -> Result<QuasiSteady> {
    if !(inp.kb0 > 0.0 && inp.b0 > 0.0 && inp.l0 > 0.0 && inp.l_max > 0.0) {
        return Err(Error::invalid(format!("quasi-steady inputs must be positive: {inp:?}")));
    }
    let d = (inp.l0 / inp.kb0).sqrt();
    let h = 2.0 * inp.l_max / (inp.kb0 * d);
    let b_band = inp.b0 * (d + h) / h;
    let k = inp.kb0 / inp.b0;
    Ok(QuasiSteady { d, h, b_band, c1: k * b_band * h, separation_ok: d >= 5.0 * h })
}

/// Diffusive time `L²/D` for cells to cross a distance `length`.
pub fn diffusion_time(length: f64, diffusivity: f64) -> f64 {
    length * length / diffusivity
}
