use super::TurningThresholds;
use crate::error::{Error, Result};
use crate::numerics::Grid1D;

/// Characteristic scales used to strip units.
pub const LENGTH_SCALE_M: f64 = 2e-3;
pub const TIME_SCALE_S: f64 = 10.0;
/// μM/ml
pub const OXYGEN_SCALE: f64 = 1.0;
/// cells/ml
pub const BACTERIA_SCALE: f64 = 2e7;

/// Nondimensional parameters of the band-formation PDE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AerotaxisParams {
    pub v: f64,
    /// oxygen diffusivity
    pub d: f64,
    /// consumption rate `k t0 b0 / L0`
    pub kappa: f64,
    /// oxygen held at the meniscus (node 0)
    pub l0: f64,
    /// initial total bacterial density, split evenly between directions
    pub b0: f64,
    pub domain_length: f64,
    pub grid: Grid1D,
    pub thresholds: TurningThresholds,
}

impl Default for AerotaxisParams {
    fn default() -> Self {
        let n = 40;
        let domain_length = 1.0;
        AerotaxisParams {
            v: 0.2,
            d: 0.01,
            kappa: 0.008,
            l0: 0.2,
            b0: 1.0,
            domain_length,
            grid: Grid1D { n, dx: domain_length / (n - 1) as f64, dt: 0.01 },
            thresholds: TurningThresholds::default(),
        }
    }
}

impl AerotaxisParams {
    /// Rebuild the grid after changing `n`, `dt` or `domain_length`.
    pub fn with_grid(mut self, n: usize, dt: f64) -> Result<Self> {
        self.grid = Grid1D::spanning(n, self.domain_length, dt)?;
        Ok(self)
    }

    pub fn cfl(&self) -> f64 {
        self.v * self.grid.dt / self.grid.dx
    }

    pub fn diffusion_number(&self) -> f64 {
        self.d * self.grid.dt / (self.grid.dx * self.grid.dx)
    }

    pub fn validate(&self) -> Result<()> {
        self.thresholds.validate()?;
        for (name, val) in [("v", self.v), ("D", self.d), ("b0", self.b0), ("domain_length", self.domain_length)] {
            if !(val > 0.0 && val.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {val}")));
            }
        }
        for (name, val) in [("kappa", self.kappa), ("L0", self.l0)] {
            if !(val >= 0.0 && val.is_finite()) {
                return Err(Error::invalid(format!("{name} must be non-negative, got {val}")));
            }
        }
        let expected_dx = self.domain_length / (self.grid.n - 1) as f64;
        if (self.grid.dx - expected_dx).abs() > 1e-12 * expected_dx {
            return Err(Error::invalid("grid spacing does not span the domain"));
        }
        if self.cfl() > 1.0 {
            return Err(Error::CflViolation { cfl: self.cfl() });
        }
        if self.diffusion_number() > 0.5 {
            return Err(Error::DiffusionUnstable { number: self.diffusion_number() });
        }
        Ok(())
    }

    /// Run length `s = v / (C − c)`.
    pub fn run_length(&self) -> f64 {
        self.v / (self.thresholds.c_high - self.thresholds.c_low)
    }
}

/// Laboratory-unit inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionalParams {
    /// m/s
    pub speed: f64,
    /// m²/s
    pub diffusivity: f64,
    /// 1/s
    pub turning_high: f64,
    /// 1/s
    pub turning_low: f64,
    /// μM/(cell·s)
    pub consumption: f64,
}

impl Default for DimensionalParams {
    fn default() -> Self {
        DimensionalParams { speed: 40e-6, diffusivity: 2e-9, turning_high: 1.0, turning_low: 0.01, consumption: 3e-11 }
    }
}

/// The dimensional quantities divided by their scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nondimensional {
    pub v: f64,
    pub d: f64,
    pub c_high: f64,
    pub c_low: f64,
    pub kappa: f64,
}

pub fn nondimensionalize(p: &DimensionalParams) -> Result<Nondimensional> {
    for (name, val) in [
        ("speed", p.speed),
        ("diffusivity", p.diffusivity),
        ("turning_high", p.turning_high),
        ("turning_low", p.turning_low),
        ("consumption", p.consumption),
    ] {
        if !(val > 0.0 && val.is_finite()) {
            return Err(Error::invalid(format!("{name} must be positive, got {val}")));
        }
    }
    Ok(Nondimensional {
        v: p.speed * TIME_SCALE_S / LENGTH_SCALE_M,
        d: p.diffusivity * TIME_SCALE_S / (LENGTH_SCALE_M * LENGTH_SCALE_M),
        c_high: p.turning_high * TIME_SCALE_S,
        c_low: p.turning_low * TIME_SCALE_S,
        kappa: p.consumption * TIME_SCALE_S * BACTERIA_SCALE / OXYGEN_SCALE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn defaults_are_stable() {
        let p = AerotaxisParams::default();
        p.validate().unwrap();
        assert!(p.cfl() < 0.1);
        assert!(p.diffusion_number() < 0.2);
        assert_relative_eq!(p.grid.dx, 1.0 / 39.0);
    }

    #[test]
    fn scale_conversion() {
        let nd = nondimensionalize(&DimensionalParams::default()).unwrap();
        assert_relative_eq!(nd.v, 0.2, max_relative = 1e-12);
        assert_relative_eq!(nd.c_high, 10.0, max_relative = 1e-12);
        // these follow from the scales; 0.01 and 4e-3 do not
        assert_relative_eq!(nd.d, 0.005, max_relative = 1e-12);
        assert_relative_eq!(nd.kappa, 6e-3, max_relative = 1e-12);
    }

    #[test]
    fn rejects_nonpositive() {
        let p = DimensionalParams { speed: 0.0, ..DimensionalParams::default() };
        assert!(nondimensionalize(&p).is_err());
    }

    #[test]
    fn rejects_unstable_grid() {
        let p = AerotaxisParams::default().with_grid(400, 0.5).unwrap();
        assert!(p.validate().is_err());
    }
}
