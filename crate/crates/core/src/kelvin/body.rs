use crate::error::{Error, Result};
use crate::numerics::{rk4_integrate_sampled, Trajectory};
use std::f64::consts::PI;

/// Standard linear solid: spring `mu0` in parallel with a Maxwell arm
/// (spring `mu1` in series with dashpot `eta1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KelvinBody {
    pub eta1: f64,
    pub mu0: f64,
    pub mu1: f64,
}

impl KelvinBody {
    pub fn new(eta1: f64, mu0: f64, mu1: f64) -> Result<Self> {
        let b = KelvinBody { eta1, mu0, mu1 };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.eta1, self.mu0, self.mu1].iter().all(|v| *v > 0.0 && v.is_finite()) {
            return Err(Error::invalid(format!("Kelvin body constants must be positive: {self:?}")));
        }
        Ok(())
    }

    /// `(τ_σ, τ_ε) = (η/μ0 · (1 + μ0/μ1), η/μ1)`
    pub fn relaxation_times(&self) -> (f64, f64) {
        (self.eta1 / self.mu0 * (1.0 + self.mu0 / self.mu1), self.eta1 / self.mu1)
    }

    /// Coefficient of `u̇`.
    pub(crate) fn h(&self) -> f64 {
        self.eta1 * (1.0 + self.mu0 / self.mu1)
    }

    /// Coefficient of `Ḟ`.
    pub(crate) fn g(&self) -> f64 {
        self.eta1 / self.mu1
    }

    pub fn instantaneous_deformation(&self, f0: f64) -> f64 {
        f0 / (self.mu0 + self.mu1)
    }

    /// Creep under a constant load switched on at `t = 0`.
    pub fn steady_creep(&self, f0: f64, t: f64) -> f64 {
        let (ts, te) = self.relaxation_times();
        f0 / self.mu0 * (1.0 - (1.0 - te / ts) * (-t / ts).exp())
    }
}

/// Reference materials, in Pa·s and Pa.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Material {
    Actin,
    Nucleus,
    Transmembrane,
}

impl std::str::FromStr for Material {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "actin" => Ok(Material::Actin),
            "nucleus" => Ok(Material::Nucleus),
            "transmembrane" => Ok(Material::Transmembrane),
            other => Err(Error::invalid(format!("unknown material '{other}'"))),
        }
    }
}

pub fn material_params(kind: Material) -> KelvinBody {
    match kind {
        Material::Actin => KelvinBody { eta1: 5000.0, mu0: 50.0, mu1: 100.0 },
        Material::Nucleus => KelvinBody { eta1: 10_000.0, mu0: 200.0, mu1: 400.0 },
        Material::Transmembrane => KelvinBody { eta1: 7.5, mu0: 100.0, mu1: 200.0 },
    }
}

/// Applied load.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Forcing {
    Steady {
        f0: f64,
    },
    /// `F0 cos(ω t)`, `ω` in rad/s
    Oscillatory {
        f0: f64,
        omega: f64,
    },
}

impl Forcing {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Forcing::Steady { f0 } if f0.is_finite() => Ok(()),
            Forcing::Oscillatory { f0, omega } if f0.is_finite() && omega > 0.0 && omega.is_finite() => Ok(()),
            _ => Err(Error::invalid(format!("invalid forcing {self:?}"))),
        }
    }

    pub fn oscillatory_hz(f0: f64, hz: f64) -> Self {
        Forcing::Oscillatory { f0, omega: 2.0 * PI * hz }
    }

    pub fn amplitude(&self) -> f64 {
        match *self {
            Forcing::Steady { f0 } | Forcing::Oscillatory { f0, .. } => f0,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Forcing::Steady { f0 } => f0,
            Forcing::Oscillatory { f0, omega } => f0 * (omega * t).cos(),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            Forcing::Steady { .. } => 0.0,
            Forcing::Oscillatory { f0, omega } => -f0 * omega * (omega * t).sin(),
        }
    }

    pub fn period(&self) -> Option<f64> {
        match *self {
            Forcing::Steady { .. } => None,
            Forcing::Oscillatory { omega, .. } => Some(2.0 * PI / omega),
        }
    }
}

/// RK4 for `η(1 + μ0/μ1) u̇ = F + (η/μ1) Ḟ − μ0 u`, `u(0) = F(0)/(μ0+μ1)`.
pub fn single_body_deform(b: &KelvinBody, f: &Forcing, t_end: f64, h: f64, sample_every: usize) -> Result<Trajectory> {
    b.validate()?;
    f.validate()?;
    let (hh, g) = (b.h(), b.g());
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = (f.value(t) + g * f.derivative(t) - b.mu0 * y[0]) / hh;
    };
    rk4_integrate_sampled(rhs, &[b.instantaneous_deformation(f.value(0.0))], 0.0, t_end, h, sample_every)
}

/// Micropipette / bead data converted to body constants. `l0` is the
/// instantaneous and `ls` the long-time deformation; `a` the pipette
/// radius, `delta_p` the suction pressure.
pub fn convert_micropipette_params(a: f64, delta_p: f64, l0: f64, ls: f64, tau: f64) -> Result<KelvinBody> {
    if ![a, delta_p, l0, ls, tau].iter().all(|v| *v > 0.0 && v.is_finite()) {
        return Err(Error::invalid("micropipette inputs must be positive"));
    }
    body_from_creep(delta_p * PI * a * a, l0, ls, tau)
}

/// As [`convert_micropipette_params`] with the force given directly.
pub fn body_from_creep(force: f64, l0: f64, ls: f64, tau: f64) -> Result<KelvinBody> {
    if ls <= l0 {
        return Err(Error::invalid(format!("steady deformation {ls} must exceed initial deformation {l0}")));
    }
    let mu0 = force / ls;
    let mu1 = force / l0 - mu0;
    KelvinBody::new(tau * mu0 * mu1 / (mu0 + mu1), mu0, mu1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn baseline() -> KelvinBody {
        material_params(Material::Actin)
    }

    #[test]
    fn relaxation_times_baseline() {
        let (ts, te) = baseline().relaxation_times();
        assert!((ts - 150.0).abs() < 1e-12);
        assert!((te - 50.0).abs() < 1e-12);
    }

    #[test]
    fn creep_end_points() {
        let b = baseline();
        assert!((b.steady_creep(1.0, 0.0) - 1.0 / 150.0).abs() < 1e-15);
        assert!((b.steady_creep(1.0, 1e5) - 0.02).abs() < 1e-15);
    }

    #[test]
    fn rk4_follows_closed_form() {
        let b = baseline();
        let tr = single_body_deform(&b, &Forcing::Steady { f0: 1.0 }, 3000.0, 0.1, 100).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            assert!((s[0] - b.steady_creep(1.0, *t)).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_load_no_motion() {
        let tr = single_body_deform(&baseline(), &Forcing::oscillatory_hz(0.0, 1.0), 10.0, 0.01, 1).unwrap();
        assert!(tr.component(0).iter().all(|u| *u == 0.0));
    }

    #[test]
    fn materials_table() {
        assert_eq!(material_params(Material::Nucleus), KelvinBody { eta1: 10_000.0, mu0: 200.0, mu1: 400.0 });
        assert_eq!("Transmembrane".parse::<Material>().unwrap(), Material::Transmembrane);
        assert!("bone".parse::<Material>().is_err());
    }

    #[test]
    fn micropipette_round_trip() {
        // force of 2500 pN; spring constants in Pa·m
        let f = 2.5e-9;
        let (mu0, mu1) = (6.35e-4, 9.38e-4);
        let b = body_from_creep(f, f / (mu0 + mu1), f / mu0, 108.9).unwrap();
        assert!((b.mu0 - mu0).abs() < 1e-12 && (b.mu1 - mu1).abs() < 1e-12);
        assert!((b.eta1 - 4.125e-2).abs() < 2e-4);
        let (mu0, mu1) = (1.25e-3, 1.61e-3);
        let b = body_from_creep(f, f / (mu0 + mu1), f / mu0, 0.09).unwrap();
        assert!((b.eta1 - 6.33e-5).abs() < 1e-7);
        // the pipette form reproduces the force
        let a = 2e-6;
        let dp = f / (PI * a * a);
        let c = convert_micropipette_params(a, dp, f / (mu0 + mu1), f / mu0, 0.09).unwrap();
        assert!((c.mu0 - mu0).abs() < 1e-12);
        assert!(body_from_creep(f, 2.0, 1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn stress_relaxation_slower_than_strain(eta in 0.1f64..1e4, mu0 in 0.1f64..1e3, mu1 in 0.1f64..1e3) {
            let (ts, te) = KelvinBody { eta1: eta, mu0, mu1 }.relaxation_times();
            prop_assert!(ts > te);
        }
    }
}
