//! Long-time profiles of the band model on a half-line with the meniscus at
//! `x = 0`. In every region `r = l = b/2` and `b` is either flat or
//! exponential with decay length `s`; oxygen obeys `L'' = k b`.
//!
//! Layout (general regime): front `[0, d)`, band `[d, d+h)`, depletion
//! layer `[d+h, d+h+z)`, then untouched cells at density `b0` and no oxygen.
//! The intermediate regime drops the front, the low regime also the band.

use super::AerotaxisParams;
use crate::error::{Error, Result};
use crate::numerics::{solve_scalar_root, Bracket};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyInputs {
    /// `κ / D`
    pub k: f64,
    pub b0: f64,
    /// run length `v / (C − c)`
    pub s: f64,
    pub l0: f64,
    pub l_min: f64,
    pub l_max: f64,
}

impl SteadyInputs {
    pub fn from_params(p: &AerotaxisParams) -> Self {
        SteadyInputs {
            k: p.kappa / p.d,
            b0: p.b0,
            s: p.run_length(),
            l0: p.l0,
            l_min: p.thresholds.l_min,
            l_max: p.thresholds.l_max,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [("k", self.k), ("b0", self.b0), ("s", self.s)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.l0 >= 0.0 && self.l_min >= 0.0 && self.l_min < self.l_max) {
            return Err(Error::invalid(format!(
                "need L0 >= 0 and 0 <= Lmin < Lmax, got L0={} Lmin={} Lmax={}",
                self.l0, self.l_min, self.l_max
            )));
        }
        Ok(())
    }

    /// `k b0 s²`, the natural oxygen scale of a depletion layer.
    fn depth(&self) -> f64 {
        self.k * self.b0 * self.s * self.s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `L0 > Lmax`
    General,
    /// `Lmin < L0 <= Lmax`
    Intermediate,
    /// `L0 <= Lmin`
    Low,
}

impl Regime {
    pub fn of(inp: &SteadyInputs) -> Regime {
        if inp.l0 > inp.l_max {
            Regime::General
        } else if inp.l0 > inp.l_min {
            Regime::Intermediate
        } else {
            Regime::Low
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    /// all matching conditions hold exactly
    Exact,
    /// closed-form leading-order estimates; the profile is not continuous
    LeadingOrder,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyStateSolution {
    pub regime: Regime,
    pub kind: SolutionKind,
    pub inputs: SteadyInputs,
    /// band density `B`
    pub b_band: f64,
    /// `L = L0 − c1 x + k B s² (e^{(x−d)/s} − e^{−d/s})` in front of the band
    pub c1: f64,
    /// `L = L_top − c2 (x−d) + k B (x−d)²/2` in the band
    pub c2: f64,
    /// `L = L_bot − c3 (x−d−h) + k B s² (e^{(d+h−x)/s} − 1)` behind it
    pub c3: f64,
    pub d: f64,
    pub h: f64,
    pub z: f64,
    /// `e^{z/s}`
    pub lambda: f64,
}

impl SteadyStateSolution {
    pub fn s(&self) -> f64 {
        self.inputs.s
    }

    pub fn k(&self) -> f64 {
        self.inputs.k
    }

    /// Where the oxygen runs out.
    pub fn extent(&self) -> f64 {
        self.d + self.h + self.z
    }

    fn l_top(&self) -> f64 {
        match self.regime {
            Regime::General => self.inputs.l_max,
            _ => self.inputs.l0,
        }
    }

    fn l_bot(&self) -> f64 {
        match self.regime {
            Regime::Low => self.inputs.l0,
            _ => self.inputs.l_min,
        }
    }

    /// Total bacterial density at distance `x` from the meniscus.
    pub fn density(&self, x: f64) -> f64 {
        let (s, b) = (self.s(), self.b_band);
        let (x1, x2, x3) = (self.d, self.d + self.h, self.extent());
        if x < x1 {
            b * ((x - x1) / s).exp()
        } else if x < x2 {
            b
        } else if x < x3 {
            b * ((x2 - x) / s).exp()
        } else {
            self.inputs.b0
        }
    }

    pub fn oxygen(&self, x: f64) -> f64 {
        let (s, k, b) = (self.s(), self.k(), self.b_band);
        let (x1, x2, x3) = (self.d, self.d + self.h, self.extent());
        if x < x1 {
            self.inputs.l0 - self.c1 * x + k * b * s * s * (((x - x1) / s).exp() - (-x1 / s).exp())
        } else if x < x2 {
            let y = x - x1;
            self.l_top() - self.c2 * y + 0.5 * k * b * y * y
        } else if x < x3 {
            let y = x - x2;
            self.l_bot() - self.c3 * y + k * b * s * s * ((-y / s).exp() - 1.0)
        } else {
            0.0
        }
    }

    /// `dL/dx`.
    pub fn oxygen_slope(&self, x: f64) -> f64 {
        let (s, k, b) = (self.s(), self.k(), self.b_band);
        let (x1, x2, x3) = (self.d, self.d + self.h, self.extent());
        if x < x1 {
            -self.c1 + k * b * s * ((x - x1) / s).exp()
        } else if x < x2 {
            -self.c2 + k * b * (x - x1)
        } else if x < x3 {
            -self.c3 - k * b * s * (-(x - x2) / s).exp()
        } else {
            0.0
        }
    }
}

/// Positive root of `y² + p y − q = 0` for `q >= 0`, without cancellation.
fn positive_root(p: f64, q: f64) -> f64 {
    let disc = (p * p + 4.0 * q).sqrt();
    if p > 0.0 {
        2.0 * q / (p + disc)
    } else {
        0.5 * (disc - p)
    }
}

/// `ζ > 0` with `e^ζ − ζ − 1 = a`.
fn depletion_zeta(a: f64) -> Result<f64> {
    if a == 0.0 {
        return Ok(0.0);
    }
    // e^ζ − ζ − 1 >= ζ²/2, so the root lies below √(2a)
    let hi = (2.0 * a).sqrt();
    let f = |z: f64| z.exp_m1() - z - a;
    let tol = 1e-14 * (1.0 + a);
    solve_scalar_root(f, Bracket::new(0.0, hi)?, tol)
}

/// Shared tail of the exact solutions: depletion layer below `l_bot`.
fn depletion(inp: &SteadyInputs, l_bot: f64) -> Result<(f64, f64)> {
    let zeta = depletion_zeta(l_bot / inp.depth())?;
    Ok((zeta * inp.s, zeta.exp()))
}

/// Exact three-region solution for `L0 > Lmax`.
pub fn steady_state_general_exact(inp: &SteadyInputs) -> Result<SteadyStateSolution> {
    inp.validate()?;
    if Regime::of(inp) != Regime::General {
        return Err(Error::Regime(format!("general regime needs L0 > Lmax ({} <= {})", inp.l0, inp.l_max)));
    }
    let (k, b0, s) = (inp.k, inp.b0, inp.s);
    let (z, lambda) = depletion(inp, inp.l_min)?;
    let b = b0 * lambda;
    let u = 2.0 * (inp.l_max - inp.l_min) / (inp.depth() * lambda);
    let h = s * positive_root(2.0 * (lambda - 1.0) / lambda, u);
    let c3 = -k * b0 * s;
    let c2 = k * b0 * s * (lambda - 1.0) + k * b * h;
    let c1 = c2 + k * b * s;
    let g = |d: f64| inp.l0 - inp.l_max - c1 * d + k * b * s * s * (-(-d / s).exp_m1());
    let d_hi = (inp.l0 - inp.l_max + k * b * s * s) / c1 * 1.01 + 1e-12;
    let d = solve_scalar_root(g, Bracket::new(0.0, d_hi)?, 1e-14 * (1.0 + d_hi))?;
    Ok(SteadyStateSolution {
        regime: Regime::General,
        kind: SolutionKind::Exact,
        inputs: *inp,
        b_band: b,
        c1,
        c2,
        c3,
        d,
        h,
        z,
        lambda,
    })
}

/// Leading-order estimates for `L0 > Lmax`: `z ≈ α s`, `h` from the band
/// quadratic `y² − 2y(λ−1)/λ − u = 0`, and `d ≈ s (L0/(k b0 s² λ) + 1)/2`
/// (which takes `h ≈ 2s` and `e^{−d/s} ≈ 0`).
pub fn steady_state_general(inp: &SteadyInputs) -> Result<SteadyStateSolution> {
    inp.validate()?;
    if Regime::of(inp) != Regime::General {
        return Err(Error::Regime(format!("general regime needs L0 > Lmax ({} <= {})", inp.l0, inp.l_max)));
    }
    let (k, b0, s) = (inp.k, inp.b0, inp.s);
    let alpha = 1.0 + inp.l_min / inp.depth();
    let z = alpha * s;
    let lambda = alpha.exp();
    let u = 2.0 * (inp.l_max - inp.l_min) / (inp.depth() * lambda);
    let h = s * positive_root(-2.0 * (lambda - 1.0) / lambda, u);
    let d = s * (inp.l0 / (inp.depth() * lambda) + 1.0) / 2.0;
    Ok(SteadyStateSolution {
        regime: Regime::General,
        kind: SolutionKind::LeadingOrder,
        inputs: *inp,
        b_band: b0 * lambda,
        c1: k * b0 * (s + h * lambda),
        c2: k * b0 * (s + h * lambda - s * lambda),
        c3: k * b0 * s,
        d,
        h,
        z,
        lambda,
    })
}

/// Band against the meniscus, `Lmin < L0 <= Lmax`.
pub fn steady_state_intermediate(inp: &SteadyInputs) -> Result<SteadyStateSolution> {
    inp.validate()?;
    if Regime::of(inp) != Regime::Intermediate {
        return Err(Error::Regime(format!(
            "intermediate regime needs Lmin < L0 <= Lmax, got L0={} Lmin={} Lmax={}",
            inp.l0, inp.l_min, inp.l_max
        )));
    }
    let (k, b0, s) = (inp.k, inp.b0, inp.s);
    let (z, lambda) = depletion(inp, inp.l_min)?;
    let b = b0 * lambda;
    let q = 2.0 * (inp.l0 - inp.l_min) / (k * b0 * lambda);
    let h = positive_root(2.0 * s * (1.0 - 1.0 / lambda), q);
    let c2 = k * b0 * s * (lambda - 1.0) + k * b * h;
    Ok(SteadyStateSolution {
        regime: Regime::Intermediate,
        kind: SolutionKind::Exact,
        inputs: *inp,
        b_band: b,
        c1: c2,
        c2,
        c3: -k * b0 * s,
        d: 0.0,
        h,
        z,
        lambda,
    })
}

/// Depletion layer only, `L0 <= Lmin`: `k b0 s² (e^ζ − ζ − 1) = L0`.
pub fn steady_state_low(inp: &SteadyInputs) -> Result<SteadyStateSolution> {
    inp.validate()?;
    if Regime::of(inp) != Regime::Low {
        return Err(Error::Regime(format!("low regime needs L0 <= Lmin ({} > {})", inp.l0, inp.l_min)));
    }
    let (k, b0, s) = (inp.k, inp.b0, inp.s);
    let (z, lambda) = depletion(inp, inp.l0)?;
    let c3 = -k * b0 * s;
    Ok(SteadyStateSolution {
        regime: Regime::Low,
        kind: SolutionKind::Exact,
        inputs: *inp,
        b_band: b0 * lambda,
        c1: c3,
        c2: c3,
        c3,
        d: 0.0,
        h: 0.0,
        z,
        lambda,
    })
}

/// Exact solution in whichever regime `L0` selects.
pub fn steady_state(inp: &SteadyInputs) -> Result<SteadyStateSolution> {
    match Regime::of(inp) {
        Regime::General => steady_state_general_exact(inp),
        Regime::Intermediate => steady_state_intermediate(inp),
        Regime::Low => steady_state_low(inp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn reference(l0: f64) -> SteadyInputs {
        SteadyInputs { k: 0.003, b0: 2.0, s: 1.0, l0, l_min: 0.003, l_max: 0.005 }
    }

    #[test]
    fn leading_order_values() {
        let sol = steady_state_general(&reference(0.2)).unwrap();
        assert!((sol.z - 1.5).abs() < 0.01);
        assert!((sol.lambda - 4.4817).abs() < 0.01);
        assert!((sol.d - 4.2188).abs() < 0.05, "d = {}", sol.d);
        // quadratic-formula oracle for the band width
        let lam = 1.5f64.exp();
        let a = (lam - 1.0) / lam;
        let u = 2.0 * 0.002 / (0.006 * lam);
        assert_relative_eq!(sol.h, a + (a * a + u).sqrt(), max_relative = 1e-12);
        assert!((sol.h - 1.6442).abs() < 1e-3);
    }

    #[test]
    fn leading_order_h_ignores_l0() {
        let a = steady_state_general(&reference(0.2)).unwrap();
        let b = steady_state_general(&reference(1.0)).unwrap();
        assert_eq!(a.h, b.h);
        assert!(b.d > a.d);
    }

    #[test]
    fn depletion_root() {
        // e^ζ − ζ = 1.5
        let z = depletion_zeta(0.5).unwrap();
        assert!((z.exp() - z - 1.5).abs() < 1e-12);
        assert!((z - 0.85).abs() < 0.01);
    }

    #[test]
    fn low_regime_limits() {
        let sol = steady_state_low(&reference(0.0)).unwrap();
        assert_eq!(sol.z, 0.0);
        let small = 1e-6;
        let sol = steady_state_low(&reference(small)).unwrap();
        let approx = (2.0 * small / (0.003 * 2.0)).sqrt();
        // next term of the expansion is −ζ/6 relative
        assert!((sol.z - approx).abs() / approx < 5e-3);
    }

    #[test]
    fn regime_guards() {
        assert!(matches!(steady_state_general(&reference(0.004)), Err(Error::Regime(_))));
        assert!(matches!(steady_state_intermediate(&reference(0.2)), Err(Error::Regime(_))));
        assert!(matches!(steady_state_low(&reference(0.004)), Err(Error::Regime(_))));
    }

    fn check_continuity(sol: &SteadyStateSolution) -> std::result::Result<(), TestCaseError> {
        let eps = 1e-9;
        let scale = sol.inputs.l0.max(sol.inputs.l_max);
        for x in [sol.d, sol.d + sol.h, sol.extent()] {
            if x <= eps {
                continue;
            }
            let jump = (sol.oxygen(x + eps) - sol.oxygen(x - eps)).abs();
            prop_assert!(jump < 1e-7 * scale, "L jump {} at {}", jump, x);
            let slope_scale = sol.c1.abs().max(sol.c2.abs()).max(1e-12);
            let kink = (sol.oxygen_slope(x + eps) - sol.oxygen_slope(x - eps)).abs();
            prop_assert!(kink < 1e-6 * slope_scale, "flux jump {} at {}", kink, x);
        }
        prop_assert!((sol.oxygen(0.0) - sol.inputs.l0).abs() < 1e-10 * scale);
        prop_assert!(sol.oxygen(sol.extent() - 1e-12).abs() < 1e-9 * scale);
        Ok(())
    }

    proptest! {
        #[test]
        fn exact_profiles_are_continuous(l0 in 0.0f64..1.0, k in 0.001f64..0.01, s in 0.5f64..2.0) {
            let inp = SteadyInputs { k, b0: 2.0, s, l0, l_min: 0.003, l_max: 0.005 };
            let sol = steady_state(&inp).unwrap();
            check_continuity(&sol)?;
            // thresholds are hit where the regions meet
            if sol.regime == Regime::General {
                prop_assert!((sol.oxygen(sol.d) - inp.l_max).abs() < 1e-9);
            }
            if sol.regime != Regime::Low {
                prop_assert!((sol.oxygen(sol.d + sol.h) - inp.l_min).abs() < 1e-9);
            }
        }

        #[test]
        fn d_monotone_and_h_fixed(l0a in 0.006f64..1.0, frac in 0.01f64..0.99) {
            let l0b = 0.0051 + frac * (l0a - 0.0051);
            let a = steady_state_general_exact(&reference(l0a)).unwrap();
            let b = steady_state_general_exact(&reference(l0b)).unwrap();
            prop_assert!(a.d > b.d);
            prop_assert!((a.h - b.h).abs() < 1e-12);
        }
    }

    #[test]
    fn regimes_meet_at_thresholds() {
        let eps = 1e-10;
        let g = steady_state_general_exact(&reference(0.005 + eps)).unwrap();
        let i = steady_state_intermediate(&reference(0.005)).unwrap();
        assert!(g.d < 1e-6);
        assert!((g.h - i.h).abs() < 1e-6);
        assert!((g.z - i.z).abs() < 1e-9);
        let i = steady_state_intermediate(&reference(0.003 + eps)).unwrap();
        let l = steady_state_low(&reference(0.003)).unwrap();
        assert!(i.h < 1e-6);
        assert!((i.z - l.z).abs() < 1e-6);
    }

    #[test]
    fn low_regime_z_increases() {
        let zs: Vec<f64> =
            [0.0, 0.0005, 0.001, 0.002, 0.003].iter().map(|&l0| steady_state_low(&reference(l0)).unwrap().z).collect();
        assert!(zs.windows(2).all(|w| w[1] > w[0]));
    }
}
