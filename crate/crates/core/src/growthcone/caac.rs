//! Calcium / adenylate-cyclase switch, integrated in dimensional units
//! (μM, s).

use crate::error::{Error, Result};
use crate::numerics::{eig2, find_sign_changes, rk4_integrate_sampled, solve_scalar_root, Trajectory};
use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaAcParams {
    pub k0: f64,
    pub kn1: f64,
    pub k1: f64,
    pub kp: f64,
    pub k2: f64,
    pub cb: f64,
    pub kf: f64,
    pub k3: f64,
    pub cer: f64,
    /// `k_a` of the store-release term
    pub ka_ratio: f64,
    pub k4: f64,
    pub kn2: f64,
    pub cm: f64,
    pub kr: f64,
    pub at: f64,
    pub k5: f64,
}

impl Default for CaAcParams {
    fn default() -> Self {
        CaAcParams {
            k0: 7.0,
            kn1: 1.0,
            k1: 5.0,
            kp: 0.15,
            k2: 10.0,
            cb: 0.1,
            kf: 10.0,
            k3: 1.0,
            cer: 7.0,
            ka_ratio: 1.0,
            k4: 2.0,
            kn2: 1.0,
            cm: 20.0,
            kr: 1.0,
            at: 20.0,
            k5: 1.0,
        }
    }
}

impl CaAcParams {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.k0,
            self.kn1,
            self.k1,
            self.kp,
            self.k2,
            self.cb,
            self.kf,
            self.k3,
            self.cer,
            self.ka_ratio,
            self.k4,
            self.kn2,
            self.cm,
            self.kr,
            self.at,
            self.k5,
        ];
        if !all.iter().all(|v| *v > 0.0 && v.is_finite()) {
            return Err(Error::invalid("Ca-AC parameters must all be positive and finite"));
        }
        if self.cb >= self.cer {
            return Err(Error::invalid(format!(
                "resting calcium {} must be below store calcium {}",
                self.cb, self.cer
            )));
        }
        Ok(())
    }

    /// Activation rate of adenylate cyclase, terms (5)·(6).
    pub fn activation(&self, c: f64, l: f64) -> f64 {
        let c4 = self.cm * c.powi(4);
        self.k4 * l / (self.kn2 + l) * c4 / (self.kr.powi(5) + c4)
    }

    /// Calcium rate without the `A`-dependent part of the store flux, and
    /// the store-flux factor multiplying `(kf + k3 A)`.
    fn calcium_parts(&self, c: f64, l: f64) -> (f64, f64) {
        let base =
            self.k0 * l / (self.kn1 + l) - self.k1 * c * c / (self.kp * self.kp + c * c) + self.k2 * (self.cb - c);
        let denom = c + self.ka_ratio * l;
        let store = if denom > 0.0 { l * c * (self.cer - c) / denom } else { 0.0 };
        (base, store)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaAcState {
    pub c: f64,
    pub a: f64,
}

pub fn ca_ac_rhs(s: CaAcState, l: f64, p: &CaAcParams) -> (f64, f64) {
    let (base, store) = p.calcium_parts(s.c, l);
    let dc = base + (p.kf + p.k3 * s.a) * store;
    let da = p.activation(s.c, l) * (p.at - s.a) - p.k5 * s.a;
    (dc, da)
}

/// RK4 from `C = Cb`, `A = 0`; states are `[C, A]`.
pub fn ca_ac_simulate(l: f64, p: &CaAcParams, t_end: f64, h: f64, sample_every: usize) -> Result<Trajectory> {
    p.validate()?;
    if !(l >= 0.0) {
        return Err(Error::invalid(format!("ligand must be non-negative, got {l}")));
    }
    let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| {
        let (dc, da) = ca_ac_rhs(CaAcState { c: y[0], a: y[1] }, l, p);
        dy[0] = dc;
        dy[1] = da;
    };
    rk4_integrate_sampled(rhs, &[p.cb, 0.0], 0.0, t_end, h, sample_every)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Nullclines {
    pub c: Vec<f64>,
    /// `dC/dt = 0` solved for `A`; NaN where the store flux vanishes
    pub a_calcium: Vec<f64>,
    /// `dA/dt = 0`
    pub a_cyclase: Vec<f64>,
}

fn ac_nullcline(c: f64, l: f64, p: &CaAcParams) -> f64 {
    let g = p.activation(c, l);
    p.at * g / (g + p.k5)
}

pub fn ca_ac_nullclines(l: f64, p: &CaAcParams, c_lo: f64, c_hi: f64, points: usize) -> Result<Nullclines> {
    p.validate()?;
    if !(c_lo > 0.0 && c_hi > c_lo) || points < 2 {
        return Err(Error::invalid("nullcline range must satisfy 0 < c_lo < c_hi with at least 2 points"));
    }
    let mut out = Nullclines { c: Vec::with_capacity(points), a_calcium: vec![], a_cyclase: vec![] };
    for i in 0..points {
        let c = c_lo + (c_hi - c_lo) * i as f64 / (points - 1) as f64;
        let (base, store) = p.calcium_parts(c, l);
        let a = if store.abs() > 1e-300 { (-base / store - p.kf) / p.k3 } else { f64::NAN };
        out.c.push(c);
        out.a_calcium.push(a);
        out.a_cyclase.push(ac_nullcline(c, l, p));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub state: CaAcState,
    pub stable: bool,
    pub eigenvalues: [Complex64; 2],
}

const SCAN_SAMPLES: usize = 4000;

/// Central-difference Jacobian, step `1e−6` relative.
fn jacobian(s: CaAcState, l: f64, p: &CaAcParams) -> [[f64; 2]; 2] {
    let hc = 1e-6 * s.c.abs().max(1e-3);
    let ha = 1e-6 * s.a.abs().max(1e-3);
    let f = |c: f64, a: f64| ca_ac_rhs(CaAcState { c, a }, l, p);
    let (pc, qc) = (f(s.c + hc, s.a), f(s.c - hc, s.a));
    let (pa, qa) = (f(s.c, s.a + ha), f(s.c, s.a - ha));
    [[(pc.0 - qc.0) / (2.0 * hc), (pa.0 - qa.0) / (2.0 * ha)], [(pc.1 - qc.1) / (2.0 * hc), (pa.1 - qa.1) / (2.0 * ha)]]
}

/// All equilibria, ordered by increasing `A`. Found on the cyclase
/// nullcline, where the problem is one-dimensional in `C`.
pub fn ca_ac_steady_states(l: f64, p: &CaAcParams) -> Result<Vec<SteadyState>> {
    p.validate()?;
    let reduced = |c: f64| ca_ac_rhs(CaAcState { c, a: ac_nullcline(c, l, p) }, l, p).0;
    let mut out = Vec::new();
    for br in find_sign_changes(reduced, 1e-9, 1.5 * p.cer, SCAN_SAMPLES) {
        let c = solve_scalar_root(reduced, br, 1e-13)?;
        let state = CaAcState { c, a: ac_nullcline(c, l, p) };
        let e = eig2(jacobian(state, l, p));
        out.push(SteadyState { state, stable: e.values.iter().all(|z| z.re < 0.0), eigenvalues: e.values });
    }
    out.sort_by(|x, y| x.state.a.total_cmp(&y.state.a));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchRow {
    pub l: f64,
    pub low: Option<CaAcState>,
    pub unstable: Option<CaAcState>,
    pub high: Option<CaAcState>,
}

/// Steady states over sorted `l_values`, sorted into low / unstable / high
/// branches. A lone equilibrium joins whichever branch it is closest to.
pub fn bifurcation_scan(p: &CaAcParams, l_values: &[f64]) -> Result<Vec<BranchRow>> {
    if l_values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("ligand values must be sorted"));
    }
    let sets: Vec<Vec<SteadyState>> = l_values.par_iter().map(|&l| ca_ac_steady_states(l, p)).collect::<Result<_>>()?;
    let dist = |a: &CaAcState, b: &CaAcState| (a.c - b.c).hypot(a.a - b.a);
    let mut rows = Vec::with_capacity(l_values.len());
    let (mut last_low, mut last_high): (Option<CaAcState>, Option<CaAcState>) = (None, None);
    for (&l, set) in l_values.iter().zip(&sets) {
        let mut row = BranchRow { l, low: None, unstable: None, high: None };
        let stable: Vec<CaAcState> = set.iter().filter(|s| s.stable).map(|s| s.state).collect();
        row.unstable = set.iter().find(|s| !s.stable).map(|s| s.state);
        match stable.as_slice() {
            [] => {}
            [only] => {
                let to_low = last_low.map(|s| dist(&s, only));
                let to_high = last_high.map(|s| dist(&s, only));
                let is_high = match (to_low, to_high) {
                    (Some(a), Some(b)) => b < a,
                    (None, Some(_)) => true,
                    (Some(_), None) => false,
                    // nothing seen yet: split by the midpoint of the AC range
                    (None, None) => only.a > 0.5 * p.at,
                };
                if is_high {
                    row.high = Some(*only);
                } else {
                    row.low = Some(*only);
                }
            }
            many => {
                row.low = many.first().copied();
                row.high = many.last().copied();
            }
        }
        last_low = row.low.or(last_low);
        last_high = row.high.or(last_high);
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HysteresisSweep {
    pub path: Vec<(f64, CaAcState)>,
    /// ligand level at which the followed state jumped branches
    pub jump_at: Option<f64>,
    /// `A` just before and just after the jump
    pub jump_values: Option<(f64, f64)>,
}

/// Quasi-static sweep through `l_values` (in the given order), following the
/// stable equilibrium nearest the previous one. A change in `A` larger than
/// a tenth of `At` counts as a jump.
pub fn hysteresis_sweep(p: &CaAcParams, l_values: &[f64]) -> Result<HysteresisSweep> {
    if l_values.is_empty() {
        return Err(Error::invalid("empty ligand sweep"));
    }
    let ascending = l_values.len() < 2 || l_values[1] >= l_values[0];
    let sets: Vec<Vec<SteadyState>> = l_values.par_iter().map(|&l| ca_ac_steady_states(l, p)).collect::<Result<_>>()?;
    let mut sweep = HysteresisSweep { path: Vec::with_capacity(l_values.len()), jump_at: None, jump_values: None };
    let mut prev: Option<CaAcState> = None;
    for (&l, set) in l_values.iter().zip(&sets) {
        let stable: Vec<CaAcState> = set.iter().filter(|s| s.stable).map(|s| s.state).collect();
        let next = match prev {
            None if ascending => stable.first().copied(),
            None => stable.last().copied(),
            Some(q) => stable.iter().copied().min_by(|x, y| (x.a - q.a).abs().total_cmp(&(y.a - q.a).abs())),
        };
        let Some(next) = next else {
            return Err(Error::Regime(format!("no stable equilibrium at L = {l}")));
        };
        if let Some(q) = prev {
            if sweep.jump_at.is_none() && (next.a - q.a).abs() > 0.1 * p.at {
                sweep.jump_at = Some(l);
                sweep.jump_values = Some((q.a, next.a));
            }
        }
        sweep.path.push((l, next));
        prev = Some(next);
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_at_rest_without_ligand() {
        let p = CaAcParams::default();
        let (dc, da) = ca_ac_rhs(CaAcState { c: p.cb, a: 0.0 }, 0.0, &p);
        assert_eq!(da, 0.0);
        assert!((dc - (-5.0 * 0.01 / 0.0325)).abs() < 1e-12);
    }

    #[test]
    fn store_flux_vanishes_at_store_level() {
        let p = CaAcParams::default();
        let (base, store) = p.calcium_parts(p.cer, 2.0);
        assert_eq!(store, 0.0);
        let (dc, _) = ca_ac_rhs(CaAcState { c: p.cer, a: 5.0 }, 2.0, &p);
        assert!((dc - base).abs() < 1e-12);
    }

    #[test]
    fn no_ligand_keeps_cyclase_off() {
        let traj = ca_ac_simulate(0.0, &CaAcParams::default(), 10.0, 1e-3, 100).unwrap();
        assert!(traj.component(1).iter().all(|&a| a == 0.0));
    }

    #[test]
    fn simulation_settles_on_equilibrium() {
        let p = CaAcParams::default();
        for l in [0.1, 1.0, 10.0] {
            let traj = ca_ac_simulate(l, &p, 40.0, 1e-3, 1000).unwrap();
            let (_, y) = traj.last().unwrap();
            let ss = ca_ac_steady_states(l, &p).unwrap();
            assert!(ss.iter().any(|s| (s.state.a - y[1]).abs() < 1e-4 && (s.state.c - y[0]).abs() < 1e-4), "{l}");
        }
    }

    #[test]
    fn equilibria_lie_on_both_nullclines() {
        let p = CaAcParams::default();
        for l in [0.05, 0.5, 3.0] {
            for s in ca_ac_steady_states(l, &p).unwrap() {
                let (dc, da) = ca_ac_rhs(s.state, l, &p);
                assert!(dc.abs() < 1e-8 && da.abs() < 1e-10);
                let n = ca_ac_nullclines(l, &p, s.state.c, s.state.c + 1.0, 2).unwrap();
                assert!((n.a_calcium[0] - s.state.a).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn more_ligand_raises_cyclase() {
        let p = CaAcParams::default();
        let lo = ca_ac_steady_states(0.1, &p).unwrap();
        let hi = ca_ac_steady_states(20.0, &p).unwrap();
        assert!(hi.last().unwrap().state.a > lo.first().unwrap().state.a);
    }

    #[test]
    fn scan_rejects_unsorted() {
        assert!(bifurcation_scan(&CaAcParams::default(), &[1.0, 0.5]).is_err());
    }

    #[test]
    fn weak_store_leak_gives_hysteresis() {
        // weaker ligand-gated release makes the cyclase feedback decisive
        let p = CaAcParams { kf: 0.2, k3: 0.5, ..Default::default() };
        let ls: Vec<f64> = (1..=100).map(|i| i as f64 * 0.03).collect();
        let rows = bifurcation_scan(&p, &ls).unwrap();
        assert!(rows.iter().any(|r| r.low.is_some() && r.unstable.is_some() && r.high.is_some()));
        let up = hysteresis_sweep(&p, &ls).unwrap();
        let rev: Vec<f64> = ls.iter().rev().copied().collect();
        let down = hysteresis_sweep(&p, &rev).unwrap();
        let (u, d) = (up.jump_at.unwrap(), down.jump_at.unwrap());
        assert!(u > d + 0.1, "up {u} down {d}");
        let (before, after) = up.jump_values.unwrap();
        assert!(after > before);
    }
}
