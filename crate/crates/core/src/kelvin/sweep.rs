//! Long-time metrics of a parallel group under parameter and frequency
//! variation. Runs stream through RK4 without storing trajectories.

use super::body::Forcing;
use super::parallel::{GroupOde, ParallelGroup};
use crate::error::{Error, Result};
use crate::numerics::Rk4;
use rayon::prelude::*;

/// Maximum of `values` over each consecutive full period, as
/// `(end of period, peak)`.
pub fn peak_envelope(times: &[f64], values: &[f64], period: f64) -> Result<Vec<(f64, f64)>> {
    if times.len() != values.len() || times.is_empty() {
        return Err(Error::invalid("times and values must be non-empty and of equal length"));
    }
    if !(period > 0.0) {
        return Err(Error::invalid(format!("period must be positive, got {period}")));
    }
    let t0 = times[0];
    let span = times[times.len() - 1] - t0;
    if span < 3.0 * period * (1.0 - 1e-9) {
        return Err(Error::invalid(format!("need at least three periods, have {:.3}", span / period)));
    }
    let full = (span / period * (1.0 + 1e-12)).floor() as usize;
    let mut peaks = vec![f64::NEG_INFINITY; full];
    for (t, v) in times.iter().zip(values) {
        let k = (((t - t0) / period) * (1.0 - 1e-12)).floor().max(0.0) as usize;
        if k < full {
            peaks[k] = peaks[k].max(*v);
        }
        // a sample exactly on a boundary closes the previous period too
        let b = (t - t0) / period;
        let kb = b.round() as usize;
        if kb >= 1 && kb <= full && (b - b.round()).abs() < 1e-9 {
            peaks[kb - 1] = peaks[kb - 1].max(*v);
        }
    }
    Ok(peaks.into_iter().enumerate().map(|(k, p)| (t0 + (k + 1) as f64 * period, p)).collect())
}

/// Long-time response of a group: the final value in steady flow, the
/// last-period peak in oscillatory flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupMetrics {
    pub u: f64,
    /// force in the first body
    pub force: f64,
    /// steady flow: `|u(t_end) − u(0.9 t_end)| < 1e−4 u`; always true for
    /// oscillatory flow
    pub settled: bool,
}

pub fn group_metrics(g: &ParallelGroup, f: &Forcing, t_end: f64, h: f64) -> Result<GroupMetrics> {
    f.validate()?;
    if !(h > 0.0 && t_end > 0.0) {
        return Err(Error::invalid("need positive t_end and h"));
    }
    let ode = GroupOde::new(g)?;
    let mut y = ode.initial(f.value(0.0));
    let mut rk = Rk4::new(y.len());
    let mut rhs = |t: f64, y: &[f64], dy: &mut [f64]| ode.rhs(f, t, y, dy);
    let steps = (t_end / h).round().max(1.0) as usize;
    let window_start = match f.period() {
        Some(p) if p * 3.0 > t_end * (1.0 + 1e-9) => {
            return Err(Error::invalid(format!("t_end {t_end} covers fewer than three periods of {p}")))
        }
        Some(p) => t_end - p,
        None => 0.9 * t_end,
    };
    let (mut peak_u, mut peak_f, mut u_check) = (f64::NEG_INFINITY, f64::NEG_INFINITY, None);
    for k in 0..steps {
        let t = k as f64 * h;
        rk.step(&mut rhs, t, &mut y, h)?;
        let t1 = (k + 1) as f64 * h;
        if t1 >= window_start - 1e-9 * h {
            u_check.get_or_insert(y[0]);
            peak_u = peak_u.max(y[0]);
            peak_f = peak_f.max(ode.branch_force(0, f.value(t1), &y));
        }
    }
    Ok(match f {
        Forcing::Steady { f0 } => {
            let u = y[0];
            let settled = (u - u_check.unwrap_or(u)).abs() < 1e-4 * u.abs();
            GroupMetrics { u, force: ode.branch_force(0, *f0, &y), settled }
        }
        Forcing::Oscillatory { .. } => GroupMetrics { u: peak_u, force: peak_f, settled: true },
    })
}

/// Which constant of the second body a sweep varies; `AllFactor` scales
/// every constant of every body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Mu02,
    Mu12,
    Eta12,
    AllFactor,
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu02" => Ok(SweepParam::Mu02),
            "mu12" => Ok(SweepParam::Mu12),
            "eta12" => Ok(SweepParam::Eta12),
            "all" | "factor" => Ok(SweepParam::AllFactor),
            other => Err(Error::invalid(format!("unknown sweep parameter '{other}' (mu02|mu12|eta12|all)"))),
        }
    }
}

impl SweepParam {
    pub fn apply(self, base: &ParallelGroup, value: f64) -> Result<ParallelGroup> {
        if base.len() != 2 {
            return Err(Error::invalid("parameter sweeps act on a two-body group"));
        }
        let mut g = base.clone();
        match self {
            SweepParam::Mu02 => g.bodies[1].mu0 = value,
            SweepParam::Mu12 => g.bodies[1].mu1 = value,
            SweepParam::Eta12 => g.bodies[1].eta1 = value,
            SweepParam::AllFactor => {
                for b in &mut g.bodies {
                    b.eta1 *= value;
                    b.mu0 *= value;
                    b.mu1 *= value;
                }
            }
        }
        g.validate()?;
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub metrics: GroupMetrics,
}

pub fn parameter_sweep(
    base: &ParallelGroup,
    param: SweepParam,
    values: &[f64],
    f: &Forcing,
    t_end: f64,
    h: f64,
) -> Result<Vec<SweepRow>> {
    if values.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::invalid("sweep values must be positive"));
    }
    values
        .par_iter()
        .map(|&value| Ok(SweepRow { value, metrics: group_metrics(&param.apply(base, value)?, f, t_end, h)? }))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyRow {
    pub freq_hz: f64,
    /// peak deformation over `F0/Σμ0`
    pub norm_u: f64,
    /// peak force in the first body over its steady-flow share `F0 μ01/Σμ0`
    pub norm_force: f64,
}

/// Step `min(h_max, period/100)`; run for whole periods covering at least
/// `max(3 periods, min_time)`.
pub fn frequency_sweep(
    g: &ParallelGroup,
    freqs: &[f64],
    f0: f64,
    h_max: f64,
    min_time: f64,
) -> Result<Vec<FrequencyRow>> {
    if freqs.iter().any(|f| !(*f > 0.0)) {
        return Err(Error::invalid("frequencies must be positive"));
    }
    g.validate()?;
    let u_ref = f0 / g.total_mu0();
    let f_ref = f0 * g.bodies[0].mu0 / g.total_mu0();
    freqs
        .par_iter()
        .map(|&hz| {
            let period = 1.0 / hz;
            let h = h_max.min(period / 100.0);
            let periods = (min_time / period).ceil().max(3.0);
            let m = group_metrics(g, &Forcing::oscillatory_hz(f0, hz), periods * period, h)?;
            Ok(FrequencyRow { freq_hz: hz, norm_u: m.u / u_ref, norm_force: m.force / f_ref })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kelvin::body::{material_params, Material};
    use crate::kelvin::parallel::parallel_simulate;

    fn pair() -> ParallelGroup {
        let a = material_params(Material::Actin);
        ParallelGroup::new(vec![a, a]).unwrap()
    }

    #[test]
    fn envelope_of_constant() {
        let t: Vec<f64> = (0..=40).map(|k| k as f64 * 0.25).collect();
        let env = peak_envelope(&t, &vec![2.0; t.len()], 2.0).unwrap();
        assert_eq!(env.len(), 5);
        assert!(env.iter().all(|(_, p)| *p == 2.0));
        assert!(peak_envelope(&t, &vec![2.0; t.len()], 4.0).is_err());
    }

    #[test]
    fn envelope_settles_quickly() {
        let f = Forcing::oscillatory_hz(1.0, 1.0);
        let r = parallel_simulate(&pair(), &f, 10.0, 0.001, 1).unwrap();
        let env = peak_envelope(&r.times, &r.u, 1.0).unwrap();
        let last = env.last().unwrap().1;
        assert!((env[2].1 - last).abs() < 0.01 * last);
        let fe = peak_envelope(&r.times, &r.forces[0], 1.0).unwrap();
        assert!(fe.iter().all(|(_, p)| (p - 0.5).abs() < 1e-9));
    }

    #[test]
    fn mu12_leaves_steady_state() {
        let rows = parameter_sweep(
            &pair(),
            SweepParam::Mu12,
            &[10.0, 100.0, 1000.0],
            &Forcing::Steady { f0: 1.0 },
            12_000.0,
            0.1,
        )
        .unwrap();
        for r in &rows {
            assert!((r.metrics.u - 0.01).abs() < 1e-8, "{r:?}");
            assert!(r.metrics.settled);
        }
    }

    #[test]
    fn stiffer_pair_deforms_less() {
        let vals = [0.1, 1.0, 10.0];
        for f in [Forcing::Steady { f0: 1.0 }, Forcing::oscillatory_hz(1.0, 1.0)] {
            let rows = parameter_sweep(&pair(), SweepParam::AllFactor, &vals, &f, 12_000.0, 0.1).unwrap();
            assert!(rows[0].metrics.u > rows[1].metrics.u && rows[1].metrics.u > rows[2].metrics.u);
        }
    }

    #[test]
    fn frequency_limits() {
        let rows = frequency_sweep(&pair(), &[1e-4, 1e-2, 1.0], 1.0, 0.1, 2000.0).unwrap();
        assert!((rows[0].norm_u - 1.0).abs() < 0.02, "{rows:?}");
        assert!((rows[1].norm_u - 1.0 / 3.0).abs() < 0.02);
        assert!((rows[2].norm_u - 1.0 / 3.0).abs() < 1e-3);
        assert!(rows.iter().all(|r| (r.norm_force - 1.0).abs() < 1e-6), "{rows:?}");
    }

    #[test]
    fn step_halving_stable() {
        let f = Forcing::Steady { f0: 1.0 };
        let a = group_metrics(&pair(), &f, 3000.0, 0.1).unwrap();
        let b = group_metrics(&pair(), &f, 3000.0, 0.05).unwrap();
        assert!((a.u - b.u).abs() < 1e-6 * a.u);
    }
}
