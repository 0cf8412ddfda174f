use super::{log_space, Ctx, Experiment, Output};
use crate::error::{CliError, Result};
use crate::output::{Cell, Table};
use biosim_core::kelvin::{
    frequency_sweep, network_deform, network_i, network_ii, parameter_sweep, single_body_deform, DeformationResult,
    Element, Forcing, KelvinBody, KelvinNetwork, ParallelGroup, SweepParam,
};

pub(super) fn experiments() -> Vec<Experiment> {
    vec![
        Experiment {
            name: "kelvin-single",
            variants: &[],
            description: "creep of one actin-like Kelvin body under a constant or oscillating load",
            defaults: single_defaults,
            body: single,
        },
        Experiment {
            name: "kelvin-sweep",
            variants: &["mu02", "mu12", "eta12", "all"],
            description: "steady and oscillatory response of two parallel bodies as one constant varies",
            defaults: sweep_defaults,
            body: sweep,
        },
        Experiment {
            name: "kelvin-freq",
            variants: &[],
            description: "normalised peak deformation and force split of two parallel bodies against frequency",
            defaults: freq_defaults,
            body: freq,
        },
        Experiment {
            name: "kelvin-network",
            variants: &["I", "II"],
            description: "deformation of the endothelial model networks in steady and oscillatory flow",
            defaults: network_defaults,
            body: network,
        },
    ]
}

const TRAJ_HEADER: [&str; 4] = ["t", "label", "u", "aF"];

fn forcing(f0: f64, hz: f64) -> Result<Forcing> {
    if hz < 0.0 {
        return Err(CliError::usage(format!("frequency must be non-negative, got {hz}")));
    }
    Ok(if hz == 0.0 { Forcing::Steady { f0 } } else { Forcing::oscillatory_hz(f0, hz) })
}

fn single_defaults(_: &str) -> Vec<(&'static str, f64)> {
    vec![
        ("kelvin.eta1", 5000.0),
        ("kelvin.mu0", 50.0),
        ("kelvin.mu1", 100.0),
        ("kelvin.F0", 1.0),
        // 0 means steady flow
        ("kelvin.freq", 0.0),
        ("kelvin.t_end", 3000.0),
        ("kelvin.h", 0.1),
        ("kelvin.sample_every", 10.0),
    ]
}

fn single(ctx: &Ctx) -> Result<Output> {
    let b = KelvinBody::new(ctx.p("kelvin.eta1"), ctx.p("kelvin.mu0"), ctx.p("kelvin.mu1"))?;
    let f0 = ctx.p("kelvin.F0");
    let f = forcing(f0, ctx.p("kelvin.freq"))?;
    let traj = single_body_deform(&b, &f, ctx.p("kelvin.t_end"), ctx.p("kelvin.h"), ctx.count("kelvin.sample_every")?)?;
    let mut t = Table::new("trajectory.csv", &TRAJ_HEADER);
    for (time, s) in traj.times.iter().zip(&traj.states) {
        t.push([Cell::from(*time), Cell::from("body"), Cell::from(s[0]), Cell::from(f.value(*time))]);
    }
    let (ts, te) = b.relaxation_times();
    let mut out = Output::default();
    out.metric("u0", traj.states[0][0]);
    out.metric("u_end", traj.last().expect("trajectory has the initial sample").1[0]);
    out.metric("u0_closed_form", b.instantaneous_deformation(f.value(0.0)));
    out.metric("u_inf_closed_form", f0 / b.mu0);
    out.metric("tau_sigma", ts);
    out.metric("tau_epsilon", te);
    if let Forcing::Steady { .. } = f {
        let err = traj
            .times
            .iter()
            .zip(&traj.states)
            .map(|(time, s)| (s[0] - b.steady_creep(f0, *time)).abs())
            .fold(0.0, f64::max);
        out.metric("max_abs_err_closed_form", err);
    }
    out.tables.push(t);
    Ok(out)
}

fn pair_keys() -> Vec<(&'static str, f64)> {
    vec![
        ("kelvin.eta11", 5000.0),
        ("kelvin.mu01", 50.0),
        ("kelvin.mu11", 100.0),
        ("kelvin.eta12", 5000.0),
        ("kelvin.mu02", 50.0),
        ("kelvin.mu12", 100.0),
        ("kelvin.F0", 1.0),
    ]
}

fn pair(ctx: &Ctx) -> Result<ParallelGroup> {
    Ok(ParallelGroup::new(vec![
        KelvinBody::new(ctx.p("kelvin.eta11"), ctx.p("kelvin.mu01"), ctx.p("kelvin.mu11"))?,
        KelvinBody::new(ctx.p("kelvin.eta12"), ctx.p("kelvin.mu02"), ctx.p("kelvin.mu12"))?,
    ])?)
}

fn sweep_defaults(variant: &str) -> Vec<(&'static str, f64)> {
    let (lo, hi) = match variant {
        "mu12" => (10.0, 1000.0),
        "eta12" => (500.0, 50000.0),
        "all" => (0.1, 10.0),
        _ => (5.0, 500.0),
    };
    let mut v = pair_keys();
    v.extend([
        ("kelvin.freq", 1.0),
        ("kelvin.t_end_steady", 12000.0),
        ("kelvin.t_end_osc", 2000.0),
        ("kelvin.h", 0.1),
        ("kelvin.lo", lo),
        ("kelvin.hi", hi),
        ("kelvin.points", 3.0),
    ]);
    v
}

fn sweep(ctx: &Ctx) -> Result<Output> {
    let param: SweepParam = ctx.variant.parse()?;
    let base = pair(ctx)?;
    let values = log_space(ctx.p("kelvin.lo"), ctx.p("kelvin.hi"), ctx.count("kelvin.points")?)?;
    let f0 = ctx.p("kelvin.F0");
    let hz = ctx.p("kelvin.freq");
    let h = ctx.p("kelvin.h");
    let steady = parameter_sweep(&base, param, &values, &Forcing::Steady { f0 }, ctx.p("kelvin.t_end_steady"), h)?;
    let osc_f = forcing(f0, hz)?;
    let h_osc = osc_f.period().map_or(h, |p| h.min(p / 100.0));
    let osc = parameter_sweep(&base, param, &values, &osc_f, ctx.p("kelvin.t_end_osc"), h_osc)?;

    let mut t = Table::new("sweep.csv", &["param_value", "flow_kind", "steady_u", "steady_aF"]);
    for (kind, rows) in [("steady", &steady), ("oscillatory", &osc)] {
        for r in rows.iter() {
            t.push([Cell::from(r.value), Cell::from(kind), Cell::from(r.metrics.u), Cell::from(r.metrics.force)]);
        }
    }
    let mut out = Output::default();
    let spread = |rows: &[biosim_core::kelvin::SweepRow]| {
        let (lo, hi) =
            rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| (a.min(r.metrics.u), b.max(r.metrics.u)));
        (hi - lo) / hi.abs()
    };
    out.metric("steady_u_first", steady[0].metrics.u);
    out.metric("steady_u_last", steady[steady.len() - 1].metrics.u);
    out.metric("steady_u_rel_spread", spread(&steady));
    out.metric("osc_u_first", osc[0].metrics.u);
    out.metric("osc_u_last", osc[osc.len() - 1].metrics.u);
    out.metric("osc_u_rel_spread", spread(&osc));
    out.flag("all_settled", steady.iter().all(|r| r.metrics.settled));
    out.tables.push(t);
    Ok(out)
}

/// Logarithmically spread from quasi-static to well above the cut-off.
const FREQUENCIES_HZ: [f64; 14] = [1e-4, 2e-3, 3e-3, 4e-3, 5e-3, 1e-2, 2e-2, 5e-2, 7e-2, 0.1, 0.25, 0.75, 1.0, 10.0];

fn freq_defaults(_: &str) -> Vec<(&'static str, f64)> {
    let mut v = pair_keys();
    v.extend([("kelvin.h_max", 0.1), ("kelvin.min_time", 2000.0)]);
    v
}

fn freq(ctx: &Ctx) -> Result<Output> {
    let g = pair(ctx)?;
    let rows =
        frequency_sweep(&g, &FREQUENCIES_HZ, ctx.p("kelvin.F0"), ctx.p("kelvin.h_max"), ctx.p("kelvin.min_time"))?;
    let mut t = Table::new("frequency.csv", &["freq_hz", "norm_u", "norm_aF"]);
    let mut out = Output::default();
    for r in &rows {
        t.push([r.freq_hz, r.norm_u, r.norm_force].map(Cell::from));
        out.metric(format!("norm_u_at_{}Hz", r.freq_hz), r.norm_u);
    }
    let high: Vec<f64> = rows.iter().filter(|r| r.freq_hz >= 1e-2).map(|r| r.norm_u).collect();
    out.metric("norm_u_high_min", high.iter().copied().fold(f64::INFINITY, f64::min));
    out.metric("norm_u_high_max", high.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    out.metric("norm_aF_max_dev", rows.iter().map(|r| (r.norm_force - 1.0).abs()).fold(0.0, f64::max));
    out.tables.push(t);
    Ok(out)
}

fn network_defaults(_: &str) -> Vec<(&'static str, f64)> {
    vec![
        ("kelvin.F0", 1.0),
        ("kelvin.t_end_steady", 2000.0),
        ("kelvin.h_steady", 0.1),
        ("kelvin.sample_every_steady", 10.0),
        ("kelvin.freq", 1.0),
        ("kelvin.t_end_osc", 20.0),
        ("kelvin.h_osc", 0.01),
        ("kelvin.sample_every_osc", 5.0),
    ]
}

/// Long format: one row per single-body element, one per branch of a
/// parallel group (`label.k`), and a `total` row carrying the load.
fn trajectory_table(file: &str, net: &KelvinNetwork, r: &DeformationResult, f: &Forcing) -> Table {
    let mut t = Table::new(file, &TRAJ_HEADER);
    for (k, time) in r.times.iter().enumerate() {
        for ((label, e), run) in net.elements.iter().zip(&r.elements) {
            match e {
                Element::Single(_) => t.push([
                    Cell::from(*time),
                    Cell::from(label.as_str()),
                    Cell::from(run.u[k]),
                    Cell::from(run.forces[0][k]),
                ]),
                Element::Parallel(_) => {
                    for (i, fs) in run.forces.iter().enumerate() {
                        t.push([
                            Cell::from(*time),
                            Cell::from(format!("{label}.{}", i + 1)),
                            Cell::from(run.u[k]),
                            Cell::from(fs[k]),
                        ]);
                    }
                }
            }
        }
        t.push([Cell::from(*time), Cell::from("total"), Cell::from(r.total[k]), Cell::from(f.value(*time))]);
    }
    t
}

/// Largest `|F_i/F − 1/n|` over the identical-body groups.
fn split_deviation(net: &KelvinNetwork, r: &DeformationResult, f: &Forcing) -> f64 {
    let mut worst: f64 = 0.0;
    for ((_, e), run) in net.elements.iter().zip(&r.elements) {
        let Element::Parallel(g) = e else { continue };
        if g.bodies.iter().any(|b| *b != g.bodies[0]) {
            continue;
        }
        let share = 1.0 / g.len() as f64;
        for (k, time) in r.times.iter().enumerate() {
            let load = f.value(*time);
            if load.abs() < 1e-3 * f.amplitude().abs() {
                continue;
            }
            for fs in &run.forces {
                worst = worst.max((fs[k] / load - share).abs());
            }
        }
    }
    worst
}

fn network(ctx: &Ctx) -> Result<Output> {
    let net = if ctx.variant == "II" { network_ii() } else { network_i() };
    let f0 = ctx.p("kelvin.F0");
    let steady_f = Forcing::Steady { f0 };
    let osc_f = forcing(f0, ctx.p("kelvin.freq"))?;
    let (steady, osc) = rayon::join(
        || {
            network_deform(
                &net,
                &steady_f,
                ctx.p("kelvin.t_end_steady"),
                ctx.p("kelvin.h_steady"),
                ctx.count("kelvin.sample_every_steady")?,
            )
            .map_err(CliError::from)
        },
        || {
            network_deform(
                &net,
                &osc_f,
                ctx.p("kelvin.t_end_osc"),
                ctx.p("kelvin.h_osc"),
                ctx.count("kelvin.sample_every_osc")?,
            )
            .map_err(CliError::from)
        },
    );
    let (steady, osc) = (steady?, osc?);

    // ordering after the first second: the sensor is closest to its own
    // final value, the nucleus deforms least
    let last = steady.times.len() - 1;
    let mut violations = 0usize;
    for (k, time) in steady.times.iter().enumerate() {
        if *time <= 1.0 {
            continue;
        }
        let frac = |e: &biosim_core::kelvin::ElementRun| e.u[k] / e.u[last];
        let sensor = steady.element("sensor").expect("networks have a sensor");
        let nucleus = steady.element("nucleus").expect("networks have a nucleus");
        let fastest = steady.elements.iter().all(|e| e.label == "sensor" || frac(sensor) >= frac(e));
        let least = steady.elements.iter().all(|e| e.label == "nucleus" || nucleus.u[k] <= e.u[k]);
        if !(fastest && least) {
            violations += 1;
        }
    }

    let mut out = Output::default();
    for e in &steady.elements {
        out.metric(format!("steady_u_{}", e.label), e.u[last]);
    }
    out.metric("steady_total", steady.total[last]);
    out.metric("ordering_violations", violations as f64);
    out.metric("steady_split_max_dev", split_deviation(&net, &steady, &steady_f));
    out.metric("osc_split_max_dev", split_deviation(&net, &osc, &osc_f));
    if let Some(p) = osc_f.period() {
        let t_last = osc.times[osc.times.len() - 1];
        let peak = osc
            .times
            .iter()
            .zip(&osc.total)
            .filter(|(t, _)| **t >= t_last - p - 1e-9)
            .map(|(_, u)| *u)
            .fold(f64::NEG_INFINITY, f64::max);
        out.metric("osc_total_peak", peak);
        out.metric("osc_steady_total_ratio", peak / steady.total[last]);
    }
    out.tables.push(trajectory_table("steady.csv", &net, &steady, &steady_f));
    out.tables.push(trajectory_table("oscillatory.csv", &net, &osc, &osc_f));
    Ok(out)
}
