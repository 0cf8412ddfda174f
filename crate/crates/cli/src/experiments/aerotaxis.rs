use super::{lin_space, Ctx, Experiment, Output};
use crate::error::Result;
use crate::output::{Cell, Table};
use biosim_core::aerotaxis::{
    band_metrics_series, monte_carlo_trace, monte_carlo_trials, quasi_steady_state, simulate_band,
    steady_state_general, steady_state_general_exact, steady_state_intermediate, steady_state_low, AerotaxisParams,
    BandDetection, MonteCarloConfig, MonteCarloResult, QuasiInputs, SteadyInputs, TurningThresholds, LENGTH_SCALE_M,
};
use biosim_core::Grid1D;

pub(super) fn experiments() -> Vec<Experiment> {
    vec![
        Experiment {
            name: "aerotaxis-band",
            variants: &[],
            description: "band formation from a uniform suspension under an oxygen meniscus",
            defaults: band_defaults,
            body: band,
        },
        Experiment {
            name: "aerotaxis-steady",
            variants: &["general", "intermediate", "low"],
            description: "steady band profiles in the three oxygen regimes",
            defaults: steady_defaults,
            body: steady,
        },
        Experiment {
            name: "aerotaxis-quasi",
            variants: &[],
            description: "quasi-steady band position and width against meniscus oxygen",
            defaults: quasi_defaults,
            body: quasi,
        },
        Experiment {
            name: "aerotaxis-montecarlo",
            variants: &[],
            description: "slow-adaptation random walk around a favourable band",
            defaults: mc_defaults,
            body: monte_carlo,
        },
    ]
}

fn band_defaults(_: &str) -> Vec<(&'static str, f64)> {
    let p = AerotaxisParams::default();
    let th = p.thresholds;
    vec![
        ("aerotaxis.v", p.v),
        ("aerotaxis.D", p.d),
        ("aerotaxis.kappa", p.kappa),
        ("aerotaxis.L0", p.l0),
        ("aerotaxis.b0", p.b0),
        ("aerotaxis.length", p.domain_length),
        ("aerotaxis.n", p.grid.n as f64),
        ("aerotaxis.dt", p.grid.dt),
        ("aerotaxis.Lt_min", th.l_tilde_min),
        ("aerotaxis.L_min", th.l_min),
        ("aerotaxis.L_max", th.l_max),
        ("aerotaxis.Lt_max", th.l_tilde_max),
        ("aerotaxis.c", th.c_low),
        ("aerotaxis.C", th.c_high),
        ("aerotaxis.t_end", 30.0),
        ("aerotaxis.sample_every", 100.0),
    ]
}

fn band_params(ctx: &Ctx) -> Result<AerotaxisParams> {
    let length = ctx.p("aerotaxis.length");
    Ok(AerotaxisParams {
        v: ctx.p("aerotaxis.v"),
        d: ctx.p("aerotaxis.D"),
        kappa: ctx.p("aerotaxis.kappa"),
        l0: ctx.p("aerotaxis.L0"),
        b0: ctx.p("aerotaxis.b0"),
        domain_length: length,
        grid: Grid1D::spanning(ctx.count("aerotaxis.n")?, length, ctx.p("aerotaxis.dt"))?,
        thresholds: TurningThresholds {
            l_tilde_min: ctx.p("aerotaxis.Lt_min"),
            l_min: ctx.p("aerotaxis.L_min"),
            l_max: ctx.p("aerotaxis.L_max"),
            l_tilde_max: ctx.p("aerotaxis.Lt_max"),
            c_low: ctx.p("aerotaxis.c"),
            c_high: ctx.p("aerotaxis.C"),
        },
    })
}

fn band(ctx: &Ctx) -> Result<Output> {
    let p = band_params(ctx)?;
    let series = simulate_band(&p, ctx.p("aerotaxis.t_end"), ctx.count("aerotaxis.sample_every")?)?;
    let dx = p.grid.dx;
    let mut t = Table::new("profiles.csv", &["t", "x", "r", "l", "b", "oxygen"]);
    for (time, f) in series.times.iter().zip(&series.fields) {
        for i in 0..p.grid.n {
            t.push([*time, p.grid.x(i), f.r[i], f.l[i], f.r[i] + f.l[i], f.oxygen[i]].map(Cell::from));
        }
    }
    let mut out = Output::default();
    let m0 = series.fields[0].total_bacteria(dx);
    let m1 = series.last().expect("series has the initial sample").total_bacteria(dx);
    let mm = LENGTH_SCALE_M * 1e3;
    match band_metrics_series(&series, dx) {
        BandDetection::Band(b) => {
            out.flag("band_found", true);
            out.metric("ratio_front", b.ratio_front);
            out.metric("ratio_behind", b.ratio_behind);
            out.metric("width_mm", b.width_h * mm);
            out.metric("distance_mm", b.distance_d * mm);
            out.metric("formation_time_s", b.formation_time.unwrap_or(f64::NAN));
        }
        BandDetection::NoBand => out.flag("band_found", false),
    }
    out.metric("mass_drift_rel", (m1 - m0).abs() / m0);
    out.tables.push(t);
    Ok(out)
}

fn steady_defaults(variant: &str) -> Vec<(&'static str, f64)> {
    let l0 = match variant {
        "intermediate" => 0.004,
        "low" => 0.002,
        _ => 0.2,
    };
    vec![
        ("aerotaxis.k", 0.003),
        ("aerotaxis.b0", 2.0),
        ("aerotaxis.s", 1.0),
        ("aerotaxis.L0", l0),
        ("aerotaxis.L_min", 0.003),
        ("aerotaxis.L_max", 0.005),
        // 0: leading-order closed forms, 1: self-consistent solution (general regime only)
        ("aerotaxis.exact", 0.0),
        ("aerotaxis.points", 201.0),
    ]
}

fn steady(ctx: &Ctx) -> Result<Output> {
    let inp = SteadyInputs {
        k: ctx.p("aerotaxis.k"),
        b0: ctx.p("aerotaxis.b0"),
        s: ctx.p("aerotaxis.s"),
        l0: ctx.p("aerotaxis.L0"),
        l_min: ctx.p("aerotaxis.L_min"),
        l_max: ctx.p("aerotaxis.L_max"),
    };
    let sol = match ctx.variant {
        "intermediate" => steady_state_intermediate(&inp)?,
        "low" => steady_state_low(&inp)?,
        _ if ctx.p("aerotaxis.exact") != 0.0 => steady_state_general_exact(&inp)?,
        _ => steady_state_general(&inp)?,
    };
    let mut t = Table::new("profile.csv", &["x", "b", "oxygen"]);
    for x in lin_space(0.0, 1.5 * sol.extent(), ctx.count("aerotaxis.points")?)? {
        t.push([x, sol.density(x), sol.oxygen(x)].map(Cell::from));
    }
    let mut out = Output::default();
    for (k, v) in [("z", sol.z), ("lambda", sol.lambda), ("d", sol.d), ("h", sol.h), ("B", sol.b_band)] {
        out.metric(k, v);
    }
    out.metric("extent", sol.extent());
    out.tables.push(t);
    Ok(out)
}

fn quasi_defaults(_: &str) -> Vec<(&'static str, f64)> {
    vec![
        ("aerotaxis.kb0", 1.0 / 320.0),
        ("aerotaxis.b0", 1.0),
        ("aerotaxis.L_max", 0.005),
        ("aerotaxis.L0_lo", 0.2),
        ("aerotaxis.L0_hi", 1.0),
        ("aerotaxis.points", 9.0),
    ]
}

/// `d` is measured in units of 0.1 mm.
const QUASI_D_TO_MM: f64 = 0.1;

fn quasi(ctx: &Ctx) -> Result<Output> {
    let levels = lin_space(ctx.p("aerotaxis.L0_lo"), ctx.p("aerotaxis.L0_hi"), ctx.count("aerotaxis.points")?)?;
    let mut t = Table::new("quasi.csv", &["L0", "d", "h", "d_mm", "B", "separation_ok"]);
    let mut rows = Vec::new();
    for &l0 in &levels {
        let q = quasi_steady_state(&QuasiInputs {
            kb0: ctx.p("aerotaxis.kb0"),
            b0: ctx.p("aerotaxis.b0"),
            l0,
            l_max: ctx.p("aerotaxis.L_max"),
        })?;
        let ok = if q.separation_ok { 1.0 } else { 0.0 };
        t.push([l0, q.d, q.h, q.d * QUASI_D_TO_MM, q.b_band, ok].map(Cell::from));
        rows.push(q);
    }
    let mut out = Output::default();
    let (first, last) = (rows[0], rows[rows.len() - 1]);
    out.metric("d_mm_at_L0_lo", first.d * QUASI_D_TO_MM);
    out.metric("d_mm_at_L0_hi", last.d * QUASI_D_TO_MM);
    out.metric("h_at_L0_lo", first.h);
    out.metric("h_at_L0_hi", last.h);
    out.tables.push(t);
    Ok(out)
}

fn mc_defaults(_: &str) -> Vec<(&'static str, f64)> {
    let c = MonteCarloConfig::default();
    vec![
        ("aerotaxis.mc.v", c.v),
        ("aerotaxis.mc.c", c.c),
        ("aerotaxis.mc.t_a", c.t_a),
        ("aerotaxis.mc.band_half_width", c.band_half_width),
        ("aerotaxis.mc.wall_half_width", c.wall_half_width),
        ("aerotaxis.mc.n_trials", c.n_trials as f64),
        ("aerotaxis.mc.dt", c.dt),
        ("aerotaxis.mc.t_end", c.t_end),
        ("aerotaxis.mc.burn_in", c.burn_in),
        ("aerotaxis.mc.trace_every", 10.0),
    ]
}

fn monte_carlo(ctx: &Ctx) -> Result<Output> {
    let cfg = MonteCarloConfig {
        v: ctx.p("aerotaxis.mc.v"),
        c: ctx.p("aerotaxis.mc.c"),
        t_a: ctx.p("aerotaxis.mc.t_a"),
        band_half_width: ctx.p("aerotaxis.mc.band_half_width"),
        wall_half_width: ctx.p("aerotaxis.mc.wall_half_width"),
        n_trials: ctx.count("aerotaxis.mc.n_trials")?,
        seed: ctx.seed,
        dt: ctx.p("aerotaxis.mc.dt"),
        t_end: ctx.p("aerotaxis.mc.t_end"),
        burn_in: ctx.p("aerotaxis.mc.burn_in"),
    };
    let trials = monte_carlo_trials(&cfg)?;
    let res = MonteCarloResult::from_trials(&cfg, &trials);
    let mut per = Table::new("trials.csv", &["trial", "inside_samples", "total_samples"]);
    for (i, (inside, total)) in trials.iter().enumerate() {
        per.push([Cell::from(i), Cell::Num(*inside as f64), Cell::Num(*total as f64)]);
    }
    let mut t = Table::new("trace.csv", &["t", "x"]);
    for (time, x) in monte_carlo_trace(&cfg, 0, ctx.count("aerotaxis.mc.trace_every")?)? {
        t.push([time, x].map(Cell::from));
    }
    let mut out = Output::default();
    out.metric("ratio_inside_outside", res.inside_outside_ratio);
    out.metric("inside_fraction", res.inside_fraction);
    out.metric("samples", res.total_samples as f64);
    out.tables.push(per);
    out.tables.push(t);
    Ok(out)
}
