use super::{lin_space, Ctx, Experiment, Output};
use crate::error::Result;
use crate::output::{Cell, Table};
use biosim_core::growthcone::{
    adaptation_asymptotic, adaptation_simulate, bifurcation_scan, ca_ac_nullclines, ca_ac_simulate,
    ca_ac_steady_states, calcium_switch_rate, hysteresis_sweep, reaction_diffusion_simulate, step_schedule,
    two_compartment_matched_asymptotic, two_compartment_simulate, two_compartment_steady, two_compartment_steady_ka,
    AdaptationParams, CaAcParams, CaAcState, CompartmentCoupling, InitialState, Integrator, LigandProfile, RdConfig,
    SwitchRateParams,
};
use biosim_core::Grid1D;

pub(super) fn experiments() -> Vec<Experiment> {
    vec![
        Experiment {
            name: "growthcone-switch",
            variants: &[],
            description: "calcium / adenylate-cyclase time course, nullclines and equilibria at one ligand level",
            defaults: switch_defaults,
            body: switch,
        },
        Experiment {
            name: "growthcone-bifurcation",
            variants: &[],
            description: "equilibrium branches of the calcium / cyclase switch and quasi-static up/down sweeps",
            defaults: bifurcation_defaults,
            body: bifurcation,
        },
        Experiment {
            name: "growthcone-adaptation",
            variants: &[],
            description: "perfect adaptation after a ligand step, numerical and two-time-scale",
            defaults: adaptation_defaults,
            body: adaptation,
        },
        Experiment {
            name: "growthcone-twocomp",
            variants: &[],
            description: "two coupled compartments: transient, steady gradient and its bound",
            defaults: twocomp_defaults,
            body: twocomp,
        },
        Experiment {
            name: "growthcone-rd",
            variants: &["linear", "uniform", "quadratic"],
            description: "adaptation pathway with diffusing substrate under a fixed ligand profile",
            defaults: rd_defaults,
            body: rd,
        },
        Experiment {
            name: "growthcone-ca-switch",
            variants: &[],
            description: "steady two-compartment gradient as resting calcium varies",
            defaults: ca_switch_defaults,
            body: ca_switch,
        },
    ]
}

fn caac_keys() -> Vec<(&'static str, f64)> {
    let p = CaAcParams::default();
    vec![
        ("growthcone.k0", p.k0),
        ("growthcone.kn1", p.kn1),
        ("growthcone.k1", p.k1),
        ("growthcone.kp", p.kp),
        ("growthcone.k2", p.k2),
        ("growthcone.cb", p.cb),
        ("growthcone.kf", p.kf),
        ("growthcone.k3", p.k3),
        ("growthcone.cer", p.cer),
        ("growthcone.ka_ratio", p.ka_ratio),
        ("growthcone.k4", p.k4),
        ("growthcone.kn2", p.kn2),
        ("growthcone.cm", p.cm),
        ("growthcone.kr", p.kr),
        ("growthcone.at", p.at),
        ("growthcone.k5", p.k5),
    ]
}

fn caac_params(ctx: &Ctx) -> CaAcParams {
    CaAcParams {
        k0: ctx.p("growthcone.k0"),
        kn1: ctx.p("growthcone.kn1"),
        k1: ctx.p("growthcone.k1"),
        kp: ctx.p("growthcone.kp"),
        k2: ctx.p("growthcone.k2"),
        cb: ctx.p("growthcone.cb"),
        kf: ctx.p("growthcone.kf"),
        k3: ctx.p("growthcone.k3"),
        cer: ctx.p("growthcone.cer"),
        ka_ratio: ctx.p("growthcone.ka_ratio"),
        k4: ctx.p("growthcone.k4"),
        kn2: ctx.p("growthcone.kn2"),
        cm: ctx.p("growthcone.cm"),
        kr: ctx.p("growthcone.kr"),
        at: ctx.p("growthcone.at"),
        k5: ctx.p("growthcone.k5"),
    }
}

fn switch_defaults(_: &str) -> Vec<(&'static str, f64)> {
    let mut v = caac_keys();
    v.extend([
        ("growthcone.L", 1.0),
        ("growthcone.t_end", 100.0),
        ("growthcone.h", 0.01),
        ("growthcone.sample_every", 10.0),
        ("growthcone.c_lo", 0.01),
        ("growthcone.c_hi", 7.0),
        ("growthcone.points", 400.0),
    ]);
    v
}

fn switch(ctx: &Ctx) -> Result<Output> {
    let p = caac_params(ctx);
    let l = ctx.p("growthcone.L");
    let traj =
        ca_ac_simulate(l, &p, ctx.p("growthcone.t_end"), ctx.p("growthcone.h"), ctx.count("growthcone.sample_every")?)?;
    let mut tc = Table::new("timecourse.csv", &["t", "C", "A"]);
    for (t, s) in traj.times.iter().zip(&traj.states) {
        tc.push([*t, s[0], s[1]].map(Cell::from));
    }
    let nc =
        ca_ac_nullclines(l, &p, ctx.p("growthcone.c_lo"), ctx.p("growthcone.c_hi"), ctx.count("growthcone.points")?)?;
    let mut nt = Table::new("nullclines.csv", &["C", "A_calcium", "A_cyclase"]);
    for i in 0..nc.c.len() {
        // NaN marks C where the calcium nullcline does not exist
        let ac = Some(nc.a_calcium[i]).filter(|v| v.is_finite());
        nt.push([Cell::from(nc.c[i]), Cell::from(ac), Cell::from(nc.a_cyclase[i])]);
    }
    let eq = ca_ac_steady_states(l, &p)?;
    let mut et = Table::new("equilibria.csv", &["C", "A", "stable"]);
    for s in &eq {
        et.push([s.state.c, s.state.a, if s.stable { 1.0 } else { 0.0 }].map(Cell::from));
    }
    let (_, last) = traj.last().expect("trajectory is non-empty");
    let mut out = Output::default();
    out.metric("C_final", last[0]);
    out.metric("A_final", last[1]);
    out.metric("equilibria", eq.len() as f64);
    out.metric("stable_equilibria", eq.iter().filter(|s| s.stable).count() as f64);
    out.tables.extend([tc, nt, et]);
    Ok(out)
}

fn bifurcation_defaults(_: &str) -> Vec<(&'static str, f64)> {
    let mut v = caac_keys();
    v.extend([("growthcone.L_lo", 0.05), ("growthcone.L_hi", 5.0), ("growthcone.points", 100.0)]);
    v
}

fn pair(s: Option<CaAcState>) -> [Cell; 2] {
    [Cell::from(s.map(|s| s.c)), Cell::from(s.map(|s| s.a))]
}

fn bifurcation(ctx: &Ctx) -> Result<Output> {
    let p = caac_params(ctx);
    let up = lin_space(ctx.p("growthcone.L_lo"), ctx.p("growthcone.L_hi"), ctx.count("growthcone.points")?)?;
    let down: Vec<f64> = up.iter().rev().copied().collect();
    let rows = bifurcation_scan(&p, &up)?;
    let mut bt = Table::new("branches.csv", &["L", "C_low", "A_low", "C_unstable", "A_unstable", "C_high", "A_high"]);
    for r in &rows {
        let mut row = vec![Cell::from(r.l)];
        row.extend(pair(r.low));
        row.extend(pair(r.unstable));
        row.extend(pair(r.high));
        bt.push(row);
    }
    let mut ht = Table::new("hysteresis.csv", &["direction", "L", "C", "A"]);
    let mut out = Output::default();
    for (dir, ls) in [("up", &up), ("down", &down)] {
        let sw = hysteresis_sweep(&p, ls)?;
        for (l, s) in &sw.path {
            ht.push([Cell::from(dir), Cell::from(*l), Cell::from(s.c), Cell::from(s.a)]);
        }
        out.metric(format!("jump_{dir}_L"), sw.jump_at.unwrap_or(f64::NAN));
        let (before, after) = sw.jump_values.unwrap_or((f64::NAN, f64::NAN));
        out.metric(format!("jump_{dir}_A_before"), before);
        out.metric(format!("jump_{dir}_A_after"), after);
    }
    let bistable = rows.iter().filter(|r| r.unstable.is_some()).count();
    out.metric("bistable_points", bistable as f64);
    out.tables.extend([bt, ht]);
    Ok(out)
}

fn adaptation_keys() -> Vec<(&'static str, f64)> {
    let p = AdaptationParams::default();
    vec![
        ("growthcone.m", p.m),
        ("growthcone.lambda", p.lambda),
        ("growthcone.k", p.k),
        ("growthcone.kd", p.kd),
        ("growthcone.r", p.r),
    ]
}

fn adaptation_params(ctx: &Ctx) -> AdaptationParams {
    AdaptationParams {
        m: ctx.p("growthcone.m"),
        lambda: ctx.p("growthcone.lambda"),
        k: ctx.p("growthcone.k"),
        kd: ctx.p("growthcone.kd"),
        r: ctx.p("growthcone.r"),
    }
}

fn adaptation_defaults(_: &str) -> Vec<(&'static str, f64)> {
    let mut v = adaptation_keys();
    v.extend([
        ("growthcone.l0", 0.1),
        ("growthcone.l1", 1.0),
        ("growthcone.t_end", 800.0),
        ("growthcone.h", 0.01),
        ("growthcone.sample_every", 100.0),
        // 0: leading-order start shared with the asymptotic form, 1: exact equilibrium
        ("growthcone.exact_ic", 0.0),
    ]);
    v
}

fn adaptation(ctx: &Ctx) -> Result<Output> {
    let p = adaptation_params(ctx);
    let (l0, l1) = (ctx.p("growthcone.l0"), ctx.p("growthcone.l1"));
    let init = if ctx.p("growthcone.exact_ic") != 0.0 { InitialState::Exact } else { InitialState::LeadingOrder };
    let traj = adaptation_simulate(
        l0,
        init,
        step_schedule(l0, l1, 0.0),
        &p,
        ctx.p("growthcone.t_end"),
        ctx.p("growthcone.h"),
        Integrator::Rk4,
    )?;
    let asym = adaptation_asymptotic(l0, l1, &p)?;
    let every = ctx.count("growthcone.sample_every")?.max(1);
    let mut t = Table::new("timecourse.csv", &["t", "l", "M", "A", "A_asymptotic"]);
    let (mut sup, mut peak, mut trough) = (0.0f64, f64::MIN, f64::MAX);
    let n = traj.len();
    for (k, (time, s)) in traj.times.iter().zip(&traj.states).enumerate() {
        let a_asym = asym.eval(*time).a;
        sup = sup.max((s[1] - a_asym).abs());
        peak = peak.max(s[1]);
        trough = trough.min(s[1]);
        if k % every == 0 || k + 1 == n {
            let l = if *time > 0.0 { l1 } else { l0 };
            t.push([*time, l, s[0], s[1], a_asym].map(Cell::from));
        }
    }
    let (_, last) = traj.last().expect("trajectory is non-empty");
    let mut out = Output::default();
    out.metric("A_final", last[1]);
    out.metric("A_baseline", p.a_star());
    out.metric("A_final_rel_dev", (last[1] - p.a_star()).abs() / p.a_star());
    out.metric("A_peak", peak);
    out.metric("A_trough", trough);
    out.metric("asymptotic_sup_err", sup);
    out.metric("asymptotic_sup_rel", sup / p.a_star());
    out.flag("lambda_ok", asym.lambda_ok);
    out.tables.push(t);
    Ok(out)
}

fn coupling_keys() -> Vec<(&'static str, f64)> {
    let c = CompartmentCoupling::default();
    vec![("growthcone.k1_couple", c.k1), ("growthcone.k2_couple", c.k2)]
}

fn coupling(ctx: &Ctx) -> CompartmentCoupling {
    CompartmentCoupling { k1: ctx.p("growthcone.k1_couple"), k2: ctx.p("growthcone.k2_couple") }
}

fn twocomp_defaults(_: &str) -> Vec<(&'static str, f64)> {
    let mut v = adaptation_keys();
    v.extend(coupling_keys());
    v.extend([
        ("growthcone.l0", 0.75),
        ("growthcone.l1", 1.0),
        ("growthcone.l2", 0.5),
        ("growthcone.t_end", 200.0),
        ("growthcone.h", 0.01),
        ("growthcone.sample_every", 100.0),
        ("growthcone.grid_lo", 0.1),
        ("growthcone.grid_hi", 1.0),
        ("growthcone.grid_points", 10.0),
    ]);
    v
}

fn twocomp(ctx: &Ctx) -> Result<Output> {
    let p = adaptation_params(ctx);
    let cpl = coupling(ctx);
    let (l0, l1, l2) = (ctx.p("growthcone.l0"), ctx.p("growthcone.l1"), ctx.p("growthcone.l2"));
    let traj = two_compartment_simulate(
        l0,
        l1,
        l2,
        &p,
        &cpl,
        ctx.p("growthcone.t_end"),
        ctx.p("growthcone.h"),
        ctx.count("growthcone.sample_every")?,
    )?;
    // the composite approximation only exists without A exchange
    let matched = if cpl.k2 == 0.0 { Some(two_compartment_matched_asymptotic(l0, l1, l2, &p, &cpl)?) } else { None };
    let mut t = Table::new("timecourse.csv", &["t", "M1", "A1", "M2", "A2", "A1_matched", "A2_matched"]);
    for (time, s) in traj.times.iter().zip(&traj.states) {
        let m = matched.map(|m| m.eval(*time));
        let mut row: Vec<Cell> = std::iter::once(*time).chain(s.iter().copied()).map(Cell::from).collect();
        row.push(Cell::from(m.map(|v| v[1])));
        row.push(Cell::from(m.map(|v| v[3])));
        t.push(row);
    }
    let st = two_compartment_steady(l1, l2, &p, &cpl)?;
    let (_, last) = traj.last().expect("trajectory is non-empty");
    let sim_err = [last[0] - st.m1, last[1] - st.a1, last[2] - st.m2, last[3] - st.a2]
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));

    let levels =
        lin_space(ctx.p("growthcone.grid_lo"), ctx.p("growthcone.grid_hi"), ctx.count("growthcone.grid_points")?)?;
    let mut g = Table::new("steady_grid.csv", &["l1", "l2", "A1", "A2"]);
    let (mut max_diff, mut signs_agree) = (0.0f64, true);
    for &a in &levels {
        for &b in &levels {
            let s = two_compartment_steady(a, b, &p, &cpl)?;
            max_diff = max_diff.max((s.a1 - s.a2).abs());
            let d = s.a1 - s.a2;
            if a != b && (d == 0.0 || (d > 0.0) != (a > b)) {
                signs_agree = false;
            }
            g.push([a, b, s.a1, s.a2].map(Cell::from));
        }
    }
    let mut out = Output::default();
    out.metric("A1_steady", st.a1);
    out.metric("A2_steady", st.a2);
    out.metric("sim_vs_closed_form", sim_err);
    out.metric("grid_max_abs_gradient", max_diff);
    out.metric("gradient_bound", 2.0 * p.m / p.r);
    out.flag("grid_signs_follow_ligand", signs_agree);
    if let Some(m) = matched {
        out.metric("matched_validity_ratio", m.validity_ratio);
    }
    out.tables.extend([t, g]);
    Ok(out)
}

fn rd_defaults(_: &str) -> Vec<(&'static str, f64)> {
    let c = RdConfig::default();
    let mut v = adaptation_keys();
    v.extend([
        ("growthcone.D1", c.d1),
        ("growthcone.D2", c.d2),
        ("growthcone.n", c.grid.n as f64),
        ("growthcone.length", c.length()),
        ("growthcone.dt", c.grid.dt),
        ("growthcone.t_end", c.t_end),
        ("growthcone.level", 0.5),
        ("growthcone.left", 0.5),
        ("growthcone.right", 1.0),
        ("growthcone.centre", 1.0),
        ("growthcone.edge", 0.8),
    ]);
    v
}

/// Interior nodes where the centred differences of `a` and `l` disagree in
/// sign (nodes where `l` is flat are skipped).
fn non_comonotone_nodes(l: &[f64], a: &[f64]) -> usize {
    (1..l.len() - 1)
        .filter(|&i| {
            let (dl, da) = (l[i + 1] - l[i - 1], a[i + 1] - a[i - 1]);
            dl.abs() > 1e-12 && dl * da <= 0.0
        })
        .count()
}

fn rd(ctx: &Ctx) -> Result<Output> {
    let p = adaptation_params(ctx);
    let cfg = RdConfig {
        d1: ctx.p("growthcone.D1"),
        d2: ctx.p("growthcone.D2"),
        grid: Grid1D::spanning(ctx.count("growthcone.n")?, ctx.p("growthcone.length"), ctx.p("growthcone.dt"))?,
        t_end: ctx.p("growthcone.t_end"),
        sample_every: usize::MAX,
    };
    let profile = match ctx.variant {
        "uniform" => LigandProfile::Uniform { level: ctx.p("growthcone.level") },
        "quadratic" => LigandProfile::Quadratic { centre: ctx.p("growthcone.centre"), edge: ctx.p("growthcone.edge") },
        _ => LigandProfile::Linear { left: ctx.p("growthcone.left"), right: ctx.p("growthcone.right") },
    };
    let ligand = profile.sample(&cfg.grid);
    let series = reaction_diffusion_simulate(&ligand, &p, &cfg)?;
    let f = series.last();
    let mut t = Table::new("final.csv", &["x", "l", "M", "A"]);
    for i in 0..cfg.grid.n {
        t.push([cfg.grid.x(i), ligand[i], f.m[i], f.a[i]].map(Cell::from));
    }
    let dev = f.a.iter().fold(0.0f64, |acc, a| acc.max((a - p.a_star()).abs()));
    let mut out = Output::default();
    out.metric("t_final", *series.times.last().expect("series is non-empty"));
    out.metric("max_dev_from_baseline", dev);
    out.metric("A_min", f.a.iter().cloned().fold(f64::MAX, f64::min));
    out.metric("A_max", f.a.iter().cloned().fold(f64::MIN, f64::max));
    out.metric("non_comonotone_nodes", non_comonotone_nodes(&ligand, &f.a) as f64);
    out.tables.push(t);
    Ok(out)
}

fn ca_switch_defaults(_: &str) -> Vec<(&'static str, f64)> {
    let sp = SwitchRateParams::default();
    let mut v = adaptation_keys();
    v.extend(coupling_keys());
    v.extend([
        ("growthcone.a", sp.a),
        ("growthcone.b", sp.b),
        ("growthcone.c", sp.c),
        ("growthcone.Ca_b", sp.ca_b),
        ("growthcone.Ca", 0.4),
        ("growthcone.l1", 1.0),
        ("growthcone.l2", 0.5),
        ("growthcone.Ca_lo", 0.05),
        ("growthcone.Ca_hi", 0.6),
        ("growthcone.points", 12.0),
    ]);
    v
}

fn ca_switch(ctx: &Ctx) -> Result<Output> {
    let p = adaptation_params(ctx);
    let cpl = coupling(ctx);
    let sp = SwitchRateParams {
        a: ctx.p("growthcone.a"),
        b: ctx.p("growthcone.b"),
        c: ctx.p("growthcone.c"),
        ca_b: ctx.p("growthcone.Ca_b"),
    };
    sp.validate()?;
    let (l1, l2) = (ctx.p("growthcone.l1"), ctx.p("growthcone.l2"));
    let steady_at = |ca: f64| {
        let (k1, k2) = (calcium_switch_rate(l1, ca, &sp), calcium_switch_rate(l2, ca, &sp));
        two_compartment_steady_ka(k1, k2, &p, &cpl).map(|s| (k1, k2, s))
    };
    let mut t = Table::new("calcium_scan.csv", &["Ca", "ka1", "ka2", "A1", "A2"]);
    for ca in lin_space(ctx.p("growthcone.Ca_lo"), ctx.p("growthcone.Ca_hi"), ctx.count("growthcone.points")?)? {
        let (k1, k2, s) = steady_at(ca)?;
        t.push([ca, k1, k2, s.a1, s.a2].map(Cell::from));
    }
    let (_, _, s) = steady_at(ctx.p("growthcone.Ca"))?;
    let mut out = Output::default();
    out.metric("A1_minus_A2", s.a1 - s.a2);
    out.metric("gradient_sign", (s.a1 - s.a2).signum());
    out.tables.push(t);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comonotone_counting() {
        let l = [1.0, 2.0, 3.0, 2.0, 1.0];
        assert_eq!(non_comonotone_nodes(&l, &[0.1, 0.2, 0.3, 0.2, 0.1]), 0);
        assert_eq!(non_comonotone_nodes(&l, &[0.3, 0.2, 0.1, 0.2, 0.3]), 2);
    }
}
