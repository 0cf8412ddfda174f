use biosim_core::aerotaxis::{simulate_band, steady_state, AerotaxisParams, Regime, SteadyInputs};

#[test]
fn band_run_keeps_densities_non_negative_and_mass_fixed() {
    let p = AerotaxisParams::default();
    let s = simulate_band(&p, 30.0, 200).unwrap();
    let m0 = s.fields[0].total_bacteria(p.grid.dx);
    for f in &s.fields {
        assert!(f.r.iter().chain(&f.l).all(|v| *v >= 0.0));
        assert!(f.oxygen.iter().all(|v| v.is_finite()));
        assert!(((f.total_bacteria(p.grid.dx) - m0) / m0).abs() < 1e-10);
    }
}

#[test]
fn regime_follows_meniscus_oxygen() {
    let base = SteadyInputs { k: 0.003, b0: 2.0, s: 1.0, l0: 0.2, l_min: 0.003, l_max: 0.005 };
    for (l0, regime) in [(0.2, Regime::General), (0.004, Regime::Intermediate), (0.002, Regime::Low)] {
        let sol = steady_state(&SteadyInputs { l0, ..base }).unwrap();
        assert_eq!(sol.regime, regime);
        // oxygen is pinned at the meniscus and never negative
        assert!((sol.oxygen(0.0) - l0).abs() < 1e-9 * l0.max(1.0), "{l0}: {}", sol.oxygen(0.0));
        assert!((0..=100).all(|i| sol.oxygen(i as f64 * 0.1) >= -1e-12));
    }
}
