use std::path::Path;
use std::process::{Command, Output};

fn biosim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biosim")).args(args).output().expect("binary runs")
}

fn read(dir: &Path, file: &str) -> String {
    std::fs::read_to_string(dir.join(file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

#[test]
fn writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = biosim(&["kelvin-single", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "trajectory.csv");
    assert!(csv.starts_with("t,label,u,aF\n0,body,0.006666666666666667,1\n"));
    let summary = read(dir.path(), "summary.txt");
    assert!(summary.contains("experiment = kelvin-single"));
    assert!(summary.contains("tau_sigma = 150"));
    assert!(summary.contains("kelvin.mu0 = 50"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(biosim(&["no-such-experiment", "--out", d]).status.code(), Some(1));
    assert_eq!(biosim(&["kelvin-single", "--set", "kelvin.nope=1", "--out", d]).status.code(), Some(1));
    assert_eq!(biosim(&["kelvin-single", "--set", "kelvin.mu0", "--out", d]).status.code(), Some(1));
    assert_eq!(biosim(&["kelvin-network", "III", "--out", d]).status.code(), Some(1));
    assert_eq!(biosim(&[]).status.code(), Some(1));
    assert_eq!(biosim(&["--help"]).status.code(), Some(0));
    // an upwind step with v dt/dx > 1 is a numerical failure
    let cfl = biosim(&["aerotaxis-band", "--set", "aerotaxis.dt=1", "--out", d]);
    assert_eq!(cfl.status.code(), Some(2), "{}", String::from_utf8_lossy(&cfl.stderr));
}

#[test]
fn unknown_experiment_lists_registered_names() {
    let out = biosim(&["nope"]);
    let err = String::from_utf8_lossy(&out.stderr);
    for name in ["aerotaxis-band", "growthcone-rd", "kelvin-network"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(&cfg, "# base pair\nkelvin.mu02 = 500\nkelvin.points = 1\nkelvin.points = 2\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = biosim(&[
        "kelvin-sweep",
        "mu12",
        "--config",
        cfg.to_str().unwrap(),
        "--set",
        "kelvin.lo=100",
        "--set",
        "kelvin.hi=100",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("later value wins"));
    let summary = read(&out_dir, "summary.txt");
    assert!(summary.contains("kelvin.mu02 = 500"));
    assert!(summary.contains("kelvin.points = 2"));
    // springs only: F0 / (50 + 500)
    let steady: f64 = summary.lines().find_map(|l| l.strip_prefix("steady_u_first = ")).unwrap().parse().unwrap();
    assert!((steady - 1.0 / 550.0).abs() < 1e-6, "{steady}");
}

#[test]
fn malformed_config_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "kelvin.mu0 = 50\nkelvin.mu1 100\n").unwrap();
    let out = biosim(&["kelvin-single", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.cfg:2:"));
}

#[test]
fn seeded_runs_repeat_and_seeds_differ() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str, sub: &str| {
        let d = dir.path().join(sub);
        let out = biosim(&[
            "aerotaxis-montecarlo",
            "--set",
            "aerotaxis.mc.n_trials=20",
            "--seed",
            seed,
            "--out",
            d.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        read(&d, "trials.csv")
    };
    let a = run("7", "a");
    assert_eq!(a, run("7", "b"));
    assert_ne!(a, run("8", "c"));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, sub: &str| {
        let d = dir.path().join(sub);
        let out = Command::new(env!("CARGO_BIN_EXE_biosim"))
            .args(["kelvin-sweep", "eta12", "--set", "kelvin.t_end_steady=3000", "--out", d.to_str().unwrap()])
            .env("BIOSIM_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        read(&d, "sweep.csv")
    };
    assert_eq!(run("1", "one"), run("3", "three"));
}

#[test]
fn list_prints_every_experiment() {
    let out = biosim(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| !l.starts_with(' ')).count(), 14);
    assert!(text.contains("kelvin-network [I|II]"));
}
