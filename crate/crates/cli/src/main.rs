use biosim_cli::config::{apply_assignments, parse_config_text, parse_set_flags};
use biosim_cli::error::{CliError, Result};
use biosim_cli::experiments::registry;
use biosim_cli::{run, ExperimentConfig};
use clap::Parser;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

/// Run a registered experiment and write CSV tables plus summary.txt.
#[derive(Debug, Parser)]
#[command(name = "biosim", version)]
struct Args {
    /// experiment name, or `list`
    experiment: String,
    /// variant, e.g. `II` for kelvin-network
    variant: Option<String>,
    /// file of `key = value` lines
    #[arg(long)]
    config: Option<PathBuf>,
    /// override one key; repeatable, wins over --config
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
}

// stdout may be a closed pipe (`biosim list | head`); that is not an error
fn list() {
    let mut out = std::io::stdout().lock();
    for e in registry() {
        let v = if e.variants.is_empty() { String::new() } else { format!(" [{}]", e.variants.join("|")) };
        let _ = writeln!(out, "{}{v}\n    {}", e.name, e.description);
    }
}

fn execute(args: Args) -> Result<()> {
    if args.experiment == "list" {
        list();
        return Ok(());
    }
    let mut cfg = ExperimentConfig::new(args.experiment);
    cfg.variant = args.variant;
    cfg.output_dir = args.out;
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        let a = parse_config_text(&text, &path.display().to_string())?;
        a.warnings.iter().for_each(|w| eprintln!("warning: {w}"));
        apply_assignments(&mut cfg, &a)?;
    }
    let flags = parse_set_flags(&args.set)?;
    flags.warnings.iter().for_each(|w| eprintln!("warning: {w}"));
    apply_assignments(&mut cfg, &flags)?;
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    let summary = run(&cfg)?;
    let mut out = std::io::stdout().lock();
    for (k, v) in &summary.metrics {
        let _ = writeln!(out, "{k} = {v}");
    }
    for k in &summary.dropped {
        eprintln!("warning: metric {k} is not finite");
    }
    let _ = writeln!(out, "wrote {} to {}", summary.files.join(", "), cfg.output_dir.display());
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("BIOSIM_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
