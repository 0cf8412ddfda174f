//! Registered experiments. Each declares its parameter keys with defaults;
//! anything else in the configuration is rejected.

mod aerotaxis;
mod growthcone;
mod kelvin;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::output::{RunSummary, Table};
use std::time::Instant;

pub struct Experiment {
    pub name: &'static str,
    /// first entry is the default; empty when the experiment has none
    pub variants: &'static [&'static str],
    pub description: &'static str,
    defaults: fn(&str) -> Vec<(&'static str, f64)>,
    body: fn(&Ctx) -> Result<Output>,
}

impl Experiment {
    pub fn defaults(&self, variant: &str) -> Vec<(&'static str, f64)> {
        (self.defaults)(variant)
    }
}

pub struct Ctx<'a> {
    pub variant: &'a str,
    pub params: &'a Params,
    pub seed: u64,
}

impl Ctx<'_> {
    pub fn p(&self, key: &str) -> f64 {
        self.params.get(key)
    }

    pub fn count(&self, key: &str) -> Result<usize> {
        self.params.count(key)
    }
}

#[derive(Debug, Default)]
pub struct Output {
    pub tables: Vec<Table>,
    pub metrics: Vec<(String, f64)>,
}

impl Output {
    pub fn metric(&mut self, name: impl Into<String>, v: f64) {
        self.metrics.push((name.into(), v));
    }

    pub fn flag(&mut self, name: impl Into<String>, v: bool) {
        self.metric(name, if v { 1.0 } else { 0.0 });
    }
}

/// Defaults merged with overrides, in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    values: Vec<(&'static str, f64)>,
}

impl Params {
    pub fn get(&self, key: &str) -> f64 {
        self.values
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("experiment reads undeclared key {key}"))
    }

    pub fn count(&self, key: &str) -> Result<usize> {
        let v = self.get(key);
        if v < 0.0 || v.fract() != 0.0 {
            return Err(CliError::usage(format!("{key} must be a non-negative integer, got {v}")));
        }
        Ok(v as usize)
    }

    pub fn entries(&self) -> &[(&'static str, f64)] {
        &self.values
    }
}

pub fn registry() -> Vec<Experiment> {
    let mut r = aerotaxis::experiments();
    r.extend(growthcone::experiments());
    r.extend(kelvin::experiments());
    r
}

pub fn experiment_names() -> Vec<&'static str> {
    registry().iter().map(|e| e.name).collect()
}

fn resolve<'r>(reg: &'r [Experiment], cfg: &ExperimentConfig) -> Result<(&'r Experiment, String, Params)> {
    let Some(exp) = reg.iter().find(|e| e.name == cfg.experiment) else {
        let names: Vec<_> = reg.iter().map(|e| e.name).collect();
        return Err(CliError::usage(format!(
            "unknown experiment '{}'; registered: {}",
            cfg.experiment,
            names.join(", ")
        )));
    };
    let variant = match (&cfg.variant, exp.variants.first()) {
        (None, Some(first)) => first.to_string(),
        (None, None) => String::new(),
        (Some(v), _) if exp.variants.contains(&v.as_str()) => v.clone(),
        (Some(v), _) if exp.variants.is_empty() => {
            return Err(CliError::usage(format!("{} takes no variant, got '{v}'", exp.name)))
        }
        (Some(v), _) => {
            return Err(CliError::usage(format!(
                "unknown variant '{v}' for {}; choose one of {}",
                exp.name,
                exp.variants.join("|")
            )))
        }
    };
    let mut values = exp.defaults(&variant);
    for (k, v) in &cfg.params {
        match values.iter_mut().find(|(d, _)| d == k) {
            Some(slot) => slot.1 = *v,
            None => {
                let keys: Vec<_> = values.iter().map(|(k, _)| *k).collect();
                return Err(CliError::usage(format!(
                    "unknown key '{k}' for {}; accepted keys: {}",
                    exp.name,
                    keys.join(", ")
                )));
            }
        }
    }
    Ok((exp, variant, Params { values }))
}

/// Run without touching the filesystem.
pub fn run_in_memory(cfg: &ExperimentConfig) -> Result<(RunSummary, Vec<Table>)> {
    let reg = registry();
    let (exp, variant, params) = resolve(&reg, cfg)?;
    let start = Instant::now();
    let out = (exp.body)(&Ctx { variant: &variant, params: &params, seed: cfg.seed })?;
    let (metrics, dropped): (Vec<_>, Vec<_>) = out.metrics.into_iter().partition(|(_, v)| v.is_finite());
    let summary = RunSummary {
        experiment: exp.name.to_string(),
        variant: (!variant.is_empty()).then_some(variant),
        description: exp.description.to_string(),
        seed: cfg.seed,
        wall_time_s: start.elapsed().as_secs_f64(),
        metrics,
        dropped: dropped.into_iter().map(|(k, _)| k).collect(),
        config: params.values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        files: out.tables.iter().map(|t| t.file.clone()).collect(),
    };
    Ok((summary, out.tables))
}

/// Run and write every table plus `summary.txt` into `cfg.output_dir`.
pub fn run(cfg: &ExperimentConfig) -> Result<RunSummary> {
    // validate names and keys before creating anything on disk
    resolve(&registry(), cfg)?;
    let (summary, tables) = run_in_memory(cfg)?;
    std::fs::create_dir_all(&cfg.output_dir).map_err(|source| CliError::Io { path: cfg.output_dir.clone(), source })?;
    for t in &tables {
        t.write(&cfg.output_dir)?;
    }
    summary.write(&cfg.output_dir)?;
    Ok(summary)
}

/// `points` values from `lo` to `hi`, evenly spaced on a log scale.
pub(crate) fn log_space(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo) || points == 0 {
        return Err(CliError::usage(format!("need 0 < lo <= hi and points >= 1, got {lo}, {hi}, {points}")));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..points)
        .map(|i| if i + 1 == points { hi } else { (a + (b - a) * i as f64 / (points - 1) as f64).exp() })
        .collect())
}

pub(crate) fn lin_space(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(hi >= lo) || points == 0 {
        return Err(CliError::usage(format!("need lo <= hi and points >= 1, got {lo}, {hi}, {points}")));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect())
}
