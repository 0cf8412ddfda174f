//! Flat `key = value` configuration. Values are numbers; `#` starts a
//! comment. Later assignments override earlier ones (with a warning when
//! the same source repeats a key), and `--set` flags override the file.

use crate::error::{CliError, Result};
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub variant: Option<String>,
    /// overrides only; defaults come from the experiment
    pub params: BTreeMap<String, f64>,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(experiment: impl Into<String>) -> Self {
        ExperimentConfig {
            experiment: experiment.into(),
            variant: None,
            params: BTreeMap::new(),
            output_dir: PathBuf::from("out"),
            seed: 0,
        }
    }

    pub fn with_variant(mut self, v: impl Into<String>) -> Self {
        self.variant = Some(v.into());
        self
    }

    pub fn set(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }
}

/// Parsed assignments in order, plus warnings about duplicates.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Assignments {
    pub values: Vec<(String, f64)>,
    pub warnings: Vec<String>,
}

fn parse_assignment(text: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = text.split_once('=').ok_or_else(|| format!("expected `key = value`, got `{text}`"))?;
    let key = k.trim();
    if key.is_empty() || key.contains(char::is_whitespace) {
        return Err(format!("invalid key `{key}`"));
    }
    let raw = v.trim();
    let value: f64 = raw.parse().map_err(|_| format!("value for `{key}` is not a number: `{raw}`"))?;
    if !value.is_finite() {
        return Err(format!("value for `{key}` must be finite"));
    }
    Ok((key.to_string(), value))
}

pub fn parse_config_text(text: &str, source_name: &str) -> Result<Assignments> {
    let mut out = Assignments::default();
    let mut seen = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = parse_assignment(line).map_err(|msg| CliError::Config {
            source_name: source_name.to_string(),
            line: i + 1,
            msg,
        })?;
        if let Some(prev) = seen.insert(k.clone(), i + 1) {
            out.warnings.push(format!("{source_name}:{}: `{k}` repeats line {prev}; the later value wins", i + 1));
        }
        out.values.push((k, v));
    }
    Ok(out)
}

pub fn parse_set_flags(flags: &[String]) -> Result<Assignments> {
    let mut out = Assignments::default();
    let mut seen = BTreeMap::new();
    for (i, f) in flags.iter().enumerate() {
        let (k, v) = parse_assignment(f).map_err(|msg| CliError::usage(format!("--set {f}: {msg}")))?;
        if seen.insert(k.clone(), i).is_some() {
            out.warnings.push(format!("--set `{k}` given more than once; the last value wins"));
        }
        out.values.push((k, v));
    }
    Ok(out)
}

/// Fold file and flag assignments into `cfg`; `seed` is accepted as a key.
pub fn apply_assignments(cfg: &mut ExperimentConfig, a: &Assignments) -> Result<()> {
    for (k, v) in &a.values {
        if k == "seed" {
            if *v < 0.0 || v.fract() != 0.0 || *v > u64::MAX as f64 {
                return Err(CliError::usage(format!("seed must be a non-negative integer, got {v}")));
            }
            cfg.seed = *v as u64;
        } else {
            cfg.params.insert(k.clone(), *v);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file() {
        assert_eq!(parse_config_text("", "f").unwrap(), Assignments::default());
        assert!(parse_config_text("# only a comment\n\n", "f").unwrap().values.is_empty());
    }

    #[test]
    fn duplicates_warn_and_last_wins() {
        let a = parse_config_text("kelvin.mu02 = 5\nkelvin.mu02 = 500 # override\n", "f").unwrap();
        assert_eq!(a.warnings.len(), 1);
        let mut cfg = ExperimentConfig::new("kelvin-sweep");
        apply_assignments(&mut cfg, &a).unwrap();
        assert_eq!(cfg.params["kelvin.mu02"], 500.0);
    }

    #[test]
    fn malformed_line_reports_number() {
        let e = parse_config_text("a = 1\nnonsense\n", "cfg.txt").unwrap_err();
        assert_eq!(e.to_string(), "cfg.txt:2: expected `key = value`, got `nonsense`");
        let e = parse_config_text("a = one", "cfg.txt").unwrap_err();
        assert!(e.to_string().contains("not a number"));
    }

    #[test]
    fn seed_key() {
        let mut cfg = ExperimentConfig::new("x");
        apply_assignments(&mut cfg, &parse_set_flags(&["seed=42".into()]).unwrap()).unwrap();
        assert_eq!(cfg.seed, 42);
        assert!(apply_assignments(&mut cfg, &parse_set_flags(&["seed=1.5".into()]).unwrap()).is_err());
    }
}
