use crate::error::{CliError, Result};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Num(v as f64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl Cell {
    /// Shortest string that parses back to the same `f64`.
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(file: impl Into<String>, header: &[&'static str]) -> Self {
        Table { file: file.into(), header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = Cell>>(&mut self, row: I) {
        let row: Vec<Cell> = row.into_iter().collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(&self.file);
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush().map_err(|source| CliError::Io { path, source })?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub experiment: String,
    pub variant: Option<String>,
    pub description: String,
    pub seed: u64,
    pub wall_time_s: f64,
    /// finite metrics in the order the experiment produced them
    pub metrics: Vec<(String, f64)>,
    /// metrics that came out non-finite (e.g. a ratio against an empty region)
    pub dropped: Vec<String>,
    /// full parameter set actually used
    pub config: Vec<(String, f64)>,
    pub files: Vec<String>,
}

impl RunSummary {
    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "experiment = {}", self.experiment);
        if let Some(v) = &self.variant {
            let _ = writeln!(s, "variant = {v}");
        }
        let _ = writeln!(s, "description = {}", self.description);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "wall_time_s = {:.3}", self.wall_time_s);
        let _ = writeln!(s, "files = {}", self.files.join(" "));
        let _ = writeln!(s, "\n[metrics]");
        for (k, v) in &self.metrics {
            let _ = writeln!(s, "{k} = {v}");
        }
        for k in &self.dropped {
            let _ = writeln!(s, "# {k} is not finite");
        }
        let _ = writeln!(s, "\n[config]");
        for (k, v) in &self.config {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join("summary.txt");
        std::fs::write(&path, self.render()).map_err(|source| CliError::Io { path, source })
    }
}
