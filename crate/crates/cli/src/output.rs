//! Rendering of reports as JSON, aligned text tables or CSV.

use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
    Csv,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self { title: None, headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn titled(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        if let Some(t) = &self.title {
            out.push_str(t);
            out.push('\n');
        }
        out.push_str(&line(&self.headers));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.headers).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }
}

/// A report with a stable JSON form and a tabular view for humans.
pub trait Report: Serialize {
    fn tables(&self) -> Vec<Table>;
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a C,
    report: &'a R,
}

pub const TOOL: &str = "stratcx";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn render<C: Serialize, R: Report>(
    command: &str,
    config: &C,
    report: &R,
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let envelope = Envelope { tool: TOOL, version: VERSION, command, config, report };
            let mut s = serde_json::to_string_pretty(&envelope).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Table | Format::Csv => {
            let config = serde_json::to_string(config).map_err(|e| CliError::Io(e.to_string()))?;
            let mut out = format!("# {TOOL} {VERSION} {command} {config}\n");
            for (i, t) in report.tables().iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                if format == Format::Table {
                    out.push_str(&t.text());
                } else {
                    if let Some(title) = &t.title {
                        out.push_str(&format!("# {title}\n"));
                    }
                    out.push_str(&t.csv()?);
                }
            }
            Ok(out)
        }
    }
}

/// `(a,b,c)` for a slice of integers.
pub fn tuple<T: std::fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}
