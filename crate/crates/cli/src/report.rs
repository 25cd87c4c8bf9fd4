//! Table rendering for every command: JSON, CSV or aligned text.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A rectangular table of string cells.
pub struct Table {
    pub title: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub footer: Vec<String>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: Vec<&'static str>) -> Self {
        Self {
            title: title.into(),
            columns,
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()
    }

    pub fn write_text(&self, mut out: impl Write) -> io::Result<()> {
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r[c].len())
                    .chain([self.columns[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        if !self.title.is_empty() {
            writeln!(out, "{}", self.title)?;
        }
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for r in &self.rows {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        for f in &self.footer {
            writeln!(out, "{f}")?;
        }
        Ok(())
    }
}

pub fn emit<J: Serialize>(format: Format, table: &Table, json: &J) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, json)?;
            writeln!(out)
        }
        Format::Csv => table.write_csv(out),
        Format::Text => table.write_text(out),
    }
}

#[derive(Serialize)]
pub struct CensusRow {
    pub k: u32,
    pub count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compare_count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<&'static str>,
}

#[derive(Serialize)]
pub struct CensusReport {
    pub label: String,
    pub n: u32,
    pub rows: Vec<CensusRow>,
    pub total: String,
    pub method: String,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct SectionRow {
    pub alpha: u32,
    pub beta: u32,
    pub count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<[String; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_classes: Option<[String; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<&'static str>,
}

#[derive(Serialize)]
pub struct SectionReport {
    pub label: String,
    pub n: u32,
    pub method: String,
    pub reference: Option<String>,
    pub rows: Vec<SectionRow>,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct LatticeRow {
    pub k: u32,
    pub subgroups: String,
    pub normal: String,
    pub elementary_abelian: String,
}

#[derive(Serialize)]
pub struct LatticeReport {
    pub label: String,
    pub n: u32,
    pub rows: Vec<LatticeRow>,
    pub total: String,
    pub method: &'static str,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct QuadformRow {
    pub i: u32,
    pub e: String,
}

#[derive(Serialize)]
pub struct QuadformReport {
    pub form: String,
    pub group: Option<String>,
    pub dim: u32,
    pub rows: Vec<QuadformRow>,
    pub lattice_total: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_total: Option<String>,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct VerifyRow {
    pub label: String,
    pub n: u32,
    pub family: Option<String>,
    pub method: Option<String>,
    pub outcome: String,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerifyJson {
    pub check: String,
    pub header: &'static str,
    pub passed: bool,
    pub rows: Vec<VerifyRow>,
    pub version: &'static str,
}
