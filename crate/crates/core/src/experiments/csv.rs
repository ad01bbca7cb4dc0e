//! Plain CSV tables: a header row, data rows, then `#` comment lines.

use std::fmt::Write as _;

use super::bench::BenchReport;
use super::delta::DeltaRecord;
use super::pde::PdeRecord;
use super::shuosher::SelfConvergenceRecord;
use super::{AlgebraicRun, ConvergenceRecord};
use crate::error::{Error, Result};

/// Scientific notation with 17 significant digits.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub comments: Vec<String>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<String> = match lines.next() {
            Some(h) => h.split(',').map(|s| s.trim().to_string()).collect(),
            None => return Err(Error::Parse("empty table".into())),
        };
        let mut table = Table { header, ..Default::default() };
        for (i, line) in lines.enumerate() {
            if let Some(c) = line.strip_prefix('#') {
                table.comments.push(c.trim().to_string());
                continue;
            }
            let row: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
            if row.len() != table.header.len() {
                return Err(Error::Parse(format!(
                    "row {} has {} fields, header has {}",
                    i + 1,
                    row.len(),
                    table.header.len()
                )));
            }
            table.rows.push(row);
        }
        Ok(table)
    }

    /// Values of a numeric column; empty cells read as `None`.
    pub fn column(&self, name: &str) -> Result<Vec<Option<f64>>> {
        let k = self
            .header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse(format!("no column {name}")))?;
        self.rows
            .iter()
            .map(|r| {
                let cell = &r[k];
                if cell.is_empty() {
                    Ok(None)
                } else {
                    cell.parse().map(Some).map_err(|_| Error::Parse(format!("bad number {cell:?} in {name}")))
                }
            })
            .collect()
    }
}

pub fn algebraic_table(run: &AlgebraicRun) -> Table {
    let mut t = Table::new(&["n", "E", "o"]);
    for ConvergenceRecord { level, error, order, .. } in &run.records {
        t.push(vec![level.to_string(), real(*error), opt(*order)]);
    }
    if let Some(level) = run.truncated_at {
        t.comments.push(format!("truncated at level {level}: error at roundoff level"));
    }
    t
}

pub fn pde_table(records: &[PdeRecord]) -> Table {
    let mut t = Table::new(&["n", "h_min", "E_l1", "o_l1", "E_linf", "o_linf"]);
    for r in records {
        t.push(vec![r.n.to_string(), real(r.h_min), real(r.l1), opt(r.l1_order), real(r.linf), opt(r.linf_order)]);
    }
    t
}

pub fn delta_table(records: &[DeltaRecord]) -> Table {
    let mut t = Table::new(&["grid", "n", "h_min", "steps", "E", "o"]);
    for r in records {
        t.push(vec![r.grid.label(), r.n.to_string(), real(r.h_min), r.steps.to_string(), real(r.error), opt(r.order)]);
    }
    t
}

pub fn self_convergence_table(records: &[SelfConvergenceRecord], reference_n: usize) -> Table {
    let mut t = Table::new(&["n", "E_l1", "o_l1"]);
    for r in records {
        t.push(vec![r.n.to_string(), real(r.l1), opt(r.order)]);
    }
    t.comments.push(format!("density against a uniform run with {reference_n} cells"));
    t
}

pub fn bench_table(report: &BenchReport) -> Table {
    let mut t = Table::new(&["R", "seconds"]);
    for r in &report.rows {
        t.push(vec![r.stencil_size.to_string(), real(r.seconds)]);
    }
    t.comments.push(format!("fitted exponent {}", real(report.exponent)));
    t
}
