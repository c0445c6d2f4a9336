//! The verification report and its JSON, CSV and Markdown renderings.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::claims::Status;
use crate::config::{Format, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub anchor: String,
    pub required: bool,
    pub status: Status,
    pub details: String,
}

/// One level `n` of the construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u32,
    pub t_n: String,
    pub y_n: String,
    pub p_n: Option<String>,
    pub primitive_set: Vec<String>,
    pub diagram_ok: Option<bool>,
    pub kernel_ok: Option<bool>,
    pub systole_bound: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub claims: Vec<ClaimRecord>,
    pub table: Vec<TableRow>,
    /// Wall-clock time per suite. Not emitted, so that reports of identical
    /// runs are byte-identical.
    #[serde(skip)]
    pub timing: Vec<(String, Duration)>,
}

impl VerificationReport {
    pub fn empty(config: RunConfig) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            config,
            claims: Vec::new(),
            table: Vec::new(),
            timing: Vec::new(),
        }
    }

    /// True when no required claim failed.
    pub fn success(&self) -> bool {
        self.claims.iter().all(|c| !c.required || c.status != Status::Fail)
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn opt_bool(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

pub const CSV_COLUMNS: [&str; 8] = [
    "n",
    "t_n",
    "y_n",
    "p_n",
    "primitive_set",
    "diagram_ok",
    "kernel_ok",
    "systole_bound",
];

fn to_csv(r: &VerificationReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for row in &r.table {
        w.write_record([
            row.n.to_string(),
            row.t_n.clone(),
            row.y_n.clone(),
            row.p_n.clone().unwrap_or_default(),
            row.primitive_set.join(" "),
            opt_bool(row.diagram_ok),
            opt_bool(row.kernel_ok),
            row.systole_bound.clone().unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn unit_power(row: &TableRow, d: i64) -> String {
    if row.y_n == "1" {
        format!("{} + √{d}", row.t_n)
    } else {
        format!("{} + {}√{d}", row.t_n, row.y_n)
    }
}

fn to_markdown(r: &VerificationReport) -> Vec<u8> {
    let c = &r.config;
    let mut s = String::new();
    s.push_str("# Verification report\n\n");
    s.push_str(&format!(
        "d = {}, depth = {}, rule = {}, seed = {}, cap = {}\n\n",
        c.d, c.depth, c.prime_rule, c.seed, c.cap
    ));
    if !r.claims.is_empty() {
        s.push_str("| claim | anchor | required | status | details |\n|---|---|---|---|---|\n");
        for cl in &r.claims {
            let status = match cl.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Recorded => "recorded",
            };
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                cl.id,
                cell(&cl.anchor),
                if cl.required { "yes" } else { "no" },
                status,
                cell(&cl.details)
            ));
        }
        s.push('\n');
    }
    if !r.table.is_empty() {
        s.push_str("| n | u^n | t_n | p_n |\n|---|---|---|---|\n");
        for row in &r.table {
            s.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                row.n,
                unit_power(row, c.d),
                row.t_n,
                row.p_n.as_deref().unwrap_or("-")
            ));
        }
        s.push('\n');
        s.push_str("| n | primitive primes of 2t_n | diagram | kernel | systole bound |\n|---|---|---|---|---|\n");
        for row in &r.table {
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                row.n,
                row.primitive_set.join(", "),
                opt_bool(row.diagram_ok),
                opt_bool(row.kernel_ok),
                row.systole_bound.as_deref().unwrap_or("")
            ));
        }
    }
    s.into_bytes()
}

/// Renders the report. Output depends only on the report contents.
pub fn emit_report(report: &VerificationReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(report).expect("report serialises");
            v.push(b'\n');
            v
        }
        Format::Csv => to_csv(report),
        Format::Markdown => to_markdown(report),
    }
}

/// A plain table for the single-purpose subcommands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Table {
            title: title.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Json => {
                let mut v = serde_json::to_vec_pretty(self).expect("table serialises");
                v.push(b'\n');
                v
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                w.into_inner().expect("in-memory flush")
            }
            Format::Markdown => {
                let mut s = format!("# {}\n\n| {} |\n|{}\n", self.title, self.columns.join(" | "), "---|".repeat(self.columns.len()));
                for r in &self.rows {
                    let r: Vec<String> = r.iter().map(|c| cell(c)).collect();
                    s.push_str(&format!("| {} |\n", r.join(" | ")));
                }
                s.into_bytes()
            }
        }
    }
}
