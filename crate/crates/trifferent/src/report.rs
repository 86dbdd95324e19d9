//! JSON documents written by the CLI. Every top-level document carries
//! `"schema": 1`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use trifferent_core::bounds::{BoundReport, ExactTable};
use trifferent_core::search::{SearchCertificate, SearchStatus};

use crate::format::TriffFile;

pub const SCHEMA: u32 = 1;

/// Wraps a command's result with the schema version and its resolved config.
pub fn envelope(command: &str, config: &impl Serialize, body: Value) -> Value {
    let mut doc = json!({
        "schema": SCHEMA,
        "command": command,
        "config": serde_json::to_value(config).expect("config serializes"),
    });
    let map = doc.as_object_mut().expect("object");
    if let Value::Object(body) = body {
        map.extend(body);
    }
    doc
}

/// Non-finite floats become `null`.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntryDto {
    pub name: String,
    pub value: Option<f64>,
    pub log2_value: f64,
    pub valid: bool,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateDto {
    pub label: String,
    pub n: usize,
    pub size: usize,
    pub rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReportDto {
    pub n: u64,
    pub entries: Vec<BoundEntryDto>,
    pub best: String,
    #[serde(rename = "crossover_N0")]
    pub crossover_n0: Option<u64>,
    pub rates: Vec<RateDto>,
}

impl From<&BoundReport> for BoundReportDto {
    fn from(r: &BoundReport) -> Self {
        Self {
            n: r.n,
            entries: r
                .entries
                .iter()
                .map(|e| BoundEntryDto {
                    name: e.name.clone(),
                    value: finite(e.value),
                    log2_value: e.log2_value,
                    valid: e.valid,
                    provenance: e.provenance.clone(),
                })
                .collect(),
            best: r.best.clone(),
            crossover_n0: r.crossover_n0,
            rates: r
                .rates
                .iter()
                .map(|x| RateDto { label: x.label.clone(), n: x.n, size: x.size, rate: x.rate })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDto {
    pub n: usize,
    /// `null` for unrestricted search.
    pub r: Option<usize>,
    pub best_size: usize,
    /// `optimal` or `lower-bound`.
    pub status: String,
    pub nodes_explored: u64,
    pub oracle_checked: bool,
    /// Hex string; the hash does not fit a JSON double.
    pub config_hash: String,
    /// The code in `.triff` text.
    pub best_code: String,
}

pub fn status_name(status: SearchStatus) -> &'static str {
    match status {
        SearchStatus::Optimal => "optimal",
        SearchStatus::LowerBound => "lower-bound",
    }
}

impl From<&SearchCertificate> for CertificateDto {
    fn from(c: &SearchCertificate) -> Self {
        let file = TriffFile::new(c.best_code.clone());
        Self {
            n: c.n,
            r: c.r,
            best_size: c.best_size,
            status: status_name(c.status).to_string(),
            nodes_explored: c.nodes_explored,
            oracle_checked: c.oracle_checked,
            config_hash: format!("{:016x}", c.config_hash),
            best_code: file.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableEntry {
    pub n: u64,
    /// `null` for `T(n)`, else the `r` of `T_b(n, r)`.
    pub r: Option<u64>,
    pub value: u64,
}

/// Exact search values accumulated across runs and read by `bound report`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultsTable {
    pub schema: u32,
    pub entries: Vec<TableEntry>,
}

impl Default for ResultsTable {
    fn default() -> Self {
        Self { schema: SCHEMA, entries: Vec::new() }
    }
}

impl ResultsTable {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        let table: ResultsTable = serde_json::from_str(text)?;
        if table.schema != SCHEMA {
            return Err(serde::de::Error::custom(format!("unsupported schema {}", table.schema)));
        }
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    /// Records an optimal certificate, replacing any earlier value for the
    /// same `(n, r)`. Returns `false` for lower bounds, which are not stored.
    pub fn record(&mut self, cert: &SearchCertificate) -> bool {
        if cert.status != SearchStatus::Optimal {
            return false;
        }
        let entry = TableEntry { n: cert.n as u64, r: cert.r.map(|r| r as u64), value: cert.best_size as u64 };
        self.entries.retain(|e| (e.n, e.r) != (entry.n, entry.r));
        self.entries.push(entry);
        self.entries.sort();
        true
    }

    pub fn to_exact_table(&self) -> ExactTable {
        let mut t = ExactTable::new();
        for e in &self.entries {
            t.insert(e.n, e.r, e.value);
        }
        t
    }
}
