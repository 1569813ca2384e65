//! Tabular output in CSV, JSON lines and markdown, and the table builders
//! used by the command line.

use std::fmt;

use serde_json::{Map, Value as Json};

use crate::compare::{Comparison, CrossTable, KindTable, Metrics, RuleRecovery, Semantics};
use crate::error::{Error, Result};
use crate::model::{CounterpointModel, Variant, Verdict, VerdictKind};
use crate::reduction::{ReducedLabel, ReducedProgression, ReducedSummary};
use crate::strict::{RuleLabel, StrictProgression, StrictSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Csv,
    Json,
    Md,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            "md" => Some(Format::Md),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "jsonl",
            Format::Md => "md",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Cell::Int(n) => Some(*n),
            Cell::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Cell::Int(n)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// A titled table with a fixed column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    /// Values of one column.
    pub fn values(&self, name: &str) -> Result<Vec<&Cell>> {
        let i = self
            .column(name)
            .ok_or_else(|| Error::Config(format!("no column {name:?}")))?;
        Ok(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json_lines()),
            Format::Md => Ok(self.to_markdown()),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.headers).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::as_text)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let obj: Map<String, Json> = self
                .headers
                .iter()
                .zip(row)
                .map(|(h, c)| {
                    let v = match c {
                        Cell::Int(n) => Json::from(*n),
                        Cell::Text(s) => Json::from(s.as_str()),
                    };
                    (h.clone(), v)
                })
                .collect();
            out.push_str(&Json::Object(obj).to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&format!("**{}**\n\n", self.title));
        }
        out.push_str(&format!("| {} |\n", self.headers.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(self.headers.len())));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::as_text).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        out
    }

    /// Parses CSV output; cells that parse as integers become [`Cell::Int`].
    pub fn from_csv(title: &str, text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let err = |e: csv::Error| Error::Config(format!("malformed csv: {e}"));
        let headers: Vec<String> = r.headers().map_err(err)?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(err)?;
            rows.push(
                rec.iter()
                    .map(|s| s.parse::<i64>().map_or_else(|_| Cell::from(s), Cell::Int))
                    .collect(),
            );
        }
        Ok(Table {
            title: title.to_string(),
            headers,
            rows,
        })
    }

    /// Parses JSON lines output; the key order of the first line fixes the
    /// headers.
    pub fn from_json_lines(title: &str, text: &str) -> Result<Self> {
        let mut headers: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let err = |m: String| Error::Config(format!("line {}: {m}", i + 1));
            let obj: Map<String, Json> = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
            let keys: Vec<String> = obj.keys().cloned().collect();
            match &headers {
                None => headers = Some(keys),
                Some(h) if *h != keys => return Err(err("inconsistent keys".into())),
                Some(_) => {}
            }
            let row = obj
                .into_values()
                .map(|v| match v {
                    Json::Number(n) => n.as_i64().map(Cell::Int).ok_or_else(|| err(format!("non-integer {n}"))),
                    Json::String(s) => Ok(Cell::Text(s)),
                    other => Err(err(format!("unexpected value {other}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(Table {
            title: title.to_string(),
            headers: headers.unwrap_or_default(),
            rows,
        })
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn strict_rows(rows: &[(StrictProgression, RuleLabel)]) -> Table {
    let mut t = Table::new(
        "Strict style progressions",
        &["c", "d", "c_next", "d_next", "category", "kind", "matched"],
    );
    for (p, l) in rows {
        t.push(vec![
            p.c.into(),
            p.d.into(),
            p.c_next.into(),
            p.d_next.into(),
            l.category.as_str().into(),
            l.kind_str().into(),
            join(l.matched.iter().map(|k| k.as_str())).into(),
        ]);
    }
    t
}

pub fn strict_summary(s: &StrictSummary) -> Table {
    let mut t = Table::new("Strict style progressions by type", &["type", "count"]);
    t.push(vec!["all".into(), s.total.into()]);
    t.push(vec!["inadmissible".into(), s.inadmissible.into()]);
    t.push(vec!["bad".into(), s.bad.into()]);
    t.push(vec!["good".into(), s.good.into()]);
    for (name, n) in &s.kinds {
        t.push(vec![name.as_str().into(), (*n).into()]);
    }
    t
}

pub fn reduced_rows(rows: &[(ReducedProgression, ReducedLabel)]) -> Table {
    let mut t = Table::new(
        "Reduced strict style progressions",
        &["k", "c_next", "k_next", "category", "refined", "kind", "matched"],
    );
    for (p, l) in rows {
        t.push(vec![
            p.k().into(),
            p.c_next().into(),
            p.k_next().into(),
            l.category.as_str().into(),
            l.refined_str().into(),
            l.kind_str().into(),
            join(l.matched.iter().map(|k| k.as_str())).into(),
        ]);
    }
    t
}

pub fn reduced_summary(s: &ReducedSummary) -> Table {
    let mut t = Table::new("Reduced strict style progressions by type", &["type", "count"]);
    t.push(vec!["all".into(), s.total.into()]);
    t.push(vec!["inadmissible".into(), s.inadmissible.into()]);
    t.push(vec!["bad".into(), s.bad.into()]);
    t.push(vec!["good".into(), s.good.into()]);
    for (name, n) in s.kinds.iter().chain(&s.refined) {
        t.push(vec![name.as_str().into(), (*n).into()]);
    }
    t
}

/// One row per contrapuntal symmetry.
pub fn model_entries(model: &CounterpointModel, only: Option<crate::Residue>) -> Table {
    let mut t = Table::new(
        format!("Contrapuntal symmetries ({})", model.variant()),
        &["k", "symmetry", "score", "successor_count", "successors"],
    );
    for e in model.entries().filter(|e| only.is_none_or(|k| k == e.interval)) {
        for (h, set) in e.symmetries.iter().zip(&e.successor_sets) {
            t.push(vec![
                e.interval.value().into(),
                h.to_string().into(),
                e.score.into(),
                set.len().into(),
                join(set.iter()).into(),
            ]);
        }
    }
    t
}

pub fn verdict_rows(variant: Variant, rows: &[(ReducedProgression, Verdict)]) -> Table {
    let mut t = Table::new(
        format!("Verdicts ({variant})"),
        &["k", "c_next", "k_next", "verdict", "witnesses"],
    );
    for (p, v) in rows {
        t.push(vec![
            p.k().into(),
            p.c_next().into(),
            p.k_next().into(),
            v.value.as_str().into(),
            join(&v.witnesses).into(),
        ]);
    }
    t
}

pub fn verdict_summary(variant: Variant, totals: [usize; 3]) -> Table {
    let mut t = Table::new(format!("Verdict totals ({variant})"), &["verdict", "count"]);
    for (v, n) in VerdictKind::ALL.iter().zip(totals) {
        t.push(vec![v.as_str().into(), n.into()]);
    }
    t
}

/// Verdict rows that are empty for every column are left out, as in print.
fn verdict_labels(has_row: impl Fn(VerdictKind) -> bool, repetitions_only: bool) -> Vec<(VerdictKind, &'static str)> {
    VerdictKind::ALL
        .into_iter()
        .filter(|&v| v != VerdictKind::NonPolarized || has_row(v))
        .map(|v| {
            let label = match v {
                VerdictKind::NonPolarized if repetitions_only => "repetitions",
                other => other.as_str(),
            };
            (v, label)
        })
        .collect()
}

fn non_polarized_are_repetitions(cmp: Option<&Comparison>) -> bool {
    cmp.is_some_and(|c| {
        c.rows()
            .iter()
            .filter(|r| r.verdict.value == VerdictKind::NonPolarized)
            .all(|r| r.progression.is_repetition())
    })
}

pub fn cross_table(t: &CrossTable, cmp: Option<&Comparison>) -> Table {
    let mut headers = vec!["verdict"];
    headers.extend(t.semantics.columns().iter().map(|c| c.as_str()));
    let mut out = Table::new(
        format!("Reduced style versus verdicts ({}, {} semantics)", t.variant, t.semantics),
        &headers,
    );
    let labels = verdict_labels(|v| t.row_total(v) > 0, non_polarized_are_repetitions(cmp));
    for (v, label) in labels {
        let mut row: Vec<Cell> = vec![label.into()];
        row.extend(t.row(v).into_iter().map(Cell::from));
        out.push(row);
    }
    out
}

pub fn kind_table(k: &KindTable) -> Table {
    let mut headers = vec!["verdict"];
    headers.extend(KindTable::KINDS.iter().map(|k| k.as_str()));
    let mut out = Table::new(format!("Verdicts by kind ({})", k.variant), &headers);
    for (v, label) in verdict_labels(|v| k.row(v).iter().any(|&n| n > 0), false) {
        let mut row: Vec<Cell> = vec![label.into()];
        row.extend(k.row(v).into_iter().map(Cell::from));
        out.push(row);
    }
    out
}

pub fn metrics(rows: &[(Variant, Semantics, Metrics)]) -> Table {
    let mut t = Table::new("Matches and mismatches", &["variant", "semantics", "matches", "mismatches"]);
    for (v, s, m) in rows {
        t.push(vec![v.as_str().into(), s.as_str().into(), m.matches.into(), m.mismatches.into()]);
    }
    t
}

pub fn rule_recovery(r: &RuleRecovery) -> Table {
    let mut t = Table::new(format!("Rule recovery ({})", r.variant), &["finding", "values"]);
    t.push(vec!["parallel-prohibited".into(), join(&r.parallel_prohibited).into()]);
    t.push(vec!["forbidden-unison-skips".into(), join(&r.forbidden_unison_skips).into()]);
    t.push(vec!["non-polarized-unison-skips".into(), join(&r.non_polarized_unison_skips).into()]);
    t
}
