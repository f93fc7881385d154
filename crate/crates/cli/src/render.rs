//! Output model and the three renderers. Every integer is emitted as a
//! decimal string so that values beyond 64 bits survive JSON round trips.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use qsdesign::designs::{Condition, DesignParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionOut {
    pub label: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl From<&Condition> for ConditionOut {
    fn from(c: &Condition) -> ConditionOut {
        ConditionOut {
            label: c.label.clone(),
            passed: c.passed,
            witness: c.witness.as_ref().map(|w| w.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamsOut {
    pub b: String,
    pub v: String,
    pub r: String,
    pub k: String,
    pub lambda: String,
    pub lambda1: String,
    pub lambda2: String,
    pub mu: String,
    pub nu: String,
}

impl From<&DesignParams> for ParamsOut {
    fn from(d: &DesignParams) -> ParamsOut {
        ParamsOut {
            b: d.b.to_string(),
            v: d.v.to_string(),
            r: d.r.to_string(),
            k: d.k.to_string(),
            lambda: d.lambda.to_string(),
            lambda1: d.lambda1.to_string(),
            lambda2: d.lambda2.to_string(),
            mu: d.mu().to_string(),
            nu: d.nu().to_string(),
        }
    }
}

impl ParamsOut {
    fn fields(&self) -> [(&'static str, &str); 9] {
        [
            ("b", &self.b),
            ("v", &self.v),
            ("r", &self.r),
            ("k", &self.k),
            ("lambda", &self.lambda),
            ("lambda1", &self.lambda1),
            ("lambda2", &self.lambda2),
            ("mu", &self.mu),
            ("nu", &self.nu),
        ]
    }
}

/// The common report shape for check, derive, symmetric and hilbert.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub query: BTreeMap<String, String>,
    pub verdict: String,
    pub conditions: Vec<ConditionOut>,
    /// Canonical member first, then its complement.
    pub parameters: Option<[ParamsOut; 2]>,
}

impl Report {
    pub fn new(query: BTreeMap<String, String>, verdict: impl Into<String>) -> Report {
        Report {
            query,
            verdict: verdict.into(),
            conditions: Vec::new(),
            parameters: None,
        }
    }

    pub fn with_conditions<'a>(mut self, cs: impl IntoIterator<Item = &'a Condition>) -> Report {
        self.conditions
            .extend(cs.into_iter().map(ConditionOut::from));
        self
    }

    pub fn with_params(mut self, pair: Option<&(DesignParams, DesignParams)>) -> Report {
        self.parameters = pair.map(|(a, b)| [a.into(), b.into()]);
        self
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn csv_of<T: Serialize>(header: Option<&[&str]>, rows: &[T]) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(header.is_none())
        .from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h).expect("in-memory csv");
    }
    for r in rows {
        w.serialize(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

// Left-aligned columns separated by two spaces, trailing blanks trimmed.
fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let head: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    for r in std::iter::once(&head).chain(rows) {
        let mut line = String::new();
        for (i, cell) in r.iter().enumerate() {
            let _ = write!(line, "{cell:<w$}  ", w = width[i]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct FlatRow<'a> {
    kind: &'a str,
    name: &'a str,
    value: &'a str,
    witness: &'a str,
}

pub fn render_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut rows = Vec::new();
            for (k, v) in &r.query {
                rows.push(FlatRow {
                    kind: "query",
                    name: k,
                    value: v,
                    witness: "",
                });
            }
            rows.push(FlatRow {
                kind: "verdict",
                name: "",
                value: &r.verdict,
                witness: "",
            });
            for c in &r.conditions {
                rows.push(FlatRow {
                    kind: "condition",
                    name: &c.label,
                    value: if c.passed { "pass" } else { "fail" },
                    witness: c.witness.as_deref().unwrap_or(""),
                });
            }
            let mut names = Vec::new();
            if let Some(pair) = &r.parameters {
                for (member, p) in ["canonical", "complement"].iter().zip(pair) {
                    for (field, value) in p.fields() {
                        names.push((format!("{member}.{field}"), value));
                    }
                }
            }
            for (name, value) in &names {
                rows.push(FlatRow {
                    kind: "parameter",
                    name,
                    value,
                    witness: "",
                });
            }
            csv_of(None, &rows)
        }
        Format::Table => {
            let mut out = String::new();
            let query: Vec<String> = r.query.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "query: {}", query.join(" "));
            let _ = writeln!(out, "verdict: {}", r.verdict);
            if !r.conditions.is_empty() {
                let rows: Vec<Vec<String>> = r
                    .conditions
                    .iter()
                    .map(|c| {
                        vec![
                            c.label.clone(),
                            if c.passed { "pass" } else { "FAIL" }.to_string(),
                            c.witness.clone().unwrap_or_default(),
                        ]
                    })
                    .collect();
                out.push_str(&aligned(&["condition", "result", "witness"], &rows));
            }
            if let Some(pair) = &r.parameters {
                let header = [
                    "member", "v", "k", "lambda", "b", "r", "lambda1", "lambda2", "mu", "nu",
                ];
                let rows: Vec<Vec<String>> = ["canonical", "complement"]
                    .iter()
                    .zip(pair)
                    .map(|(m, p)| {
                        vec![
                            m.to_string(),
                            p.v.clone(),
                            p.k.clone(),
                            p.lambda.clone(),
                            p.b.clone(),
                            p.r.clone(),
                            p.lambda1.clone(),
                            p.lambda2.clone(),
                            p.mu.clone(),
                            p.nu.clone(),
                        ]
                    })
                    .collect();
                out.push_str(&aligned(&header, &rows));
            }
            out
        }
    }
}

/// Rows of a fixed column set, rendered as a JSON array of objects, CSV
/// with a header, or an aligned table.
pub fn render_rows<T: Serialize>(
    header: &[&str],
    rows: &[T],
    cells: impl Fn(&T) -> Vec<String>,
    format: Format,
) -> String {
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            if rows.is_empty() {
                csv_of(Some(header), rows)
            } else {
                csv_of(None, rows)
            }
        }
        Format::Table => {
            let body: Vec<Vec<String>> = rows.iter().map(cells).collect();
            aligned(header, &body)
        }
    }
}
