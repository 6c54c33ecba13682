//! Reports and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::CliError;

pub const REPORT_SCHEMA: &str = "invtool-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// A check that is meant to fail did fail, as predicted.
    ExpectedFailure,
    Fail,
    HypothesisFailure,
    Skipped,
    Error,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::ExpectedFailure => "EXPECTED-FAILURE",
            Verdict::Fail => "FAIL",
            Verdict::HypothesisFailure => "HYPOTHESIS-FAILURE",
            Verdict::Skipped => "SKIPPED",
            Verdict::Error => "ERROR",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskReport {
    pub index: usize,
    pub task: String,
    pub target: String,
    pub truncation: Option<usize>,
    pub verdict: Verdict,
    pub message: Option<String>,
    pub fingerprint: Option<String>,
    /// Ordered key/value summary lines.
    pub facts: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub details: serde_json::Value,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl TaskReport {
    pub fn new(index: usize, task: &str, target: &str, truncation: Option<usize>) -> Self {
        TaskReport {
            index,
            task: task.into(),
            target: target.into(),
            truncation,
            verdict: Verdict::Pass,
            message: None,
            fingerprint: None,
            facts: Vec::new(),
            tables: Vec::new(),
            details: serde_json::Value::Null,
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push((key.into(), value.to_string()));
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub tasks: usize,
    pub passed: usize,
    pub expected_failures: usize,
    pub failed: usize,
    pub hypothesis_failures: usize,
    pub skipped: usize,
    pub errors: usize,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: String,
    pub scenario: String,
    pub description: String,
    pub field: String,
    pub truncation: usize,
    pub notes: Vec<String>,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(scenario: &str, description: &str, field: &str, truncation: usize) -> Self {
        Report {
            schema: REPORT_SCHEMA.into(),
            scenario: scenario.into(),
            description: description.into(),
            field: field.into(),
            truncation,
            notes: Vec::new(),
            tasks: Vec::new(),
            summary: Summary::default(),
        }
    }

    /// Tallies verdicts: exit 1 on any error, else 2 on any failed check or hypothesis,
    /// else 0.
    pub fn finish(&mut self) {
        let mut s = Summary { tasks: self.tasks.len(), ..Summary::default() };
        for t in &self.tasks {
            match t.verdict {
                Verdict::Pass => s.passed += 1,
                Verdict::ExpectedFailure => s.expected_failures += 1,
                Verdict::Fail => s.failed += 1,
                Verdict::HypothesisFailure => s.hypothesis_failures += 1,
                Verdict::Skipped => s.skipped += 1,
                Verdict::Error => s.errors += 1,
            }
        }
        s.exit_code = if s.errors > 0 {
            1
        } else if s.failed + s.hypothesis_failures > 0 {
            2
        } else {
            0
        };
        self.summary = s;
    }

    pub fn emit(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => emit_json(self),
            Format::Text => Ok(emit_text(self)),
            Format::Csv => emit_csv(self),
        }
    }
}

/// Pretty JSON with keys sorted at every level, so re-emitting a parsed report is
/// byte-identical.
fn emit_json(report: &Report) -> Result<String, CliError> {
    let value = serde_json::to_value(report).map_err(|e| CliError::Output(e.to_string()))?;
    reemit_json(&value)
}

pub fn reemit_json(value: &serde_json::Value) -> Result<String, CliError> {
    let mut out = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

fn render_table(out: &mut String, t: &Table) {
    let ncols = t.columns.len().max(t.rows.iter().map(Vec::len).max().unwrap_or(0));
    let mut widths = vec![0; ncols];
    for row in std::iter::once(&t.columns).chain(&t.rows) {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |row: &[String]| {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("    {}", cells.join("  ").trim_end())
    };
    let _ = writeln!(out, "  [{}]", t.name);
    let _ = writeln!(out, "{}", line(&t.columns));
    for row in &t.rows {
        let _ = writeln!(out, "{}", line(row));
    }
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", r.scenario);
    if !r.description.is_empty() {
        let _ = writeln!(out, "description: {}", r.description);
    }
    let _ = writeln!(out, "field: {}", r.field);
    let _ = writeln!(out, "truncation: {}", r.truncation);
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    for t in &r.tasks {
        let _ = writeln!(out);
        let trunc = t.truncation.map(|d| format!(" (through degree {d})")).unwrap_or_default();
        let _ = writeln!(out, "[{}] {} {}{}: {}", t.index, t.task, t.target, trunc, t.verdict.label());
        if let Some(m) = &t.message {
            let _ = writeln!(out, "  message: {m}");
        }
        if let Some(f) = &t.fingerprint {
            let _ = writeln!(out, "  lift context: {f}");
        }
        for (k, v) in &t.facts {
            let _ = writeln!(out, "  {k}: {v}");
        }
        for table in &t.tables {
            render_table(&mut out, table);
        }
        for n in &t.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        if let Some(ms) = t.elapsed_ms {
            let _ = writeln!(out, "  elapsed: {ms} ms");
        }
    }
    let s = &r.summary;
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "summary: {} tasks, {} passed, {} expected failures, {} failed, {} hypothesis failures, {} skipped, {} errors; exit {}",
        s.tasks, s.passed, s.expected_failures, s.failed, s.hypothesis_failures, s.skipped, s.errors, s.exit_code
    );
    out
}

/// One record per table row, prefixed by task index and table name; each table is
/// preceded by its header record. Facts form a `facts` table per task.
fn emit_csv(r: &Report) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Output(e.to_string());
    w.write_record(["task", "table", "scenario", "field", "truncation"]).map_err(err)?;
    w.write_record(["0", "scenario", r.scenario.as_str(), r.field.as_str(), &r.truncation.to_string()]).map_err(err)?;
    for t in &r.tasks {
        let idx = t.index.to_string();
        let trunc = t.truncation.map(|d| d.to_string()).unwrap_or_default();
        w.write_record(["task", "verdict", "kind", "target", "truncation", "verdict"]).map_err(err)?;
        w.write_record([idx.as_str(), "verdict", &t.task, &t.target, &trunc, t.verdict.label()]).map_err(err)?;
        if !t.facts.is_empty() {
            w.write_record(["task", "facts", "key", "value"]).map_err(err)?;
            for (k, v) in &t.facts {
                w.write_record([idx.as_str(), "facts", k, v]).map_err(err)?;
            }
        }
        for table in &t.tables {
            let header = ["task".to_string(), "table".to_string()].into_iter().chain(table.columns.iter().cloned());
            w.write_record(header).map_err(err)?;
            for row in &table.rows {
                let rec = [idx.clone(), table.name.clone()].into_iter().chain(row.iter().cloned());
                w.write_record(rec).map_err(err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}
