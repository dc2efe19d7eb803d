//! Dataset loading, embedded fixtures and report writers.
//!
//! Conjunction data is CSV with the header `label_A,label_X1,p_AX,p_AX1`
//! and an optional trailing `p_X1` column. Disjunction data is a JSON array
//! of `{"label", "pA_given_X1", "pA_given_X2", "p_X1", "p_AX"}` objects.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::effects::{
    aggregate_rows, analyze_conjunction, analyze_disjunction, ConjunctionReport, ConjunctionRow,
    ConjunctionSummary, DisjunctionInput, DisjunctionPrediction, DisjunctionReport,
};
use crate::error::{check_probability, QdtError, Result};

/// The fourteen incompatible-pair rows of the Shafir et al. (1990) data.
pub const TABLE1_CSV: &str = include_str!("../fixtures/table1.csv");

/// The gamble and vacation disjunction-effect cases (Tversky and Shafir, 1992).
pub const DISJUNCTION_EXAMPLES_JSON: &str = include_str!("../fixtures/disjunction_examples.json");

/// Dataset-wide `p(X1)` reported alongside the conjunction rows.
pub const TABLE1_AGGREGATE_P_X1: f64 = 0.692;

const CSV_HEADER: [&str; 4] = ["label_A", "label_X1", "p_AX", "p_AX1"];
const CSV_OPTIONAL: &str = "p_X1";

#[derive(Debug, Clone, PartialEq)]
pub struct ConjunctionDataset {
    pub rows: Vec<ConjunctionRow>,
    /// 1-based source line of each row.
    pub lines: Vec<usize>,
    pub source: String,
}

impl ConjunctionDataset {
    pub fn analyze(&self) -> Result<ConjunctionAnalysis> {
        let rows = self
            .rows
            .iter()
            .map(analyze_conjunction)
            .collect::<Result<Vec<_>>>()?;
        let summary = aggregate_rows(&rows)?;
        Ok(ConjunctionAnalysis { rows, summary })
    }

    pub fn to_csv(&self) -> String {
        let with_p_x1 = self.rows.iter().any(|r| r.p_x1.is_some());
        let mut out = CSV_HEADER.join(",");
        if with_p_x1 {
            out.push(',');
            out.push_str(CSV_OPTIONAL);
        }
        out.push('\n');
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        for r in &self.rows {
            let mut record = vec![r.label_a.clone(), r.label_x1.clone(), r.p_ax.to_string(), r.p_ax1.to_string()];
            if with_p_x1 {
                record.push(r.p_x1.map(|p| p.to_string()).unwrap_or_default());
            }
            w.write_record(&record).expect("writing to memory cannot fail");
        }
        let body = w.into_inner().expect("writing to memory cannot fail");
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisjunctionCase {
    pub label: String,
    pub input: DisjunctionInput,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisjunctionDataset {
    pub cases: Vec<DisjunctionCase>,
}

impl DisjunctionDataset {
    pub fn to_json(&self) -> String {
        let docs: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                serde_json::json!({
                    "label": c.label,
                    "pA_given_X1": c.input.p_a_given_x1,
                    "pA_given_X2": c.input.p_a_given_x2,
                    "p_X1": c.input.p_x1,
                    "p_AX": c.input.p_ax_observed,
                })
            })
            .collect();
        serde_json::to_string_pretty(&docs).expect("dataset serialization cannot fail")
    }

    pub fn analyze(&self) -> Result<Vec<LabeledDisjunction>> {
        self.cases
            .iter()
            .map(|c| {
                Ok(LabeledDisjunction {
                    label: c.label.clone(),
                    report: analyze_disjunction(&c.input)?,
                })
            })
            .collect()
    }

    pub fn predict(&self) -> Result<Vec<LabeledPrediction>> {
        self.cases
            .iter()
            .map(|c| {
                let i = &c.input;
                Ok(LabeledPrediction {
                    label: c.label.clone(),
                    observed_p_ax: i.p_ax_observed,
                    prediction: crate::effects::predict_disjunction(i.p_a_given_x1, i.p_a_given_x2, i.p_x1)?,
                })
            })
            .collect()
    }
}

fn parse_decimal(raw: &str, field: &str, line: usize) -> Result<f64> {
    let s = raw.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    let plain = !digits.is_empty()
        && digits.chars().all(|c| c.is_ascii_digit() || c == '.')
        && digits.chars().filter(|&c| c == '.').count() <= 1
        && digits.chars().any(|c| c.is_ascii_digit());
    if !plain {
        return Err(QdtError::Parse {
            line: Some(line),
            field: field.to_string(),
            message: format!("`{raw}` is not a plain decimal number"),
        });
    }
    let value: f64 = s.parse().map_err(|_| QdtError::Parse {
        line: Some(line),
        field: field.to_string(),
        message: format!("`{raw}` is not a number"),
    })?;
    check_probability(value, field, Some(line))
}

fn csv_error(e: csv::Error) -> QdtError {
    let line = e.position().map(|p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => QdtError::Io(io),
        kind => QdtError::Parse {
            line,
            field: "record".into(),
            message: format!("{kind:?}"),
        },
    }
}

/// Parses conjunction CSV from any reader; `source` labels the provenance.
pub fn parse_conjunction_csv<R: Read>(reader: R, source: &str) -> Result<ConjunctionDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let names: Vec<&str> = headers.iter().map(str::trim).collect();
    let has_p_x1 = match names.as_slice() {
        [a, b, c, d] if [*a, *b, *c, *d] == CSV_HEADER => false,
        [a, b, c, d, e] if [*a, *b, *c, *d] == CSV_HEADER && *e == CSV_OPTIONAL => true,
        _ => {
            return Err(QdtError::Parse {
                line: Some(1),
                field: "header".into(),
                message: format!(
                    "expected `{}[,{}]`, got `{}`",
                    CSV_HEADER.join(","),
                    CSV_OPTIONAL,
                    names.join(",")
                ),
            })
        }
    };
    let width = if has_p_x1 { 5 } else { 4 };

    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() != width {
            return Err(QdtError::Parse {
                line: Some(line),
                field: "record".into(),
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        let label_a = record[0].trim().to_string();
        let label_x1 = record[1].trim().to_string();
        if label_a.is_empty() {
            return Err(QdtError::Parse {
                line: Some(line),
                field: "label_A".into(),
                message: "empty label".into(),
            });
        }
        let p_ax = parse_decimal(&record[2], "p_AX", line)?;
        let p_ax1 = parse_decimal(&record[3], "p_AX1", line)?;
        let p_x1 = match record.get(4).map(str::trim) {
            Some(s) if !s.is_empty() => Some(parse_decimal(s, "p_X1", line)?),
            _ => None,
        };
        if !seen.insert((label_a.clone(), label_x1.clone())) {
            return Err(QdtError::Parse {
                line: Some(line),
                field: "label_A".into(),
                message: format!("duplicate pair ({label_a}, {label_x1})"),
            });
        }
        rows.push(ConjunctionRow {
            label_a,
            label_x1,
            p_ax,
            p_ax1,
            p_x1,
        });
        lines.push(line);
    }
    if rows.is_empty() {
        return Err(QdtError::EmptyDataset { line: Some(1) });
    }
    Ok(ConjunctionDataset {
        rows,
        lines,
        source: source.to_string(),
    })
}

pub fn load_conjunction_csv<P: AsRef<Path>>(path: P) -> Result<ConjunctionDataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    parse_conjunction_csv(file, &path.display().to_string())
}

/// The embedded conjunction table.
pub fn table1() -> ConjunctionDataset {
    parse_conjunction_csv(TABLE1_CSV.as_bytes(), "Shafir et al. (1990), incompatible pairs")
        .expect("embedded fixture is valid")
}

fn json_number(obj: &Map<String, Value>, key: &str, index: usize) -> Result<f64> {
    let field = format!("[{index}].{key}");
    let value = obj
        .get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| QdtError::Schema { line: None, field: field.clone() })?;
    check_probability(value, &field, None)
}

/// Parses the disjunction JSON schema.
pub fn parse_disjunction_json(text: &str) -> Result<DisjunctionDataset> {
    let doc: Value = serde_json::from_str(text).map_err(|e| QdtError::Parse {
        line: Some(e.line()),
        field: "document".into(),
        message: e.to_string(),
    })?;
    let items = doc.as_array().ok_or_else(|| QdtError::Schema {
        line: None,
        field: "<root array>".into(),
    })?;
    if items.is_empty() {
        return Err(QdtError::EmptyDataset { line: None });
    }
    let cases = items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let obj = item.as_object().ok_or_else(|| QdtError::Schema {
                line: None,
                field: format!("[{i}]"),
            })?;
            let label = obj
                .get("label")
                .and_then(Value::as_str)
                .ok_or_else(|| QdtError::Schema { line: None, field: format!("[{i}].label") })?
                .to_string();
            let input = DisjunctionInput {
                p_a_given_x1: json_number(obj, "pA_given_X1", i)?,
                p_a_given_x2: json_number(obj, "pA_given_X2", i)?,
                p_x1: json_number(obj, "p_X1", i)?,
                p_ax_observed: json_number(obj, "p_AX", i)?,
            };
            Ok(DisjunctionCase { label, input })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DisjunctionDataset { cases })
}

pub fn load_disjunction_json<P: AsRef<Path>>(path: P) -> Result<DisjunctionDataset> {
    let text = std::fs::read_to_string(path)?;
    parse_disjunction_json(&text)
}

/// The embedded disjunction-effect cases.
pub fn disjunction_examples() -> DisjunctionDataset {
    parse_disjunction_json(DISJUNCTION_EXAMPLES_JSON).expect("embedded fixture is valid")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjunctionAnalysis {
    pub rows: Vec<ConjunctionReport>,
    pub summary: ConjunctionSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDisjunction {
    pub label: String,
    pub report: DisjunctionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledPrediction {
    pub label: String,
    pub observed_p_ax: f64,
    pub prediction: DisjunctionPrediction,
}

/// Anything [`write_report`] can emit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Report {
    Conjunction(ConjunctionAnalysis),
    Disjunction(Vec<LabeledDisjunction>),
    Prediction(Vec<LabeledPrediction>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl FromStr for ReportFormat {
    type Err = QdtError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            other => Err(QdtError::Usage(format!(
                "unknown report format `{other}` (expected `text` or `json`)"
            ))),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn conjunction_text(a: &ConjunctionAnalysis) -> String {
    let s = &a.summary;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "mean q = {:.3}  std = {:.3}  mean abs dev = {:.3}  mean epsilon = {:.3}  fallacy rate = {:.3}  rows = {}",
        s.mean_q_ax, s.std_q_ax, s.mean_abs_dev_q_ax, s.mean_epsilon, s.fallacy_rate, s.rows
    );
    if let Some(c) = &s.aggregate_condition {
        let _ = writeln!(
            out,
            "aggregate fallacy condition |q| > p(AX2): {:.3} > {:.3} (p(X1) = {:.3}): {}",
            s.mean_q_ax.abs(),
            c.p_ax2,
            c.p_x1,
            yes_no(c.met)
        );
    }
    let labels: Vec<String> = a
        .rows
        .iter()
        .map(|r| format!("{} / {}", r.label_a, r.label_x1))
        .collect();
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0).max(15);
    let _ = writeln!(out, "{:<width$}  {:>7}  {:>7}  {:>7}", "characteristics", "p(AX)", "p(AX1)", "q(AX)");
    for (label, r) in labels.iter().zip(&a.rows) {
        let _ = writeln!(out, "{:<width$}  {:>7.3}  {:>7.3}  {:>7.3}", label, r.p_ax, r.p_ax1, r.q_ax);
    }
    let _ = writeln!(
        out,
        "{:<width$}  {:>7.3}  {:>7.3}  {:>7.3}",
        "average", s.mean_p_ax, s.mean_p_ax1, s.mean_q_ax
    );
    out
}

fn disjunction_text(cases: &[LabeledDisjunction]) -> String {
    let mut out = String::new();
    for c in cases {
        let r = &c.report;
        let _ = writeln!(
            out,
            "{}: p(AX) = {:.3}  classical = {:.3}  q = {:.3}  q_B = {:.3}  phi_A = {:.3}  phi_B = {:.3}  sure-thing violated = {}  |q| - 0.25 = {:.3}",
            c.label,
            r.input.p_ax_observed,
            r.classical_p_ax,
            r.q_ax,
            r.q_bx,
            r.phi_ax,
            r.phi_bx,
            yes_no(r.sure_thing_violated),
            r.quarter_law_deviation
        );
    }
    out
}

fn prediction_text(cases: &[LabeledPrediction]) -> String {
    let mut out = String::new();
    for c in cases {
        let p = &c.prediction;
        let _ = write!(
            out,
            "{}: predicted p(AX) = {:.3}  observed = {:.3}  difference = {:.3}  predicted p(BX) = {:.3}",
            c.label,
            p.p_ax,
            c.observed_p_ax,
            c.observed_p_ax - p.p_ax,
            p.p_bx
        );
        if let Some(w) = &p.warning {
            let _ = write!(out, "  warning: {w}");
        }
        out.push('\n');
    }
    out
}

/// Renders a report as aligned text (three decimals) or full-precision JSON.
pub fn render_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
            s.push('\n');
            s
        }
        ReportFormat::Text => match report {
            Report::Conjunction(a) => conjunction_text(a),
            Report::Disjunction(d) => disjunction_text(d),
            Report::Prediction(p) => prediction_text(p),
        },
    }
}

pub fn write_report<W: Write>(report: &Report, format: ReportFormat, sink: &mut W) -> Result<()> {
    sink.write_all(render_report(report, format).as_bytes())?;
    sink.flush()?;
    Ok(())
}

/// Parses a JSON report back.
pub fn read_report_json(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| QdtError::Parse {
        line: Some(e.line()),
        field: "report".into(),
        message: e.to_string(),
    })
}
