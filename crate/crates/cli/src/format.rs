//! Deterministic rendering of tabular results as CSV, JSON or text.

use serde_json::{Map, Value};

pub const SIGNIFICANT: usize = 10;

/// C-style `%.10g`.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A number rounded to ten significant digits, or `null` when not finite.
pub fn json_number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = fmt_g(x).parse().expect("fmt_g output parses");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => fmt_g(*x),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Empty => "-".into(),
            Cell::Text(s) => s.clone(),
            other => other.csv(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(x) => json_number(*x),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(i64::from(x))
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, c)| (k.to_string(), c.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// One command's output: parameters, the main table, excluded levels and
/// free-form metadata.
#[derive(Debug, Clone)]
pub struct Document {
    pub params: Vec<(&'static str, f64)>,
    pub constants: Vec<(&'static str, f64)>,
    pub command: &'static str,
    pub comments: Vec<String>,
    pub levels: Table,
    pub excluded: Table,
    /// Extra top-level JSON members.
    pub extra: Vec<(&'static str, Value)>,
    /// Replaces `levels` as the body of CSV and text output.
    pub samples: Option<Table>,
}

impl Document {
    pub fn new(command: &'static str, params: &woods_saxon::PhysicalParams) -> Self {
        Document {
            params: vec![("V0", params.v0), ("R0", params.r0), ("a", params.a), ("mu", params.mu)],
            constants: vec![
                ("hbar_c", params.hbar_c),
                ("u_to_mev", params.u_to_mev),
                ("hbar2_over_2mu", params.hbar2_over_2mu()),
            ],
            command,
            comments: Vec::new(),
            levels: Table::default(),
            excluded: Table::default(),
            extra: Vec::new(),
            samples: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Text => self.text(),
        }
    }

    fn header_comments(&self) -> Vec<String> {
        let join = |pairs: &[(&str, f64)]| {
            pairs
                .iter()
                .map(|(k, v)| format!("{k}={}", fmt_g(*v)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut lines = vec![
            format!("woods-saxon {}", self.command),
            format!("params: {}", join(&self.params)),
            format!("constants: {}", join(&self.constants)),
        ];
        lines.extend(self.comments.iter().cloned());
        lines
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for line in self.header_comments() {
            out.push_str(&format!("# {line}\n"));
        }
        for row in &self.excluded.rows {
            let cells: Vec<String> = self
                .excluded
                .columns
                .iter()
                .zip(row)
                .map(|(k, c)| format!("{k}={}", c.csv()))
                .collect();
            out.push_str(&format!("# excluded: {}\n", cells.join(" ")));
        }
        let body = self.samples.as_ref().unwrap_or(&self.levels);
        out.push_str(&body.columns.join(","));
        out.push('\n');
        for row in &body.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn json(&self) -> String {
        let pairs = |pairs: &[(&str, f64)]| {
            Value::Object(pairs.iter().map(|(k, v)| (k.to_string(), json_number(*v))).collect())
        };
        let mut meta = Map::new();
        meta.insert("command".into(), Value::from(self.command));
        meta.insert("constants".into(), pairs(&self.constants));
        if !self.comments.is_empty() {
            meta.insert("notes".into(), Value::from(self.comments.clone()));
        }
        let mut doc = Map::new();
        doc.insert("params".into(), pairs(&self.params));
        doc.insert("levels".into(), self.levels.json());
        doc.insert("excluded".into(), self.excluded.json());
        doc.insert("meta".into(), Value::Object(meta));
        for (k, v) in &self.extra {
            doc.insert(k.to_string(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json serialises");
        s.push('\n');
        s
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for line in self.header_comments() {
            out.push_str(&line);
            out.push('\n');
        }
        out.push('\n');
        out.push_str(&aligned(self.samples.as_ref().unwrap_or(&self.levels)));
        if !self.excluded.rows.is_empty() {
            out.push_str("\nexcluded:\n");
            out.push_str(&aligned(&self.excluded));
        }
        out
    }
}

fn aligned(table: &Table) -> String {
    let cells: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
    let widths: Vec<usize> = table
        .columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: Vec<&str>| {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(table.columns.clone());
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}
