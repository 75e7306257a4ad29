use std::fmt::Write;

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A rendered command result.
pub struct Report {
    pub command: &'static str,
    pub space: Option<String>,
    /// `None` for purely informational commands.
    pub pass: Option<bool>,
    pub summary: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub body: Value,
}

impl Report {
    pub fn new(command: &'static str, space: Option<&str>, body: Value) -> Self {
        Report { command, space: space.map(str::to_string), pass: None, summary: Vec::new(), header: Vec::new(), rows: Vec::new(), body }
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        self
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn table<S: ToString>(mut self, header: &[&str], rows: Vec<Vec<S>>) -> Self {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self.rows = rows.into_iter().map(|r| r.into_iter().map(|c| c.to_string()).collect()).collect();
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut v = json!({ "schema": 1, "command": self.command });
                if let Some(s) = &self.space {
                    v["space"] = json!(s);
                }
                if let Some(p) = self.pass {
                    v["pass"] = json!(p);
                }
                v["report"] = self.body.clone();
                serde_json::to_string_pretty(&v).unwrap() + "\n"
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).unwrap();
                for r in &self.rows {
                    w.write_record(r).unwrap();
                }
                String::from_utf8(w.into_inner().unwrap()).unwrap()
            }
            Format::Text => {
                let mut out = String::new();
                for s in &self.summary {
                    writeln!(out, "{s}").unwrap();
                }
                if !self.header.is_empty() {
                    if !self.summary.is_empty() {
                        out.push('\n');
                    }
                    out.push_str(&aligned(&self.header, &self.rows));
                }
                if let Some(p) = self.pass {
                    writeln!(out, "{}", if p { "verdict: pass" } else { "verdict: FAIL" }).unwrap();
                }
                out
            }
        }
    }
}

fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let fmt = |cells: &[String]| {
        let mut s = cells.iter().zip(&w).map(|(c, &n)| format!("{c:<n$}")).collect::<Vec<_>>().join("  ");
        s.truncate(s.trim_end().len());
        s + "\n"
    };
    let mut out = fmt(header);
    out += &fmt(&w.iter().map(|&n| "-".repeat(n)).collect::<Vec<_>>());
    for r in rows {
        out += &fmt(r);
    }
    out
}
