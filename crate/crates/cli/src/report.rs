//! Per-check records, their JSON-lines and table renderings, and exit codes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::job::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Violated,
    Inapplicable,
    Unclosed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Violated => "violated",
            Status::Inapplicable => "inapplicable",
            Status::Unclosed => "unclosed",
        }
    }
}

/// What a check found, before it is tagged with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub residual: String,
    pub detail: String,
}

impl Outcome {
    pub fn new(status: Status, residual: String) -> Self {
        Outcome {
            status,
            residual,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }
}

/// Parameters echoed back with every record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub ambient: String,
    pub pair: String,
    pub aut: String,
    pub weight: String,
    pub max_length: usize,
    pub depth: String,
    pub precision: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub check: String,
    pub status: Status,
    pub residual: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    pub params: Params,
    /// Wall time; the only field outside the determinism contract.
    pub wall_ms: u64,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNCLOSED: i32 = 3;

/// 1 if anything was violated, else 3 if anything is unclosed, else 0.
pub fn exit_code<'a>(statuses: impl IntoIterator<Item = &'a Status>) -> i32 {
    let mut code = EXIT_OK;
    for s in statuses {
        match s {
            Status::Violated => return EXIT_VIOLATED,
            Status::Unclosed => code = EXIT_UNCLOSED,
            _ => {}
        }
    }
    code
}

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
            out
        }
        Format::Table => table(records),
    }
}

fn table(records: &[Record]) -> String {
    let rows: Vec<[String; 6]> = records
        .iter()
        .map(|r| {
            [
                r.check.clone(),
                r.status.as_str().to_string(),
                r.params.pair.clone(),
                r.params.aut.clone(),
                r.params.weight.clone(),
                r.residual.clone(),
            ]
        })
        .collect();
    let header = ["check", "status", "pair", "aut", "weight", "residual"].map(String::from);
    let mut widths = header.each_ref().map(|h| h.chars().count());
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_precedence() {
        use Status::*;
        assert_eq!(exit_code(&[Verified, Inapplicable]), 0);
        assert_eq!(exit_code(&[Unclosed, Verified]), 3);
        assert_eq!(exit_code(&[Unclosed, Violated]), 1);
        assert_eq!(exit_code(&[]), 0);
    }
}
