//! Text format for finite metric spaces.
//!
//! ```text
//! # three points on a line
//! labels: a b c
//! 0
//! 1 0
//! 2 1/2^0 0
//! enumeration: c - a b
//! ```
//!
//! After the `labels:` header come one row per label, either the lower
//! triangle including the diagonal or the full row. Entries are dyadic
//! literals `m/2^k` or bare integers. The optional `enumeration:` line lists
//! labels in enumeration order, `-` marking a gap. `#` starts a comment.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::extend::{CountableMetricSpace, MetricViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricIoError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{description}")]
    Metric { violation: MetricViolation, description: String },
}

impl MetricIoError {
    pub fn kind(&self) -> &'static str {
        match self {
            MetricIoError::Io { .. } => "io",
            MetricIoError::Parse { .. } => "parse",
            MetricIoError::Metric { .. } => "metric",
        }
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> MetricIoError {
    MetricIoError::Parse { line, col, msg: msg.into() }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((offset + s[..b].chars().count() + 1, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out.into_iter()
}

pub fn parse_space(text: &str) -> Result<CountableMetricSpace, MetricIoError> {
    let mut labels: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<Dyadic>> = Vec::new();
    let mut enumeration: Option<Vec<Option<usize>>> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let trimmed = content.trim_start();
        let indent = content.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix("labels:") {
            if labels.is_some() {
                return Err(parse_err(line, indent + 1, "duplicate labels header"));
            }
            let offset = content[..indent].chars().count() + "labels:".len();
            let mut ls: Vec<String> = Vec::new();
            for (col, tok) in tokens(rest, offset) {
                if ls.iter().any(|l| l == tok) {
                    return Err(parse_err(line, col, format!("duplicate label `{tok}`")));
                }
                ls.push(tok.to_string());
            }
            labels = Some(ls);
            continue;
        }
        let Some(ls) = &labels else {
            return Err(parse_err(line, indent + 1, "expected `labels:` header first"));
        };
        if let Some(rest) = trimmed.strip_prefix("enumeration:") {
            if enumeration.is_some() {
                return Err(parse_err(line, indent + 1, "duplicate enumeration line"));
            }
            let offset = content[..indent].chars().count() + "enumeration:".len();
            let mut e = Vec::new();
            for (col, tok) in tokens(rest, offset) {
                if tok == "-" {
                    e.push(None);
                } else {
                    let i = ls
                        .iter()
                        .position(|l| l == tok)
                        .ok_or_else(|| parse_err(line, col, format!("unknown label `{tok}`")))?;
                    e.push(Some(i));
                }
            }
            enumeration = Some(e);
            continue;
        }
        if enumeration.is_some() {
            return Err(parse_err(line, indent + 1, "distance rows must come before the enumeration"));
        }
        let r = rows.len();
        if r >= ls.len() {
            return Err(parse_err(line, indent + 1, format!("more than {} distance rows", ls.len())));
        }
        let mut row = Vec::new();
        for (col, tok) in tokens(content, 0) {
            let d: Dyadic = tok.parse().map_err(|e| parse_err(line, col, format!("{e}")))?;
            row.push(d);
        }
        if row.len() != r + 1 && row.len() != ls.len() {
            return Err(parse_err(
                line,
                indent + 1,
                format!("row {} has {} entries, expected {} or {}", r + 1, row.len(), r + 1, ls.len()),
            ));
        }
        rows.push(row);
    }
    let Some(labels) = labels else {
        return Err(parse_err(last_line.max(1), 1, "missing `labels:` header"));
    };
    if rows.len() != labels.len() {
        return Err(parse_err(
            last_line.max(1),
            1,
            format!("expected {} distance rows, found {}", labels.len(), rows.len()),
        ));
    }
    let n = labels.len();
    let dist = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j <= i || rows[i].len() == n { rows[i][j].clone() } else { rows[j][i].clone() })
                .collect()
        })
        .collect();
    CountableMetricSpace::new(labels.clone(), dist, enumeration).map_err(|violation| MetricIoError::Metric {
        description: violation.describe(&labels),
        violation,
    })
}

pub fn load_space(path: impl AsRef<Path>) -> Result<CountableMetricSpace, MetricIoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| MetricIoError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_space(&text)
}

/// The space in the same format, lower triangle only.
pub fn format_space(space: &CountableMetricSpace) -> String {
    let mut out = format!("labels: {}\n", space.labels().join(" "));
    for i in 0..space.len() {
        let row: Vec<String> = (0..=i).map(|j| space.d(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let default: Vec<Option<usize>> = (0..space.len()).map(Some).collect();
    if space.enumeration() != default.as_slice() {
        let e: Vec<&str> = space.enumeration().iter().map(|e| e.map_or("-", |i| space.label(i))).collect();
        out.push_str(&format!("enumeration: {}\n", e.join(" ")));
    }
    out
}
