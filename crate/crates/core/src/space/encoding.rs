//! Flat-sequence encoding of tuples.
//!
//! A tuple of age `n` with entries `(a_i, α_i)` is written
//! `(n, α_0, enc(a_0), n, α_1, enc(a_1), n, …, n)`; the empty tuple is `(n)`.
//! In text, ages are bare integers and distances always carry their `/2^k`
//! suffix, which keeps the grammar LL(1).

use std::fmt;

use super::{NodeId, SpaceError, Store};
use crate::dyadic::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EncTerm {
    Age(u32),
    Value(Dyadic),
}

impl fmt::Display for EncTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncTerm::Age(n) => write!(f, "{n}"),
            EncTerm::Value(d) => write!(f, "{d}"),
        }
    }
}

pub fn format_encoding(terms: &[EncTerm]) -> String {
    let parts: Vec<String> = terms.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Parses `(t, t, …)` where each `t` is an age or a dyadic `m/2^k`.
pub fn parse_encoding(text: &str) -> Result<Vec<EncTerm>, SpaceError> {
    let syntax = |column: usize, reason: &str| SpaceError::EncodingSyntax { column, reason: reason.to_string() };
    let start = text.len() - text.trim_start().len();
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .ok_or_else(|| syntax(start, "expected `(`"))?
        .strip_suffix(')')
        .ok_or_else(|| syntax(start + trimmed.len(), "expected `)`"))?;
    let mut terms = Vec::new();
    let mut column = start + 1;
    for raw in inner.split(',') {
        let lead = raw.len() - raw.trim_start().len();
        let tok = raw.trim();
        let at = column + lead;
        if tok.is_empty() {
            return Err(syntax(at, "empty term"));
        }
        if tok.contains('/') {
            let d: Dyadic = tok.parse().map_err(|e| syntax(at, &format!("{e}")))?;
            terms.push(EncTerm::Value(d));
        } else {
            if !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax(at, &format!("invalid age `{tok}`")));
            }
            let n: u32 = tok.parse().map_err(|_| syntax(at, &format!("age `{tok}` out of range")))?;
            terms.push(EncTerm::Age(n));
        }
        column += raw.len() + 1;
    }
    Ok(terms)
}

impl Store {
    pub fn encode(&self, id: NodeId) -> Vec<EncTerm> {
        let mut out = Vec::new();
        self.encode_into(id, &mut out);
        out
    }

    fn encode_into(&self, id: NodeId, out: &mut Vec<EncTerm>) {
        let node = self.node(id);
        out.push(EncTerm::Age(node.age));
        for (p, alpha) in &node.entries {
            out.push(EncTerm::Value(alpha.clone()));
            self.encode_into(*p, out);
            out.push(EncTerm::Age(node.age));
        }
    }

    pub fn encode_string(&self, id: NodeId) -> String {
        format_encoding(&self.encode(id))
    }

    pub fn decode(&mut self, terms: &[EncTerm]) -> Result<NodeId, SpaceError> {
        let mut pos = 0;
        let id = self.decode_at(terms, &mut pos, None)?;
        if pos != terms.len() {
            return Err(malformed(pos, "trailing terms after the closing age"));
        }
        Ok(id)
    }

    pub fn decode_str(&mut self, text: &str) -> Result<NodeId, SpaceError> {
        let terms = parse_encoding(text)?;
        self.decode(&terms)
    }

    fn decode_at(&mut self, terms: &[EncTerm], pos: &mut usize, parent: Option<u32>) -> Result<NodeId, SpaceError> {
        let age = match terms.get(*pos) {
            Some(EncTerm::Age(n)) => *n,
            Some(EncTerm::Value(_)) => return Err(malformed(*pos, "expected an age, found a distance")),
            None => return Err(malformed(*pos, "unexpected end, expected an age")),
        };
        if let Some(p) = parent {
            if age >= p {
                return Err(malformed(*pos, &format!("age {age} is not below the enclosing age {p}")));
            }
        }
        *pos += 1;
        let mut entries = Vec::new();
        while let Some(EncTerm::Value(alpha)) = terms.get(*pos) {
            let alpha = alpha.clone();
            *pos += 1;
            let child = self.decode_at(terms, pos, Some(age))?;
            match terms.get(*pos) {
                Some(EncTerm::Age(n)) if *n == age => *pos += 1,
                _ => return Err(malformed(*pos, &format!("expected closing age {age}"))),
            }
            entries.push((child, alpha));
        }
        self.intern(age, entries)
    }
}

fn malformed(position: usize, reason: &str) -> SpaceError {
    SpaceError::MalformedEncoding { position, reason: reason.to_string() }
}
