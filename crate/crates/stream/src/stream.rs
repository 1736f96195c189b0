//! The insertion/query stream format.
//!
//! ```text
//! c any comment
//! p inc <n> <s> <t>
//! a <u> <v>
//! q
//! ```
//!
//! Vertex ids are 0-based decimals separated by whitespace, one record per
//! line. Comments may appear anywhere; the header must precede every `a` and
//! `q` line and appear exactly once.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamEvent {
    Insert(usize, usize),
    Query,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stream {
    pub n: usize,
    pub source: usize,
    pub target: usize,
    pub events: Vec<StreamEvent>,
}

impl Stream {
    pub fn insert_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, StreamEvent::Insert(..)))
            .count()
    }

    pub fn query_count(&self) -> usize {
        self.events.len() - self.insert_count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `p inc <n> <s> <t>` header")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("malformed header, expected `p inc <n> <s> <t>`")]
    BadHeader,
    #[error("source and target must differ")]
    SourceIsTarget,
    #[error("expected `a <u> <v>`")]
    BadInsert,
    #[error("`q` takes no arguments")]
    BadQuery,
    #[error("unknown record type `{0}`")]
    UnknownRecord(String),
    #[error("empty line")]
    EmptyLine,
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

pub fn parse_stream(text: &str) -> Result<Stream, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut events = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |kind| ParseError { line, kind };
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else {
            return Err(err(ParseErrorKind::EmptyLine));
        };
        if tag == "c" {
            continue;
        }
        let rest: Vec<&str> = fields.collect();
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(err(ParseErrorKind::DuplicateHeader));
                }
                let [kind, n, s, t] = rest[..] else {
                    return Err(err(ParseErrorKind::BadHeader));
                };
                if kind != "inc" {
                    return Err(err(ParseErrorKind::BadHeader));
                }
                let (n, s, t) = match (number(n), number(s), number(t)) {
                    (Some(n), Some(s), Some(t)) => (n, s, t),
                    _ => return Err(err(ParseErrorKind::BadHeader)),
                };
                for vertex in [s, t] {
                    if vertex >= n {
                        return Err(err(ParseErrorKind::VertexOutOfRange { vertex, n }));
                    }
                }
                if s == t {
                    return Err(err(ParseErrorKind::SourceIsTarget));
                }
                header = Some((n, s, t));
            }
            "a" => {
                let (n, _, _) = header.ok_or(err(ParseErrorKind::MissingHeader))?;
                let [u, v] = rest[..] else {
                    return Err(err(ParseErrorKind::BadInsert));
                };
                let (u, v) = match (number(u), number(v)) {
                    (Some(u), Some(v)) => (u, v),
                    _ => return Err(err(ParseErrorKind::BadInsert)),
                };
                for vertex in [u, v] {
                    if vertex >= n {
                        return Err(err(ParseErrorKind::VertexOutOfRange { vertex, n }));
                    }
                }
                events.push(StreamEvent::Insert(u, v));
            }
            "q" => {
                header.ok_or(err(ParseErrorKind::MissingHeader))?;
                if !rest.is_empty() {
                    return Err(err(ParseErrorKind::BadQuery));
                }
                events.push(StreamEvent::Query);
            }
            other => return Err(err(ParseErrorKind::UnknownRecord(other.to_owned()))),
        }
    }
    let (n, source, target) = header.ok_or(ParseError {
        line: text.lines().count() + 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    Ok(Stream {
        n,
        source,
        target,
        events,
    })
}

fn number(field: &str) -> Option<usize> {
    if field.bytes().all(|b| b.is_ascii_digit()) {
        field.parse().ok()
    } else {
        None
    }
}

/// Writes `stream` in the canonical layout: comments, header, one event per
/// line, LF endings.
pub fn format_stream(stream: &Stream, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        debug_assert!(!c.contains('\n'));
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(
        out,
        "p inc {} {} {}",
        stream.n, stream.source, stream.target
    )
    .unwrap();
    for e in &stream.events {
        match e {
            StreamEvent::Insert(u, v) => writeln!(out, "a {u} {v}").unwrap(),
            StreamEvent::Query => out.push_str("q\n"),
        }
    }
    out
}
