//! Line-based drawing file format.
//!
//! ```text
//! pccdrawing 1
//! v <id> <x> <y>
//! e <id> <src> <dst> <x1> <y1> ... <xk> <yk>
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Edge lines list the whole
//! polyline, endpoints included.

use std::fmt::Write as _;

use thiserror::Error;

use crate::drawing::{validate_drawing, Drawing, EdgeId, RawDrawing, RawEdge, RawVertex, ValidationReport, VertexId};
use crate::geom::Point;

pub const HEADER: &str = "pccdrawing 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected header `{HEADER}`, found `{found}`")]
    UnknownVersion { line: usize, found: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] ValidationReport),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn number<T: std::str::FromStr>(line: usize, what: &str, tok: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("bad {what} `{tok}`")))
}

/// Parses a drawing file. Geometry is not validated here.
pub fn parse_drawing(text: &str) -> Result<RawDrawing, ParseError> {
    let mut raw = RawDrawing::new();
    let mut header_seen = false;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let body = full.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if !header_seen {
            if toks != ["pccdrawing", "1"] {
                return Err(ParseError::UnknownVersion { line, found: body.to_string() });
            }
            header_seen = true;
            continue;
        }
        match toks[0] {
            "v" => {
                if toks.len() != 4 {
                    return Err(syntax(line, "vertex line needs `v <id> <x> <y>`"));
                }
                raw.vertices.push(RawVertex {
                    id: VertexId(number(line, "vertex id", toks[1])?),
                    point: Point::new(number(line, "coordinate", toks[2])?, number(line, "coordinate", toks[3])?),
                });
            }
            "e" => {
                if toks.len() < 8 || !toks.len().is_multiple_of(2) {
                    return Err(syntax(line, "edge line needs `e <id> <src> <dst>` and at least two points"));
                }
                let polyline = toks[4..]
                    .chunks(2)
                    .map(|c| Ok(Point::new(number(line, "coordinate", c[0])?, number(line, "coordinate", c[1])?)))
                    .collect::<Result<Vec<_>, ParseError>>()?;
                raw.edges.push(RawEdge {
                    id: EdgeId(number(line, "edge id", toks[1])?),
                    source: VertexId(number(line, "vertex id", toks[2])?),
                    target: VertexId(number(line, "vertex id", toks[3])?),
                    polyline,
                });
            }
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
    }
    if !header_seen {
        return Err(ParseError::UnknownVersion { line: 1, found: String::new() });
    }
    Ok(raw)
}

/// Canonical text: header, vertex lines, edge lines, in stored order.
pub fn serialize_drawing(raw: &RawDrawing) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for v in &raw.vertices {
        let _ = writeln!(out, "v {} {} {}", v.id, v.point.x, v.point.y);
    }
    for e in &raw.edges {
        let _ = write!(out, "e {} {} {}", e.id, e.source, e.target);
        for p in &e.polyline {
            let _ = write!(out, " {} {}", p.x, p.y);
        }
        out.push('\n');
    }
    out
}

pub fn load_drawing(text: &str) -> Result<Drawing, LoadError> {
    Ok(validate_drawing(&parse_drawing(text)?)?)
}
