//! Text formats.
//!
//! DIMACS coloring format: `c` comment lines, one `p edge <n> <m>`
//! header, then `m` lines `e <u> <v>` with 1-based endpoints. Writing
//! emits each edge once as `u < v`, ascending; parsing accepts both
//! orders and coalesces repeats (many published files list each edge
//! twice).
//!
//! Edge-list format: one `u v` pair per line, 0-based, `#` comments.
//! An optional first line `n m` declares the vertex count; it is
//! recognized when its second number equals the number of edge lines
//! that follow and every endpoint is below its first number. Writing
//! always emits the header so parsing is unambiguous.
//!
//! Colorings travel either as JSON `{"k": int, "colors": [int]}` or as
//! DIMACS-style assignment lines `s <vertex> <color>`, 0-based.

use crate::coloring::{Color, Coloring};
use crate::graph::{Graph, GraphError, VertexId};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("edge count mismatch: header declares {declared}, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: {msg}")]
    TokenError { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn token_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::TokenError {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| token_err(line, format!("expected integer, got {tok:?}")))
}

/// Parses DIMACS `.col` text.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::MalformedHeader(
                        "second p line".to_string(),
                    ));
                }
                if tok.next() != Some("edge") {
                    return Err(ParseError::MalformedHeader(format!(
                        "line {line_no}: expected 'p edge <n> <m>'"
                    )));
                }
                let n = tok
                    .next()
                    .ok_or_else(|| ParseError::MalformedHeader("missing n".to_string()))
                    .and_then(|t| parse_usize(t, line_no))?;
                let m = tok
                    .next()
                    .ok_or_else(|| ParseError::MalformedHeader("missing m".to_string()))
                    .and_then(|t| parse_usize(t, line_no))?;
                if tok.next().is_some() {
                    return Err(ParseError::MalformedHeader(format!(
                        "line {line_no}: trailing tokens"
                    )));
                }
                header = Some((n, m));
            }
            Some("e") => {
                if header.is_none() {
                    return Err(ParseError::MalformedHeader(
                        "edge before p line".to_string(),
                    ));
                }
                let u = tok
                    .next()
                    .ok_or_else(|| token_err(line_no, "missing endpoint"))
                    .and_then(|t| parse_usize(t, line_no))?;
                let v = tok
                    .next()
                    .ok_or_else(|| token_err(line_no, "missing endpoint"))
                    .and_then(|t| parse_usize(t, line_no))?;
                if tok.next().is_some() {
                    return Err(token_err(line_no, "trailing tokens"));
                }
                if u == 0 || v == 0 {
                    return Err(token_err(line_no, "DIMACS vertices are 1-based"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(token_err(line_no, format!("unknown record {other:?}")));
            }
            None => unreachable!("blank lines are skipped"),
        }
    }
    let (n, m) = header.ok_or_else(|| ParseError::MalformedHeader("no p line".to_string()))?;
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::build_dedup(n, &edges)?)
}

/// Writes DIMACS text; edges once each, `u < v`, ascending.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.n(), g.m()));
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses whitespace edge-list text.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut rows: Vec<(usize, usize, usize)> = Vec::new(); // (a, b, line)
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let a = parse_usize(tok.next().unwrap(), line_no)?;
        let b = tok
            .next()
            .ok_or_else(|| token_err(line_no, "expected two integers"))
            .and_then(|t| parse_usize(t, line_no))?;
        if tok.next().is_some() {
            return Err(token_err(line_no, "trailing tokens"));
        }
        rows.push((a, b, line_no));
    }
    if rows.is_empty() {
        return Ok(Graph::build(0, &[]).expect("empty graph"));
    }
    // Header detection: first row (n, m) is a header when m matches the
    // remaining row count and all endpoints fit below n.
    let (first_a, first_b, _) = rows[0];
    let body = &rows[1..];
    let is_header =
        first_b == body.len() && body.iter().all(|&(a, b, _)| a < first_a && b < first_a);
    let (n, edge_rows) = if is_header {
        (first_a, body)
    } else {
        let max = rows.iter().map(|&(a, b, _)| a.max(b)).max().unwrap();
        (max + 1, &rows[..])
    };
    let edges: Vec<(VertexId, VertexId)> = edge_rows.iter().map(|&(a, b, _)| (a, b)).collect();
    for &(a, b, line) in edge_rows {
        if a == b {
            return Err(token_err(line, format!("self loop at {a}")));
        }
    }
    Ok(Graph::build_dedup(n, &edges)?)
}

/// Writes edge-list text with the `n m` header.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.n(), g.m()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Deserialize)]
struct ColoringDto {
    k: usize,
    colors: Vec<Color>,
}

/// Reads a coloring from JSON or `s <vertex> <color>` lines, sniffing
/// the format from the first non-blank byte. `n` is the expected
/// vertex count.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring, ParseError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let dto: ColoringDto = serde_json::from_str(trimmed)
            .map_err(|e| token_err(1, format!("bad coloring JSON: {e}")))?;
        if dto.colors.len() != n {
            return Err(token_err(
                1,
                format!("coloring covers {} vertices, graph has {n}", dto.colors.len()),
            ));
        }
        let mut c = Coloring::new(n, dto.k);
        for (v, &col) in dto.colors.iter().enumerate() {
            if col > dto.k {
                return Err(token_err(1, format!("color {col} exceeds k = {}", dto.k)));
            }
            c.set(v, col);
        }
        return Ok(c);
    }
    let mut colors = vec![0 as Color; n];
    let mut max_color = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        if tok.next() != Some("s") {
            return Err(token_err(line_no, "expected 's <vertex> <color>'"));
        }
        let v = tok
            .next()
            .ok_or_else(|| token_err(line_no, "missing vertex"))
            .and_then(|t| parse_usize(t, line_no))?;
        let col = tok
            .next()
            .ok_or_else(|| token_err(line_no, "missing color"))
            .and_then(|t| parse_usize(t, line_no))?;
        if v >= n {
            return Err(token_err(line_no, format!("vertex {v} out of range")));
        }
        colors[v] = col;
        max_color = max_color.max(col);
    }
    let mut c = Coloring::new(n, max_color.max(1));
    for (v, &col) in colors.iter().enumerate() {
        c.set(v, col);
    }
    Ok(c)
}

/// Writes `s <vertex> <color>` lines.
pub fn write_coloring_lines(c: &Coloring) -> String {
    let mut out = String::new();
    for v in 0..c.len() {
        out.push_str(&format!("s {} {}\n", v, c.get(v)));
    }
    out
}

/// Writes the `{"k": .., "colors": [..]}` JSON form.
pub fn write_coloring_json(c: &Coloring) -> String {
    serde_json::to_string(&serde_json::json!({
        "k": c.k(),
        "colors": c.colors(),
    }))
    .expect("coloring serializes")
}
