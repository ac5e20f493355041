//! Text formats: graph6, plain edge lists and DOT.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{EdgeSet, Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("graph6: malformed header: {0}")]
    Header(String),
    #[error("graph6: byte {byte:#04x} at offset {offset} is outside the printable range")]
    BadByte { byte: u8, offset: usize },
    #[error("graph6: bit stream truncated, expected {expected} bytes of adjacency data, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6: {0} trailing bytes after the adjacency data")]
    Trailing(usize),
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("edge list declares {declared} edges but lists {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const G6_HEADER: &str = ">>graph6<<";

fn g6_byte(b: u8, offset: usize) -> Result<u8, FormatError> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(FormatError::BadByte { byte: b, offset })
    }
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let line = text.trim();
    let line = line.strip_prefix(G6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Header("empty input".into()));
    }
    let (n, mut pos) = if bytes[0] != b'~' {
        (g6_byte(bytes[0], 0)? as usize, 1)
    } else if bytes.get(1) == Some(&b'~') {
        return Err(FormatError::Header("8-byte size form exceeds the vertex cap".into()));
    } else {
        if bytes.len() < 4 {
            return Err(FormatError::Header("size prefix '~' needs three more bytes".into()));
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | g6_byte(b, i + 1)? as usize;
        }
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[pos..];
    if data.len() < expected {
        return Err(FormatError::Truncated {
            expected,
            found: data.len(),
        });
    }
    if data.len() > expected {
        return Err(FormatError::Trailing(data.len() - expected));
    }
    let mut pairs = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = g6_byte(bytes[pos + k / 6], pos + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    pos += expected;
    debug_assert_eq!(pos, bytes.len());
    Ok(Graph::new(n, pairs)?)
}

/// Encodes a graph as a graph6 line without header or newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses `"n m"` followed by `m` lines `"u v"`. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(FormatError::EdgeList {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    let nums = |line: usize, l: &str| -> Result<(usize, usize), FormatError> {
        let mut it = l.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(FormatError::EdgeList {
                line,
                message: format!("expected two unsigned integers, found {l:?}"),
            }),
        }
    };
    let (n, m) = nums(hline, header)?;
    let mut pairs = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = nums(line, l)?;
        if u >= n || v >= n {
            return Err(FormatError::EdgeList {
                line,
                message: format!("vertex {} out of range for n = {n}", u.max(v)),
            });
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(FormatError::EdgeCount {
            declared: m,
            found: pairs.len(),
        });
    }
    Ok(Graph::new(n, pairs)?)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u, e.v);
    }
    out
}

/// Edge-list text for an edge set (header uses the host graph's order).
pub fn emit_edge_set(n: usize, set: &EdgeSet) -> String {
    let mut out = format!("{} {}\n", n, set.len());
    for e in set {
        let _ = writeln!(out, "{} {}", e.u, e.v);
    }
    out
}

/// DOT source with vertex labels equal to indices; edges in `highlight` are drawn bold.
pub fn emit_dot(g: &Graph, highlight: Option<&EdgeSet>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for e in g.edges() {
        let bold = highlight.is_some_and(|h| h.contains(e));
        if bold {
            let _ = writeln!(out, "  {} -- {} [style=bold, color=red];", e.u, e.v);
        } else {
            let _ = writeln!(out, "  {} -- {};", e.u, e.v);
        }
    }
    out.push_str("}\n");
    out
}
