//! Text formats for graph input and output.
//!
//! Two input formats are supported:
//!
//! * an edge-list format: a header line `n m`, then `m` lines `u v` with
//!   0-based endpoints; lines whose first non-blank character is `#` are
//!   comments;
//! * headerless graph6 restricted to `n <= 62` (one size byte `n + 63`,
//!   then the upper adjacency triangle packed 6 bits per byte, each byte
//!   offset by 63).
//!
//! Both parsers are total: any byte sequence either yields a valid
//! [`Graph`] or a [`ParseError`] carrying a line/column position.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;

/// Guard against absurd vertex counts in untrusted input.
const MAX_PARSED_VERTICES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, column, message: message.into() }
    }
}

/// Splits a line into whitespace-separated tokens with their 1-based
/// character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None; // (char col, byte idx)
    let mut col = 0;
    for (byte_idx, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c, &line[b..byte_idx]));
            }
        } else if start.is_none() {
            start = Some((col, byte_idx));
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &line[b..]));
    }
    out
}

fn parse_count(tok: &str, line: usize, col: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| ParseError::new(line, col, format!("expected {what}, found `{tok}`")))
}

/// Parses the edge-list format described in the module docs.
///
/// Rejects duplicate edges, self-loops, out-of-range endpoints, missing or
/// extra edge lines, and malformed tokens, always with a position.
pub fn parse_edgelist(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph: Option<Graph> = None;
    let mut edges_seen = 0usize;
    let mut line_no = 0usize;

    for raw in text.lines() {
        line_no += 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = tokens(raw);
        if toks.len() != 2 {
            let col = toks.get(2).map(|t| t.0).unwrap_or(1);
            return Err(ParseError::new(line_no, col, "expected exactly two fields"));
        }
        let (c0, t0) = toks[0];
        let (c1, t1) = toks[1];
        match header {
            None => {
                let n = parse_count(t0, line_no, c0, "vertex count")?;
                let m = parse_count(t1, line_no, c1, "edge count")?;
                if n > MAX_PARSED_VERTICES {
                    return Err(ParseError::new(
                        line_no,
                        c0,
                        format!("vertex count {n} exceeds the parser limit {MAX_PARSED_VERTICES}"),
                    ));
                }
                let max_edges = n.saturating_mul(n.saturating_sub(1)) / 2;
                if m > max_edges {
                    return Err(ParseError::new(
                        line_no,
                        c1,
                        format!("edge count {m} exceeds the maximum {max_edges} for {n} vertices"),
                    ));
                }
                header = Some((n, m));
                graph = Some(Graph::edgeless(n));
            }
            Some((n, m)) => {
                let g = graph.as_mut().expect("graph is set with the header");
                if edges_seen == m {
                    return Err(ParseError::new(
                        line_no,
                        c0,
                        format!("unexpected extra line: header declared {m} edges"),
                    ));
                }
                let u = parse_count(t0, line_no, c0, "vertex index")?;
                let v = parse_count(t1, line_no, c1, "vertex index")?;
                if u >= n {
                    return Err(ParseError::new(line_no, c0, format!("vertex {u} out of range [0, {n})")));
                }
                if v >= n {
                    return Err(ParseError::new(line_no, c1, format!("vertex {v} out of range [0, {n})")));
                }
                g.add_edge(u, v).map_err(|e| ParseError::new(line_no, c0, e.to_string()))?;
                edges_seen += 1;
            }
        }
    }

    match header {
        None => Err(ParseError::new(line_no + 1, 1, "missing `n m` header line")),
        Some((_, m)) if edges_seen < m => Err(ParseError::new(
            line_no + 1,
            1,
            format!("expected {m} edge lines, found {edges_seen}"),
        )),
        Some(_) => Ok(graph.unwrap()),
    }
}

/// Writes a graph in the edge-list format (header plus lexicographically
/// ordered edges). `parse_edgelist` inverts this exactly.
pub fn write_edgelist(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u, e.v);
    }
    out
}

/// Decodes one headerless graph6 line (`n <= 62`).
///
/// Byte 0 is `n + 63`; the remaining `ceil(n(n-1)/2 / 6)` bytes hold the
/// upper adjacency triangle in column-major order, 6 bits per byte, most
/// significant bit first, each byte offset by 63. Multi-byte size
/// encodings (leading `~`) are rejected.
pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let trimmed = line.trim_end_matches(['\r', '\n']);
    let bytes = trimmed.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::new(1, 1, "empty graph6 input"));
    }
    if bytes[0] == b'>' {
        return Err(ParseError::new(1, 1, "graph6 header lines (`>>graph6<<`) are not supported"));
    }
    if bytes[0] == 126 {
        return Err(ParseError::new(
            1,
            1,
            "multi-byte graph6 size encoding (n > 62) is not supported",
        ));
    }
    if !(63..=125).contains(&bytes[0]) {
        return Err(ParseError::new(1, 1, format!("invalid graph6 size byte {}", bytes[0])));
    }
    let n = (bytes[0] - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() - 1 < need {
        return Err(ParseError::new(
            1,
            bytes.len() + 1,
            format!("truncated graph6 body: expected {need} bytes, found {}", bytes.len() - 1),
        ));
    }
    if bytes.len() - 1 > need {
        return Err(ParseError::new(
            1,
            1 + need + 1,
            format!("trailing data after graph6 body of {need} bytes"),
        ));
    }
    for (i, &byte) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(ParseError::new(1, i + 2, format!("invalid graph6 body byte {byte}")));
        }
    }
    let mut edges = Vec::new();
    let mut bit_idx = 0usize;
    for col in 1..n {
        for row in 0..col {
            let b = bytes[1 + bit_idx / 6] - 63;
            if (b >> (5 - bit_idx % 6)) & 1 == 1 {
                edges.push((row, col));
            }
            bit_idx += 1;
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgelist_round_trip() {
        let g = Graph::broom(8).unwrap();
        let text = write_edgelist(&g);
        assert_eq!(parse_edgelist(&text).unwrap(), g);
    }

    #[test]
    fn edgelist_comments_and_blanks() {
        let text = "# a triangle\n\n3 3\n0 1\n# middle comment\n1 2\n0 2\n";
        let g = parse_edgelist(text).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn edgelist_rejects_self_loop() {
        let err = parse_edgelist("2 1\n1 1\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
        assert!(err.message.contains("self-loop"));
    }

    #[test]
    fn edgelist_rejects_duplicate() {
        let err = parse_edgelist("3 2\n0 1\n1 0\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("duplicate"));
    }

    #[test]
    fn edgelist_rejects_out_of_range() {
        let err = parse_edgelist("3 1\n0 7\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.message.contains("out of range"));
    }

    #[test]
    fn edgelist_rejects_short_and_long_input() {
        assert!(parse_edgelist("3 2\n0 1\n").unwrap_err().message.contains("expected 2 edge lines"));
        assert!(parse_edgelist("3 1\n0 1\n1 2\n").unwrap_err().message.contains("extra line"));
        assert!(parse_edgelist("").unwrap_err().message.contains("header"));
        assert!(parse_edgelist("2 1\n0 1 9\n").unwrap_err().message.contains("two fields"));
        assert!(parse_edgelist("x y\n").unwrap_err().message.contains("vertex count"));
    }

    #[test]
    fn edgelist_empty_graph() {
        let g = parse_edgelist("0 0\n").unwrap();
        assert_eq!(g.vertex_count(), 0);
    }

    #[test]
    fn graph6_known_values() {
        // K_2: n=2, one bit set -> byte 63 + 0b100000 = 95 '_'
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!(k2, Graph::complete(2).unwrap());
        // P_3 as 0-1, 1-2: bits (0,1)=1, (0,2)=0, (1,2)=1 -> 101000 -> 63+40=103 'g'
        let p3 = parse_graph6("Bg").unwrap();
        assert_eq!(p3, Graph::path(3).unwrap());
        // K_3: bits 111000 -> 63+56=119 'w'
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        // 6-cycle and broom, encodings produced by an external writer
        assert_eq!(parse_graph6("EhEG").unwrap(), Graph::cycle(6).unwrap());
        assert_eq!(
            parse_graph6("EhC_").unwrap().degree_sequence(),
            Graph::broom(6).unwrap().degree_sequence()
        );
        // single vertex: '@'
        let k1 = parse_graph6("@").unwrap();
        assert_eq!(k1.vertex_count(), 1);
        // empty graph: '?'
        assert_eq!(parse_graph6("?").unwrap().vertex_count(), 0);
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("~??").unwrap_err().message.contains("n > 62"));
        assert!(parse_graph6(">>graph6<<Ao").unwrap_err().message.contains("not supported"));
        assert!(parse_graph6("B").unwrap_err().message.contains("truncated"));
        assert!(parse_graph6("Bgg").unwrap_err().message.contains("trailing"));
        assert!(parse_graph6("B\u{7f}").is_err());
        assert!(parse_graph6("\n").is_err());
    }

    #[test]
    fn graph6_max_supported_order() {
        // n = 62 edgeless: '}' then ceil(62*61/2 / 6) = 316 '?' bytes
        let line = format!("}}{}", "?".repeat(316));
        let g = parse_graph6(&line).unwrap();
        assert_eq!(g.vertex_count(), 62);
        assert_eq!(g.edge_count(), 0);
    }
}
