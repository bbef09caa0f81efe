//! Graph serialization: graph6 strings and whitespace edge lists.
//!
//! graph6 follows the de-facto byte layout: a size header, then the upper
//! triangle of the adjacency matrix in column order, packed big-endian into
//! 6-bit chunks offset by 63. Edge lists are plain text, one `u v` pair per
//! line with 0-based indices; `#` starts a comment.

use crate::graph::{Graph, MAX_VERTICES};
use crate::{Error, Result};

const G6_HEADER: &str = ">>graph6<<";

/// Parse a graph6 string (optionally prefixed with `>>graph6<<`).
pub fn parse_graph6(input: &str) -> Result<Graph> {
    let s = input.trim();
    let s = s.strip_prefix(G6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!(
                "graph6 byte {i} out of range: 0x{b:02x}"
            )));
        }
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::Parse("graph6 long-size form not supported".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size header".into()));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b as usize - 63));
        (n, 4)
    } else {
        (bytes[0] as usize - 63, 1)
    };
    if n > MAX_VERTICES {
        return Err(Error::TooLarge { n, max: MAX_VERTICES });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(Error::Parse(format!(
            "graph6 body has {} chunks, expected {need} for n={n}",
            bytes.len() - pos
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut chunk = 0u8;
    let mut left = 0u32;
    for v in 1..n {
        for u in 0..v {
            if left == 0 {
                chunk = bytes[pos] - 63;
                pos += 1;
                left = 6;
            }
            left -= 1;
            if chunk >> left & 1 == 1 {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Write a graph as a graph6 string (no header prefix).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut chunk = 0u8;
    let mut filled = 0u32;
    for v in 1..n {
        for u in 0..v {
            chunk = (chunk << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parse a whitespace edge list: one `u v` pair per line, 0-based indices.
/// Blank lines are skipped and `#` starts a line comment. The vertex count is
/// one more than the largest index mentioned.
pub fn parse_edge_list(input: &str) -> Result<Graph> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_v = None::<usize>;
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse_end = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| Error::Parse(format!("line {}: expected two endpoints", lineno + 1)))?
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("line {}: bad vertex index", lineno + 1)))
        };
        let u = parse_end(it.next())?;
        let v = parse_end(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse(format!(
                "line {}: more than two fields",
                lineno + 1
            )));
        }
        if u == v {
            return Err(Error::Parse(format!("line {}: self-loop {u}", lineno + 1)));
        }
        max_v = Some(max_v.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = max_v.map_or(0, |m| m + 1);
    if n > MAX_VERTICES {
        return Err(Error::TooLarge { n, max: MAX_VERTICES });
    }
    Graph::from_edges(n, &edges)
}

/// Write a graph as an edge list, one edge per line in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Guess the format of an input file: lines of integer pairs (or only
/// blank/comment lines) read as an edge list, anything else as graph6.
pub fn parse_auto(input: &str) -> Result<Graph> {
    let looks_like_edges = input.lines().all(|raw| {
        let line = raw.split('#').next().unwrap_or("").trim();
        line.is_empty()
            || line
                .split_whitespace()
                .all(|tok| tok.chars().all(|c| c.is_ascii_digit()))
    });
    if looks_like_edges && input.lines().any(|l| !l.trim().is_empty()) {
        parse_edge_list(input)
    } else {
        parse_graph6(input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_round_trips_families() {
        for g in [
            Graph::complete(5),
            Graph::petersen(),
            Graph::cycle(7),
            Graph::empty(0).unwrap(),
            Graph::empty(3).unwrap(),
            Graph::icosahedron(),
        ] {
            let s = write_graph6(&g);
            let back = parse_graph6(&s).unwrap();
            assert_eq!(back, g, "round trip failed for {s}");
        }
    }

    #[test]
    fn graph6_known_strings() {
        // K4 is the canonical "C~"; the 5-cycle is "DUW".
        assert_eq!(write_graph6(&Graph::complete(4)), "C~");
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
        let c5 = parse_graph6("DUW").unwrap();
        assert_eq!(c5.n(), 5);
        assert_eq!(c5.edge_count(), 5);
        assert!(c5.vertices().all(|v| c5.degree(v) == 2));
    }

    #[test]
    fn graph6_accepts_header_and_rejects_junk() {
        assert_eq!(
            parse_graph6(">>graph6<<C~").unwrap(),
            Graph::complete(4)
        );
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C~~~").is_err()); // wrong body length
        assert!(parse_graph6("C\u{7f}").is_err()); // byte out of range
    }

    #[test]
    fn graph6_three_byte_size_header() {
        let g = Graph::cycle(63);
        let s = write_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip_and_comments() {
        let text = "# triangle plus pendant\n0 1\n1 2\n2 0\n\n2 3  # pendant\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        let back = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(back, g);
        assert!(parse_edge_list("0 0").is_err());
        assert!(parse_edge_list("0 1 2").is_err());
        assert!(parse_edge_list("0 x").is_err());
    }

    #[test]
    fn auto_detection_picks_the_right_parser() {
        assert_eq!(parse_auto("0 1\n1 2\n").unwrap().n(), 3);
        assert_eq!(parse_auto("C~").unwrap(), Graph::complete(4));
        assert_eq!(parse_auto(">>graph6<<DUW").unwrap().n(), 5);
    }
}
