//! Text formats: graph files and certificates.
//!
//! A graph file starts with a header `n m` followed by `m` lines `u v` with
//! `0 <= u < v < n`. Lines starting with `#` are comments. Certificates list
//! one pair per line: `u v` for deletion, `u v +` (added) or `u v -`
//! (removed) for editing.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Mode, Pair, PairSet};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("{what} `{tok}` is not a non-negative integer")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n = parse_usize(h[0], hline, "vertex count")?;
    let m = parse_usize(h[1], hline, "edge count")?;
    let mut edges = PairSet::new();
    for (line, content) in lines {
        let t: Vec<&str> = content.split_whitespace().collect();
        if t.len() != 2 {
            return Err(parse_err(line, "edge line must be `u v`"));
        }
        let u = parse_usize(t[0], line, "vertex")?;
        let v = parse_usize(t[1], line, "vertex")?;
        if u >= v {
            return Err(parse_err(line, format!("edge `{u} {v}` must satisfy u < v")));
        }
        if v >= n {
            return Err(parse_err(line, format!("vertex {v} out of range for n = {n}")));
        }
        if !edges.insert(Pair::new(u, v)) {
            return Err(parse_err(line, format!("duplicate edge `{u} {v}`")));
        }
    }
    if edges.len() != m {
        return Err(parse_err(hline, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges.iter().map(|p| (p.u(), p.v())))
}

/// Canonical rendering: header, then edges in ascending order.
pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for e in g.edges().iter() {
        let _ = writeln!(s, "{} {}", e.u(), e.v());
    }
    s
}

/// Parses a certificate for `g`. Editing signs must agree with `g`: `+`
/// marks a non-edge to add, `-` an edge to remove.
pub fn parse_certificate(text: &str, g: &Graph, mode: Mode) -> Result<PairSet> {
    let mut out = PairSet::new();
    for (line, content) in content_lines(text) {
        let t: Vec<&str> = content.split_whitespace().collect();
        let expected = match mode {
            Mode::Deletion => 2,
            Mode::Editing => 3,
        };
        if t.len() != expected {
            let shape = if mode == Mode::Deletion { "`u v`" } else { "`u v +` or `u v -`" };
            return Err(parse_err(line, format!("certificate line must be {shape}")));
        }
        let u = parse_usize(t[0], line, "vertex")?;
        let v = parse_usize(t[1], line, "vertex")?;
        let pair = Pair::try_new(u, v).map_err(|e| parse_err(line, e.to_string()))?;
        if pair.v() >= g.n() {
            return Err(parse_err(line, format!("vertex {} out of range for n = {}", pair.v(), g.n())));
        }
        let edge = g.has_edge(u, v);
        match mode {
            Mode::Deletion if !edge => return Err(parse_err(line, format!("`{u} {v}` is not an edge"))),
            Mode::Editing => {
                let add = match t[2] {
                    "+" => true,
                    "-" | "\u{2212}" => false,
                    other => return Err(parse_err(line, format!("unknown sign `{other}`"))),
                };
                if add == edge {
                    let what = if add { "already an edge" } else { "not an edge" };
                    return Err(parse_err(line, format!("`{u} {v}` is {what}")));
                }
            }
            _ => {}
        }
        if !out.insert(pair) {
            return Err(parse_err(line, format!("duplicate pair `{u} {v}`")));
        }
    }
    Ok(out)
}

pub fn write_certificate(g: &Graph, f: &PairSet, mode: Mode) -> String {
    let mut s = String::new();
    for p in f.iter() {
        match mode {
            Mode::Deletion => {
                let _ = writeln!(s, "{} {}", p.u(), p.v());
            }
            Mode::Editing => {
                let sign = if g.has_edge(p.u(), p.v()) { '-' } else { '+' };
                let _ = writeln!(s, "{} {} {sign}", p.u(), p.v());
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let g = parse_graph("# a path\n4 3\n0 1\n# middle\n1 2\n2 3\n").unwrap();
        assert_eq!(g, Graph::path(4));
        assert_eq!(write_graph(&g), "4 3\n0 1\n1 2\n2 3\n");
        let h = parse_graph("3 2\n1 2\n0 1\n").unwrap();
        assert_eq!(write_graph(&h), "3 2\n0 1\n1 2\n");
        assert_eq!(parse_graph("0 0\n").unwrap().n(), 0);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("4\n", 1),
            ("4 1\n0 9\n", 2),
            ("4 1\n1 0\n", 2),
            ("4 2\n0 1\n0 1\n", 3),
            ("4 2\n0 1\n", 1),
            ("4 1\n# c\n0 x\n", 3),
            ("4 1\n0 1 2\n", 2),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn certificates_round_trip() {
        let g = Graph::path(4);
        let f: PairSet = [(1, 2), (0, 2)].into_iter().collect();
        let text = write_certificate(&g, &f, Mode::Editing);
        assert_eq!(text, "0 2 +\n1 2 -\n");
        assert_eq!(parse_certificate(&text, &g, Mode::Editing).unwrap(), f);
        let d: PairSet = [(1, 2)].into_iter().collect();
        let text = write_certificate(&g, &d, Mode::Deletion);
        assert_eq!(parse_certificate(&text, &g, Mode::Deletion).unwrap(), d);
        assert!(parse_certificate("0 2\n", &g, Mode::Deletion).is_err());
        assert!(parse_certificate("0 1 +\n", &g, Mode::Editing).is_err());
        assert!(parse_certificate("0 1 \u{2212}\n", &g, Mode::Editing).is_ok());
        assert!(parse_certificate("", &g, Mode::Deletion).unwrap().is_empty());
    }
}
