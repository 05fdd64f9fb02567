//! Text formats: family files, solution files and bipartite graph files.
//!
//! A family file looks like
//!
//! ```text
//! # zlq-family v1
//! q 3
//! edge 0 1 2 ; 0 3 1
//! ```
//!
//! `#` starts a comment anywhere on a line. Halves may be given in either
//! order; the written form is canonical and byte-stable.

use std::fmt::Write as _;

use thiserror::Error;
use zlq_core::recognition::{BipartiteGraph, GraphError};
use zlq_core::{Cell, Family, Grid, Row, TwoEdge};

pub const FAMILY_HEADER: &str = "# zlq-family v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the document as a whole.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("missing `q` line")]
    MissingQ,
    #[error("`q` given twice")]
    RepeatedQ,
    #[error("`edge` before `q`")]
    EdgeBeforeQ,
    #[error("q must be at least 2, got {0}")]
    BadQ(u32),
    #[error("vertex {vertex} is out of range for q = {q}")]
    VertexOutOfRange { vertex: u32, q: u32 },
    #[error("row {0},{1} is not a 2-subset")]
    BadRow(u32, u32),
    #[error("cell {0} is a 1-edge cell")]
    OneEdgeCell(String),
    #[error("both halves are the cell {0}")]
    EqualHalves(String),
    #[error("duplicate edge {0} (first on line {1})")]
    Duplicate(String, usize),
    #[error("invalid value {0:?}")]
    BadValue(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Content lines with comments removed, as `(line number, tokens)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(line: usize, token: &str) -> Result<u32, ParseError> {
    token.parse().map_err(|_| err(line, ParseErrorKind::Malformed(format!("expected an integer, got {token:?}"))))
}

fn cell(line: usize, q: u32, t: &[&str]) -> Result<Cell, ParseError> {
    let (i, j, c) = (number(line, t[0])?, number(line, t[1])?, number(line, t[2])?);
    for v in [i, j, c] {
        if v > q {
            return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex: v, q }));
        }
    }
    let row = Row::new(i.min(j), i.max(j)).map_err(|_| err(line, ParseErrorKind::BadRow(i, j)))?;
    Ok(Cell::new(row, c))
}

pub fn parse_family(text: &str) -> Result<Family, ParseError> {
    let mut grid: Option<Grid> = None;
    let mut edges: Vec<(TwoEdge, usize)> = Vec::new();
    for (line, t) in content_lines(text) {
        match t[0] {
            "q" => {
                if t.len() != 2 {
                    return Err(err(line, ParseErrorKind::Malformed("expected `q <integer>`".into())));
                }
                if grid.is_some() {
                    return Err(err(line, ParseErrorKind::RepeatedQ));
                }
                let q = number(line, t[1])?;
                grid = Some(Grid::new(q).map_err(|_| err(line, ParseErrorKind::BadQ(q)))?);
            }
            "edge" => {
                let g = grid.ok_or_else(|| err(line, ParseErrorKind::EdgeBeforeQ))?;
                if t.len() != 8 || t[4] != ";" {
                    return Err(err(line, ParseErrorKind::Malformed("expected `edge i1 i2 c1 ; i4 i5 c2`".into())));
                }
                let a = cell(line, g.q(), &t[1..4])?;
                let b = cell(line, g.q(), &t[5..8])?;
                for half in [a, b] {
                    if half.is_one_edge() {
                        return Err(err(line, ParseErrorKind::OneEdgeCell(half.to_string())));
                    }
                }
                let e = TwoEdge::new(a, b).map_err(|_| err(line, ParseErrorKind::EqualHalves(a.to_string())))?;
                if let Some((_, first)) = edges.iter().find(|(x, _)| *x == e) {
                    return Err(err(line, ParseErrorKind::Duplicate(e.to_string(), *first)));
                }
                edges.push((e, line));
            }
            other => return Err(err(line, ParseErrorKind::Malformed(format!("unknown keyword {other:?}")))),
        }
    }
    let grid = grid.ok_or_else(|| err(0, ParseErrorKind::MissingQ))?;
    Family::new(grid, edges.into_iter().map(|(e, _)| e).collect())
        .map_err(|e| err(0, ParseErrorKind::Malformed(e.to_string())))
}

pub fn serialize_family(family: &Family) -> String {
    let mut out = String::new();
    writeln!(out, "{FAMILY_HEADER}").unwrap();
    writeln!(out, "q {}", family.q()).unwrap();
    for e in family.edges() {
        let (a, b) = (e.first(), e.second());
        writeln!(out, "edge {} {} {} ; {} {} {}", a.row.lo(), a.row.hi(), a.col, b.row.lo(), b.row.hi(), b.col)
            .unwrap();
    }
    out
}

/// `name value` pairs from a solver output. Values within `1e-6` of 0 or 1
/// are accepted; anything else is an error.
pub fn parse_solution(text: &str) -> Result<Vec<(String, bool)>, ParseError> {
    let mut out = Vec::new();
    for (line, t) in content_lines(text) {
        if t.len() != 2 {
            return Err(err(line, ParseErrorKind::Malformed("expected `name value`".into())));
        }
        let v: f64 = t[1].parse().map_err(|_| err(line, ParseErrorKind::BadValue(t[1].into())))?;
        let bit = if v.abs() < 1e-6 {
            false
        } else if (v - 1.0).abs() < 1e-6 {
            true
        } else {
            return Err(err(line, ParseErrorKind::BadValue(t[1].into())));
        };
        out.push((t[0].to_string(), bit));
    }
    Ok(out)
}

/// First line `nL nR`, then one `x y` edge per line.
pub fn parse_graph(text: &str) -> Result<BipartiteGraph, ParseError> {
    let mut lines = content_lines(text);
    let (first, t) = lines.next().ok_or_else(|| err(0, ParseErrorKind::Malformed("empty graph file".into())))?;
    if t.len() != 2 {
        return Err(err(first, ParseErrorKind::Malformed("expected `nL nR`".into())));
    }
    let (left, right) = (number(first, t[0])? as usize, number(first, t[1])? as usize);
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    for (line, t) in lines {
        if t.len() != 2 {
            return Err(err(line, ParseErrorKind::Malformed("expected `x y`".into())));
        }
        edges.push((number(line, t[0])? as usize, number(line, t[1])? as usize));
        origin.push(line);
    }
    BipartiteGraph::new(left, right, edges.clone()).map_err(|e| {
        let bad = match e {
            GraphError::OutOfRange { edge } | GraphError::Duplicate { edge } => edge,
        };
        // report the last line mentioning the edge: the duplicate, or the only one
        let line = edges.iter().rposition(|x| *x == bad).map_or(0, |i| origin[i]);
        err(line, ParseErrorKind::Graph(e))
    })
}

pub fn serialize_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("{} {}\n", g.left(), g.right());
    for (x, y) in g.edges() {
        writeln!(out, "{x} {y}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q3: &str = "# zlq-family v1\nq 3\nedge 0 1 2 ; 0 3 1\nedge 1 3 2 ; 2 3 0\n";

    #[test]
    fn round_trip_is_byte_stable() {
        let f = parse_family(Q3).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(serialize_family(&f), Q3);
        assert_eq!(serialize_family(&parse_family(&serialize_family(&f)).unwrap()), Q3);
    }

    #[test]
    fn halves_in_either_order() {
        let swapped = "q 3\nedge 2 3 0 ; 1 3 2 # reversed\nedge 0 3 1 ; 1 0 2\n";
        assert_eq!(serialize_family(&parse_family(swapped).unwrap()), Q3);
    }

    #[test]
    fn rejects_one_edge_cell() {
        let e = parse_family("q 3\nedge 0 1 0 ; 2 3 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::OneEdgeCell(_)));
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            ("edge 0 1 2 ; 0 3 1\n", 1),
            ("q 3\nedge 0 1 2 ; 0 4 1\n", 2),
            ("q 3\nedge 0 1 2 0 3 1\n", 2),
            ("q 3\n\nedge 0 1 2 ; 0 3 1\nedge 0 3 1 ; 0 1 2\n", 4),
            ("q 3\nedge 0 1 2 ; 0 1 2\n", 2),
            ("q 3\nedge 1 1 2 ; 0 3 1\n", 2),
            ("q 3\nq 3\n", 2),
            ("q 1\n", 1),
            ("q x\n", 1),
            ("vertex 3\n", 1),
        ];
        for (doc, line) in cases {
            let e = parse_family(doc).unwrap_err();
            assert_eq!(e.line, line, "{doc:?}: {e}");
        }
        assert_eq!(parse_family("# nothing\n").unwrap_err().kind, ParseErrorKind::MissingQ);
    }

    #[test]
    fn solution_lines() {
        let s = parse_solution("# objective 2\nx_0 1\nx_1 0.0000000001\no_0_1_2 1.0\n").unwrap();
        assert_eq!(s, [("x_0".into(), true), ("x_1".into(), false), ("o_0_1_2".into(), true)]);
        assert_eq!(parse_solution("x_0 0.5\n").unwrap_err().line, 1);
        assert_eq!(parse_solution("x_0\n").unwrap_err().line, 1);
    }

    #[test]
    fn graph_round_trip() {
        let g = BipartiteGraph::incidence(4);
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
        let e = parse_graph("1 2\n0 0\n0 1\n0 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(parse_graph("1 2\n0 2\n").unwrap_err().line, 2);
    }
}
