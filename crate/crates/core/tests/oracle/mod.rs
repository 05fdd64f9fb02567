//! Brute-force references written straight from the definitions, sharing
//! nothing with the library beyond its plain data types.
#![allow(dead_code)]

use zlq_core::{Cell, Row, TwoEdge};

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn rows(q: u32) -> Vec<Row> {
    let mut out = Vec::new();
    for i in 0..=q {
        for j in i + 1..=q {
            out.push(Row::new(i, j).unwrap());
        }
    }
    out
}

pub fn cells(q: u32) -> Vec<Cell> {
    let mut out = Vec::new();
    for r in rows(q) {
        for c in 0..=q {
            if !r.contains(c) {
                out.push(Cell::new(r, c));
            }
        }
    }
    out
}

/// Conditions (S), (C2), (C3) checked cell by cell. The witness may be a
/// 1-edge cell.
pub fn admissible(q: u32, edges: &[TwoEdge]) -> bool {
    admissible_with(q, edges, true)
}

/// As [`admissible`], optionally requiring the (C3) witness to be a
/// 2-edge half.
pub fn admissible_with(q: u32, edges: &[TwoEdge], one_edge_witness: bool) -> bool {
    let halves = |e: &TwoEdge| [e.first(), e.second()];
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if halves(e).iter().any(|h| halves(f).contains(h)) {
                return false;
            }
        }
    }
    let occupied = |c: Cell| c.row.contains(c.col) || edges.iter().any(|e| halves(e).contains(&c));
    for e in edges {
        let (a, b) = (e.first(), e.second());
        if a.row != b.row && a.col != b.col && occupied(Cell::new(a.row, b.col)) && occupied(Cell::new(b.row, a.col)) {
            return false;
        }
        for x in rows(q) {
            if x == a.row || x == b.row {
                continue;
            }
            for y in 0..=q {
                if y == a.col || y == b.col {
                    continue;
                }
                let pattern = [
                    Cell::new(x, y),
                    Cell::new(x, a.col),
                    Cell::new(x, b.col),
                    Cell::new(a.row, y),
                    Cell::new(b.row, y),
                ];
                if !one_edge_witness && x.contains(y) {
                    continue;
                }
                if pattern.iter().all(|&c| occupied(c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Any two left vertices with two common right neighbors.
pub fn has_c4(left: usize, right: usize, edges: &[(usize, usize)]) -> bool {
    let adj = |x: usize, y: usize| edges.contains(&(x, y));
    for x1 in 0..left {
        for x2 in x1 + 1..left {
            let common = (0..right).filter(|&y| adj(x1, y) && adj(x2, y)).count();
            if common >= 2 {
                return true;
            }
        }
    }
    false
}
