//! Recognizing the incidence graph of `K_n` among `C₄`-free bipartite graphs.
//!
//! A `C₄`-free graph with `C(n,2)` left vertices, `n` right vertices and
//! `n(n−1)` edges is the incidence graph of `K_n`: counting pairs of right
//! vertices with a common neighbor forces every left degree to be 2, and the
//! left neighborhoods are then distinct 2-subsets, hence all of them. The
//! recognizer follows that argument and returns the neighborhood map.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::grid::{Row, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphError {
    OutOfRange { edge: (usize, usize) },
    Duplicate { edge: (usize, usize) },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::OutOfRange { edge: (x, y) } => write!(f, "edge ({x}, {y}) is out of range"),
            GraphError::Duplicate { edge: (x, y) } => write!(f, "edge ({x}, {y}) appears twice"),
        }
    }
}

impl core::error::Error for GraphError {}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, mut edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if let Some(&e) = edges.iter().find(|(x, y)| *x >= left || *y >= right) {
            return Err(GraphError::OutOfRange { edge: e });
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::Duplicate { edge: w[0] });
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    /// Incidence graph of `K_n`: left vertex `k` is the `k`-th pair of
    /// `{0..n}` in lexicographic order.
    pub fn incidence(n: usize) -> Self {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                edges.push((k, i));
                edges.push((k, j));
                k += 1;
            }
        }
        BipartiteGraph::new(k, n, edges).expect("incidence graph is simple")
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    /// Sorted edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn neighborhoods(&self) -> Vec<Vec<usize>> {
        let mut nbr = alloc::vec![Vec::new(); self.left];
        for &(x, y) in &self.edges {
            nbr[x].push(y);
        }
        nbr
    }
}

/// Two left and two right vertices spanning a 4-cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourCycle {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
}

/// A 4-cycle if two right vertices share two common left neighbors.
pub fn find_c4(g: &BipartiteGraph) -> Option<FourCycle> {
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (x, nbr) in g.neighborhoods().iter().enumerate() {
        for (i, &y1) in nbr.iter().enumerate() {
            for &y2 in &nbr[i + 1..] {
                if let Some(&x1) = seen.get(&(y1, y2)) {
                    return Some(FourCycle { x1, x2: x, y1, y2 });
                }
                seen.insert((y1, y2), x);
            }
        }
    }
    None
}

pub fn is_c4_free(g: &BipartiteGraph) -> bool {
    find_c4(g).is_none()
}

/// Which hypothesis of the recognition fails, checked in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotExtremal {
    Size { left: usize, right: usize },
    EdgeCount { expected: usize, found: usize },
    C4(FourCycle),
    Degree { vertex: usize, degree: usize },
}

impl fmt::Display for NotExtremal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotExtremal::Size { left, right } => {
                write!(f, "size: {left} left vertices is not C({right},2) or fewer than 2 right vertices")
            }
            NotExtremal::EdgeCount { expected, found } => {
                write!(f, "edge count: expected {expected}, found {found}")
            }
            NotExtremal::C4(c) => write!(f, "C4: left {} {} share right {} {}", c.x1, c.x2, c.y1, c.y2),
            NotExtremal::Degree { vertex, degree } => {
                write!(f, "degree: left vertex {vertex} has degree {degree}")
            }
        }
    }
}

/// Right vertex `y` is sent to vertex `y` of `K_n`; left vertex `x` to the
/// row `N(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub left: Vec<Row>,
    pub right: Vec<Vertex>,
}

impl Isomorphism {
    /// Image of the edge set, sorted.
    pub fn apply(&self, g: &BipartiteGraph) -> Vec<(Row, Vertex)> {
        let mut image: Vec<_> = g.edges().iter().map(|&(x, y)| (self.left[x], self.right[y])).collect();
        image.sort_unstable();
        image
    }
}

/// The 1-edges `(row, v)` with `v ∈ row` of `K_n`, sorted.
pub fn incidence_cells(n: usize) -> Vec<(Row, Vertex)> {
    let mut cells = Vec::new();
    for i in 0..n as Vertex {
        for j in i + 1..n as Vertex {
            let row = Row::new(i, j).expect("i < j");
            cells.push((row, i));
            cells.push((row, j));
        }
    }
    cells.sort_unstable();
    cells
}

pub fn recognize_incidence(g: &BipartiteGraph) -> Result<Isomorphism, NotExtremal> {
    let n = g.right();
    if n < 2 || g.left() != n * (n - 1) / 2 {
        return Err(NotExtremal::Size { left: g.left(), right: n });
    }
    let expected = n * (n - 1);
    if g.edges().len() != expected {
        return Err(NotExtremal::EdgeCount { expected, found: g.edges().len() });
    }
    if let Some(c) = find_c4(g) {
        return Err(NotExtremal::C4(c));
    }
    let nbr = g.neighborhoods();
    if let Some((vertex, d)) = nbr.iter().enumerate().find(|(_, d)| d.len() != 2) {
        return Err(NotExtremal::Degree { vertex, degree: d.len() });
    }
    // C4-freeness makes the neighborhoods distinct, so with C(n,2) of them
    // every pair occurs once
    let left = nbr.iter().map(|d| Row::new(d[0] as Vertex, d[1] as Vertex).expect("simple graph")).collect();
    let right = (0..n as Vertex).collect();
    Ok(Isomorphism { left, right })
}
