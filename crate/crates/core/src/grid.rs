//! The board of the incidence graph of `K_{q+1}`.
//!
//! Rows are the 2-subsets `{i, j}` of the vertex set `{0, …, q}` and columns
//! are the vertices themselves. The cell `(r, c)` is a fixed 1-edge exactly
//! when `c ∈ r`; every other cell is *available* for a half of a 2-edge.
//!
//! # Dense indexing
//!
//! Boards are stored as flat arrays. Rows are numbered in lexicographic order
//! of `(i, j)`, and the cell `(r, c)` has index `row_index(r) * (q + 1) + c`.
//! This scheme is internal; files always use vertex labels.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Vertex label in `{0, …, q}`.
pub type Vertex = u32;

/// Board geometry for a fixed `q ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    q: u32,
}

impl Grid {
    pub fn new(q: u32) -> Result<Self, Error> {
        if q < 2 {
            return Err(Error::Parameter { q });
        }
        Ok(Grid { q })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of columns, `n = q + 1`.
    #[inline]
    pub fn columns(&self) -> usize {
        self.q as usize + 1
    }

    /// Number of rows, `m = C(q+1, 2)`.
    #[inline]
    pub fn row_count(&self) -> usize {
        let n = self.columns();
        n * (n - 1) / 2
    }

    #[inline]
    pub fn cell_count(&self) -> usize {
        self.row_count() * self.columns()
    }

    /// `|A_q| = C(q+1, 2) · (q − 1)`.
    #[inline]
    pub fn available_count(&self) -> usize {
        self.row_count() * (self.q as usize - 1)
    }

    /// `z(C(q+1,2), q+1) = q(q+1)`, which is also `|E_1|`.
    #[inline]
    pub fn zarankiewicz(&self) -> u64 {
        let q = self.q as u64;
        q * (q + 1)
    }

    pub fn contains_row(&self, row: Row) -> bool {
        row.hi <= self.q
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        self.contains_row(cell.row) && cell.col <= self.q
    }

    pub fn contains_edge(&self, edge: &TwoEdge) -> bool {
        self.contains_cell(edge.first()) && self.contains_cell(edge.second())
    }

    #[inline]
    pub fn row_index(&self, row: Row) -> usize {
        let n = self.columns();
        let (i, j) = (row.lo as usize, row.hi as usize);
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    pub fn row_at(&self, mut index: usize) -> Row {
        let n = self.columns() as u32;
        for i in 0..n {
            let len = (n - i - 1) as usize;
            if index < len {
                return Row { lo: i, hi: i + 1 + index as u32 };
            }
            index -= len;
        }
        panic!("row index out of range");
    }

    #[inline]
    pub fn cell_index(&self, cell: Cell) -> usize {
        self.row_index(cell.row) * self.columns() + cell.col as usize
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        let n = self.columns();
        Cell { row: self.row_at(index / n), col: (index % n) as u32 }
    }

    /// All rows in lexicographic order.
    pub fn rows(&self) -> impl Iterator<Item = Row> + Clone {
        let q = self.q;
        (0..=q).flat_map(move |i| (i + 1..=q).map(move |j| Row { lo: i, hi: j }))
    }

    /// All available cells in lexicographic order.
    pub fn available_cells(&self) -> impl Iterator<Item = Cell> + Clone {
        let q = self.q;
        self.rows().flat_map(move |row| (0..=q).map(move |col| Cell { row, col })).filter(|cell| cell.is_available())
    }

    /// Streaming enumeration of the candidate family in canonical order.
    pub fn candidates(&self, mode: CandidateMode) -> impl Iterator<Item = TwoEdge> + '_ {
        let cells: Vec<Cell> = self.available_cells().collect();
        let len = cells.len();
        (0..len)
            .flat_map(move |i| (i + 1..len).map(move |j| (i, j)))
            .map(move |(i, j)| TwoEdge { a: cells[i], b: cells[j] })
            .filter(move |e| mode.admits(e))
    }

    /// Image of `row` under a vertex permutation.
    pub fn permute_row(&self, row: Row, perm: &[Vertex]) -> Row {
        Row::from_pair(perm[row.lo as usize], perm[row.hi as usize])
    }

    pub fn permute_cell(&self, cell: Cell, perm: &[Vertex]) -> Cell {
        Cell { row: self.permute_row(cell.row, perm), col: perm[cell.col as usize] }
    }

    pub fn permute_edge(&self, edge: &TwoEdge, perm: &[Vertex]) -> TwoEdge {
        TwoEdge::from_halves(self.permute_cell(edge.a, perm), self.permute_cell(edge.b, perm))
    }
}

/// Unordered pair `{lo, hi}` of distinct vertices, `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row {
    lo: Vertex,
    hi: Vertex,
}

impl Row {
    pub fn new(i: Vertex, j: Vertex) -> Result<Self, Error> {
        if i == j {
            return Err(Error::DegenerateRow { vertex: i });
        }
        Ok(Row::from_pair(i, j))
    }

    #[inline]
    fn from_pair(i: Vertex, j: Vertex) -> Self {
        debug_assert_ne!(i, j);
        if i < j {
            Row { lo: i, hi: j }
        } else {
            Row { lo: j, hi: i }
        }
    }

    #[inline]
    pub fn lo(&self) -> Vertex {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> Vertex {
        self.hi
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.lo, self.hi)
    }
}

/// A `(row, column)` position on the board.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: Row,
    pub col: Vertex,
}

impl Cell {
    pub fn new(row: Row, col: Vertex) -> Self {
        Cell { row, col }
    }

    /// `true` iff this cell is a fixed 1-edge of the incidence graph.
    #[inline]
    pub fn is_one_edge(&self) -> bool {
        self.row.contains(self.col)
    }

    #[inline]
    pub fn is_available(&self) -> bool {
        !self.is_one_edge()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.row, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degeneracy {
    Nondegenerate,
    RowDegenerate,
    ColumnDegenerate,
}

/// Which 2-edges a candidate family contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CandidateMode {
    #[default]
    Full,
    NondegenerateOnly,
}

impl CandidateMode {
    #[inline]
    pub fn admits(&self, edge: &TwoEdge) -> bool {
        match self {
            CandidateMode::Full => true,
            CandidateMode::NondegenerateOnly => edge.degeneracy() == Degeneracy::Nondegenerate,
        }
    }
}

/// A 2-edge: an unordered pair of distinct available cells, stored with
/// `first() < second()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoEdge {
    a: Cell,
    b: Cell,
}

impl TwoEdge {
    pub fn new(x: Cell, y: Cell) -> Result<Self, Error> {
        for cell in [x, y] {
            if cell.is_one_edge() {
                return Err(Error::OneEdgeCell(cell));
            }
        }
        if x == y {
            return Err(Error::EqualHalves(x));
        }
        Ok(TwoEdge::from_halves(x, y))
    }

    #[inline]
    fn from_halves(x: Cell, y: Cell) -> Self {
        if x <= y {
            TwoEdge { a: x, b: y }
        } else {
            TwoEdge { a: y, b: x }
        }
    }

    /// Convenience constructor from vertex labels `(i1 i2, c1; i4 i5, c2)`.
    pub fn from_labels(
        (i1, i2, c1): (Vertex, Vertex, Vertex),
        (i4, i5, c2): (Vertex, Vertex, Vertex),
    ) -> Result<Self, Error> {
        TwoEdge::new(Cell::new(Row::new(i1, i2)?, c1), Cell::new(Row::new(i4, i5)?, c2))
    }

    #[inline]
    pub fn first(&self) -> Cell {
        self.a
    }

    #[inline]
    pub fn second(&self) -> Cell {
        self.b
    }

    pub fn degeneracy(&self) -> Degeneracy {
        let same_row = self.a.row == self.b.row;
        let same_col = self.a.col == self.b.col;
        match (same_row, same_col) {
            (false, false) => Degeneracy::Nondegenerate,
            (true, false) => Degeneracy::RowDegenerate,
            (false, true) => Degeneracy::ColumnDegenerate,
            (true, true) => unreachable!("halves are distinct"),
        }
    }

    /// The two opposite cells `(r₁, c₂)` and `(r₂, c₁)`.
    pub fn opposite_cells(&self) -> (Cell, Cell) {
        (Cell::new(self.a.row, self.b.col), Cell::new(self.b.row, self.a.col))
    }

    /// `true` if some row or column of this edge involves `v`.
    pub fn touches_vertex(&self, v: Vertex) -> bool {
        [self.a, self.b].iter().any(|c| c.row.contains(v) || c.col == v)
    }
}

/// Classify a 2-edge by the row/column test.
pub fn classify(edge: &TwoEdge) -> Degeneracy {
    edge.degeneracy()
}

impl fmt::Display for TwoEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}{},{};{}{},{})",
            self.a.row.lo, self.a.row.hi, self.a.col, self.b.row.lo, self.b.row.hi, self.b.col
        )
    }
}

/// A set of 2-edges on the `q`-board, kept in canonical order.
///
/// Duplicates are representable so that the verifier can report them as
/// simplicity violations; the family file parser refuses them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    grid: Grid,
    edges: Vec<TwoEdge>,
}

impl Family {
    pub fn empty(grid: Grid) -> Self {
        Family { grid, edges: Vec::new() }
    }

    pub fn new(grid: Grid, mut edges: Vec<TwoEdge>) -> Result<Self, Error> {
        if let Some(edge) = edges.iter().find(|e| !grid.contains_edge(e)) {
            return Err(Error::OutOfRange { q: grid.q(), edge: *edge });
        }
        edges.sort_unstable();
        Ok(Family { grid, edges })
    }

    #[inline]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.grid.q()
    }

    #[inline]
    pub fn edges(&self) -> &[TwoEdge] {
        &self.edges
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: &TwoEdge) -> bool {
        self.edges.binary_search(edge).is_ok()
    }

    /// Insert keeping canonical order; duplicates are kept.
    pub fn push(&mut self, edge: TwoEdge) -> Result<(), Error> {
        if !self.grid.contains_edge(&edge) {
            return Err(Error::OutOfRange { q: self.q(), edge });
        }
        let at = self.edges.partition_point(|e| e <= &edge);
        self.edges.insert(at, edge);
        Ok(())
    }

    pub fn has_duplicates(&self) -> bool {
        self.edges.windows(2).any(|w| w[0] == w[1])
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.edges.iter().all(|e| e.degeneracy() == Degeneracy::Nondegenerate)
    }

    /// The subfamily selected by `keep` (indices into canonical order).
    pub fn subfamily(&self, keep: impl Fn(usize) -> bool) -> Family {
        let edges = self.edges.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, e)| *e).collect();
        Family { grid: self.grid, edges }
    }

    /// Reinterpret on a larger board with the same labels.
    pub fn embed(&self, grid: Grid) -> Result<Family, Error> {
        Family::new(grid, self.edges.clone())
    }
}

/// Counting record for the `q`-board.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountingSummary {
    pub q: u32,
    pub rows: u64,
    pub columns: u64,
    pub one_edges: u64,
    pub available: u64,
    pub full: u64,
    pub nondegenerate: u64,
    pub row_degenerate: u64,
    pub column_degenerate: u64,
    pub z: u64,
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub fn counting_summary(q: u32) -> Result<CountingSummary, Error> {
    let grid = Grid::new(q)?;
    let q64 = q as u64;
    let rows = choose2(q64 + 1);
    let available = grid.available_count() as u64;
    let full = choose2(available);
    // a row-degenerate pair picks 2 of the q-1 free columns in one row; a
    // column-degenerate pair picks 2 of the C(q,2) rows avoiding one column
    let row_degenerate = rows * choose2(q64 - 1);
    let column_degenerate = (q64 + 1) * choose2(choose2(q64));
    Ok(CountingSummary {
        q,
        rows,
        columns: q64 + 1,
        one_edges: 2 * rows,
        available,
        full,
        nondegenerate: full - row_degenerate - column_degenerate,
        row_degenerate,
        column_degenerate,
        z: grid.zarankiewicz(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(x: (u32, u32, u32), y: (u32, u32, u32)) -> TwoEdge {
        TwoEdge::from_labels(x, y).unwrap()
    }

    #[test]
    fn rejects_small_q() {
        assert_eq!(Grid::new(1), Err(Error::Parameter { q: 1 }));
        assert!(Grid::new(0).is_err());
    }

    #[test]
    fn row_lists() {
        let g2 = Grid::new(2).unwrap();
        let rows: Vec<_> = g2.rows().collect();
        assert_eq!(rows, [Row::new(0, 1).unwrap(), Row::new(0, 2).unwrap(), Row::new(1, 2).unwrap()]);
        assert_eq!(Grid::new(3).unwrap().rows().count(), 6);
        assert_eq!(Grid::new(7).unwrap().rows().count(), 28);
    }

    #[test]
    fn dense_indices_are_consistent() {
        for q in 2..=9 {
            let g = Grid::new(q).unwrap();
            for (k, row) in g.rows().enumerate() {
                assert_eq!(g.row_index(row), k);
                assert_eq!(g.row_at(k), row);
            }
            for idx in 0..g.cell_count() {
                assert_eq!(g.cell_index(g.cell_at(idx)), idx);
            }
        }
    }

    #[test]
    fn available_cell_counts() {
        assert_eq!(Grid::new(2).unwrap().available_cells().count(), 3);
        assert_eq!(Grid::new(5).unwrap().available_cells().count(), 60);
        for q in 2..=8 {
            let g = Grid::new(q).unwrap();
            let direct =
                g.rows().flat_map(|r| (0..=q).map(move |c| Cell::new(r, c))).filter(|c| !c.row.contains(c.col)).count();
            assert_eq!(g.available_cells().count(), direct);
            assert_eq!(g.available_count(), direct);
        }
    }

    #[test]
    fn candidate_counts() {
        let g3 = Grid::new(3).unwrap();
        assert_eq!(g3.candidates(CandidateMode::Full).count(), 66);
        assert_eq!(Grid::new(4).unwrap().candidates(CandidateMode::Full).count(), 435);
        let g5 = Grid::new(5).unwrap();
        assert_eq!(g5.candidates(CandidateMode::NondegenerateOnly).count(), 1410);
        assert_eq!(g5.candidates(CandidateMode::Full).count(), 1770);
    }

    #[test]
    fn candidates_are_canonical_and_sorted() {
        let g = Grid::new(3).unwrap();
        let all: Vec<_> = g.candidates(CandidateMode::Full).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|e| e.first() < e.second()));
    }

    #[test]
    fn classification() {
        assert_eq!(edge((0, 1, 2), (0, 3, 1)).degeneracy(), Degeneracy::Nondegenerate);
        assert_eq!(edge((0, 1, 2), (0, 1, 3)).degeneracy(), Degeneracy::RowDegenerate);
        assert_eq!(edge((0, 1, 2), (3, 4, 2)).degeneracy(), Degeneracy::ColumnDegenerate);
    }

    #[test]
    fn q3_class_sizes_by_enumeration() {
        let g = Grid::new(3).unwrap();
        let mut counts = [0u64; 3];
        for e in g.candidates(CandidateMode::Full) {
            counts[match classify(&e) {
                Degeneracy::Nondegenerate => 0,
                Degeneracy::RowDegenerate => 1,
                Degeneracy::ColumnDegenerate => 2,
            }] += 1;
        }
        assert_eq!(counts, [48, 6, 12]);
        let s = counting_summary(3).unwrap();
        assert_eq!((s.nondegenerate, s.row_degenerate, s.column_degenerate), (48, 6, 12));
    }

    #[test]
    fn summary_matches_enumeration() {
        for q in 2..=7 {
            let s = counting_summary(q).unwrap();
            let g = Grid::new(q).unwrap();
            let mut by_class = [0u64; 3];
            let mut full = 0;
            for e in g.candidates(CandidateMode::Full) {
                full += 1;
                by_class[e.degeneracy() as usize] += 1;
            }
            assert_eq!(s.full, full);
            assert_eq!(s.nondegenerate, by_class[0]);
            assert_eq!(s.row_degenerate, by_class[1]);
            assert_eq!(s.column_degenerate, by_class[2]);
            assert_eq!(s.z, (q * (q + 1)) as u64);
            assert_eq!(s.one_edges, s.z);
        }
        let s5 = counting_summary(5).unwrap();
        assert_eq!((s5.available, s5.full, s5.nondegenerate), (60, 1770, 1410));
        assert_eq!(counting_summary(4).unwrap().z, 20);
    }

    #[test]
    fn rejects_bad_edges() {
        let r01 = Row::new(0, 1).unwrap();
        let r23 = Row::new(2, 3).unwrap();
        assert!(matches!(TwoEdge::new(Cell::new(r01, 0), Cell::new(r23, 1)), Err(Error::OneEdgeCell(_))));
        assert!(matches!(TwoEdge::new(Cell::new(r01, 2), Cell::new(r01, 2)), Err(Error::EqualHalves(_))));
        assert!(Row::new(3, 3).is_err());
        let g = Grid::new(3).unwrap();
        assert!(Family::new(g, alloc::vec![edge((0, 1, 2), (3, 4, 0))]).is_err());
    }

    #[test]
    fn family_keeps_canonical_order() {
        let g = Grid::new(3).unwrap();
        let f = Family::new(g, alloc::vec![edge((2, 3, 0), (1, 3, 2)), edge((0, 3, 1), (0, 1, 2))]).unwrap();
        assert_eq!(f.edges()[0], edge((0, 1, 2), (0, 3, 1)));
        assert_eq!(f.edges()[1], edge((1, 3, 2), (2, 3, 0)));
    }
}
