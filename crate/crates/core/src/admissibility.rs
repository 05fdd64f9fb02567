//! Exact checks of the three admissibility conditions.
//!
//! * **(S)** no two halves (and no half and a 1-edge) share a cell;
//! * **(C2)** for a nondegenerate edge the opposite cells `(r₁,c₂)` and
//!   `(r₂,c₁)` are not both occupied;
//! * **(C3)** no witness `(x, y)` with `x ∉ {r₁,r₂}`, `y ∉ {c₁,c₂}` has the
//!   five cells `(x,y) (x,c₁) (x,c₂) (r₁,y) (r₂,y)` all occupied.
//!
//! "Occupied" always means a 1-edge cell or a half of any 2-edge in the
//! family, including edges added after the one being checked. The witness
//! cell `(x, y)` may itself be a 1-edge cell.

use alloc::vec::Vec;
use core::fmt;

use crate::grid::{Cell, Degeneracy, Family, Grid, TwoEdge};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellStatus {
    OneEdge,
    UsedBy(u32),
    Free,
}

/// Dense coordinates of a 2-edge: row indices and columns of both halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeIx {
    pub r1: u32,
    pub c1: u32,
    pub r2: u32,
    pub c2: u32,
}

impl EdgeIx {
    pub fn new(grid: Grid, edge: &TwoEdge) -> Self {
        let (a, b) = (edge.first(), edge.second());
        EdgeIx { r1: grid.row_index(a.row) as u32, c1: a.col, r2: grid.row_index(b.row) as u32, c2: b.col }
    }

    #[inline]
    fn nondegenerate(&self) -> bool {
        self.r1 != self.r2 && self.c1 != self.c2
    }

    #[inline]
    pub fn halves(&self, n: usize) -> [usize; 2] {
        [at(n, self.r1, self.c1), at(n, self.r2, self.c2)]
    }
}

#[inline]
fn at(n: usize, row: u32, col: u32) -> usize {
    row as usize * n + col as usize
}

/// Read access to cell occupancy by dense index.
pub(crate) trait Occupancy {
    fn grid(&self) -> Grid;
    fn occupied(&self, cell: usize) -> bool;
}

/// A board with two extra cells marked occupied, without mutating it.
struct Overlay<'a> {
    board: &'a Board,
    extra: [usize; 2],
}

impl Occupancy for Overlay<'_> {
    #[inline]
    fn grid(&self) -> Grid {
        self.board.grid
    }

    #[inline]
    fn occupied(&self, cell: usize) -> bool {
        cell == self.extra[0] || cell == self.extra[1] || self.board.occupied(cell)
    }
}

/// Occupancy state: the fixed 1-edges plus the halves of placed 2-edges.
///
/// Edge ids are slot numbers; a board built from a family uses the family's
/// canonical index as the id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board {
    grid: Grid,
    status: Vec<CellStatus>,
    slots: Vec<Option<TwoEdge>>,
    vacant: Vec<u32>,
    live: usize,
}

impl Occupancy for Board {
    #[inline]
    fn grid(&self) -> Grid {
        self.grid
    }

    #[inline]
    fn occupied(&self, cell: usize) -> bool {
        self.status[cell] != CellStatus::Free
    }
}

impl Board {
    /// The bare board: only the 1-edges are occupied.
    pub fn new(grid: Grid) -> Self {
        let status = (0..grid.cell_count())
            .map(|i| if grid.cell_at(i).is_one_edge() { CellStatus::OneEdge } else { CellStatus::Free })
            .collect();
        Board { grid, status, slots: Vec::new(), vacant: Vec::new(), live: 0 }
    }

    /// Builds the board for `family`, failing with the (S) violations if
    /// any cell is claimed twice.
    pub fn build(family: &Family) -> Result<Board, Vec<Violation>> {
        let (board, conflicts) = Board::build_lenient(family);
        if conflicts.is_empty() {
            Ok(board)
        } else {
            Err(conflicts)
        }
    }

    /// Places every edge; a cell claimed twice stays with its first owner and
    /// the clash is reported.
    pub fn build_lenient(family: &Family) -> (Board, Vec<Violation>) {
        let mut board = Board::new(family.grid());
        let mut conflicts = Vec::new();
        let n = board.grid.columns();
        for (id, edge) in family.edges().iter().enumerate() {
            board.slots.push(Some(*edge));
            board.live += 1;
            for (cell, idx) in [edge.first(), edge.second()].into_iter().zip(EdgeIx::new(board.grid, edge).halves(n)) {
                match board.status[idx] {
                    CellStatus::Free => board.status[idx] = CellStatus::UsedBy(id as u32),
                    CellStatus::UsedBy(owner) => conflicts.push(Violation {
                        kind: ViolationKind::S,
                        edges: alloc::vec![owner as usize, id],
                        cells: alloc::vec![cell],
                        witness: None,
                    }),
                    CellStatus::OneEdge => unreachable!("2-edge halves are available cells"),
                }
            }
        }
        (board, conflicts)
    }

    #[inline]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn status(&self, cell: Cell) -> CellStatus {
        self.status[self.grid.cell_index(cell)]
    }

    pub fn is_occupied(&self, cell: Cell) -> bool {
        self.occupied(self.grid.cell_index(cell))
    }

    pub fn count(&self, status: impl Fn(CellStatus) -> bool) -> usize {
        self.status.iter().filter(|s| status(**s)).count()
    }

    pub fn free_cells(&self) -> usize {
        self.count(|s| s == CellStatus::Free)
    }

    /// Number of placed 2-edges.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, TwoEdge)> + '_ {
        self.slots.iter().enumerate().filter_map(|(i, e)| e.map(|e| (i, e)))
    }

    pub fn id_of(&self, edge: &TwoEdge) -> Option<usize> {
        self.slots.iter().position(|e| e.as_ref() == Some(edge))
    }

    pub fn family(&self) -> Family {
        Family::new(self.grid, self.edges().map(|(_, e)| e).collect()).expect("edges fit the board")
    }

    /// `true` iff both halves of `edge` are free.
    pub fn is_free_for(&self, edge: &TwoEdge) -> bool {
        let n = self.grid.columns();
        EdgeIx::new(self.grid, edge).halves(n).iter().all(|&i| self.status[i] == CellStatus::Free)
    }

    /// Places `edge` without checking (C2)/(C3). Returns the edge id, or
    /// `None` if a half is not free.
    pub fn insert(&mut self, edge: TwoEdge) -> Option<usize> {
        if !self.grid.contains_edge(&edge) || !self.is_free_for(&edge) {
            return None;
        }
        let id = match self.vacant.pop() {
            Some(id) => {
                self.slots[id as usize] = Some(edge);
                id as usize
            }
            None => {
                self.slots.push(Some(edge));
                self.slots.len() - 1
            }
        };
        let n = self.grid.columns();
        for idx in EdgeIx::new(self.grid, &edge).halves(n) {
            self.status[idx] = CellStatus::UsedBy(id as u32);
        }
        self.live += 1;
        Some(id)
    }

    pub fn remove(&mut self, id: usize) -> Option<TwoEdge> {
        let edge = self.slots.get_mut(id)?.take()?;
        let n = self.grid.columns();
        for idx in EdgeIx::new(self.grid, &edge).halves(n) {
            if self.status[idx] == CellStatus::UsedBy(id as u32) {
                self.status[idx] = CellStatus::Free;
            }
        }
        self.vacant.push(id as u32);
        self.live -= 1;
        Some(edge)
    }

    /// Incremental admissibility: assuming the placed family is admissible,
    /// returns whether it stays admissible after adding `edge`.
    pub fn can_insert(&self, edge: &TwoEdge) -> bool {
        if !self.grid.contains_edge(edge) || !self.is_free_for(edge) {
            return false;
        }
        self.can_insert_ix(&EdgeIx::new(self.grid, edge))
    }

    /// As [`Board::can_insert`] for an edge already known to be free and on
    /// the board.
    pub fn can_insert_ix(&self, ix: &EdgeIx) -> bool {
        let n = self.grid.columns();
        let [a, b] = ix.halves(n);
        debug_assert!(!self.occupied(a) && !self.occupied(b));
        let view = Overlay { board: self, extra: [a, b] };
        if c2_blocked(&view, ix) || c3_any(&view, ix) {
            return false;
        }
        for placed in self.slots.iter().flatten() {
            let f = EdgeIx::new(self.grid, placed);
            for (row, col) in [(ix.r1, ix.c1), (ix.r2, ix.c2)] {
                if c2_through(&view, &f, row, col) || c3_through(&view, &f, row, col) {
                    return false;
                }
            }
        }
        true
    }
}

/// `true` if `edge` cannot be admissible in any family on the `q`-board:
/// its constraints are already violated by the 1-edges alone.
pub fn statically_infeasible(grid: Grid, edge: &TwoEdge) -> bool {
    !Board::new(grid).can_insert(edge)
}

pub(crate) fn c2_blocked(occ: &impl Occupancy, e: &EdgeIx) -> bool {
    let n = occ.grid().columns();
    e.nondegenerate() && occ.occupied(at(n, e.r1, e.c2)) && occ.occupied(at(n, e.r2, e.c1))
}

/// (C2) violation of `f` that uses the cell `(row, col)`.
fn c2_through(occ: &impl Occupancy, f: &EdgeIx, row: u32, col: u32) -> bool {
    let is_opposite = (row == f.r1 && col == f.c2) || (row == f.r2 && col == f.c1);
    is_opposite && c2_blocked(occ, f)
}

/// Calls `visit(x, y)` for every violated (C3) witness of `e` until it
/// returns `false`.
pub(crate) fn c3_witnesses(occ: &impl Occupancy, e: &EdgeIx, mut visit: impl FnMut(u32, u32) -> bool) {
    let grid = occ.grid();
    let n = grid.columns();
    for x in 0..grid.row_count() as u32 {
        if x == e.r1 || x == e.r2 || !occ.occupied(at(n, x, e.c1)) || !occ.occupied(at(n, x, e.c2)) {
            continue;
        }
        for y in 0..n as u32 {
            if y == e.c1 || y == e.c2 {
                continue;
            }
            if occ.occupied(at(n, e.r1, y)) && occ.occupied(at(n, e.r2, y)) && occ.occupied(at(n, x, y)) && !visit(x, y)
            {
                return;
            }
        }
    }
}

pub(crate) fn c3_any(occ: &impl Occupancy, e: &EdgeIx) -> bool {
    let mut found = false;
    c3_witnesses(occ, e, |_, _| {
        found = true;
        false
    });
    found
}

/// (C3) violation of `f` in which `(row, col)` is one of the five cells.
fn c3_through(occ: &impl Occupancy, f: &EdgeIx, row: u32, col: u32) -> bool {
    let grid = occ.grid();
    let n = grid.columns();
    let in_rows = row == f.r1 || row == f.r2;
    let in_cols = col == f.c1 || col == f.c2;
    match (in_rows, in_cols) {
        // the cell is the witness (x, y) itself
        (false, false) => {
            occ.occupied(at(n, row, f.c1))
                && occ.occupied(at(n, row, f.c2))
                && occ.occupied(at(n, f.r1, col))
                && occ.occupied(at(n, f.r2, col))
        }
        // the cell is (x, c₁) or (x, c₂)
        (false, true) => {
            let x = row;
            occ.occupied(at(n, x, f.c1))
                && occ.occupied(at(n, x, f.c2))
                && (0..n as u32).any(|y| {
                    y != f.c1
                        && y != f.c2
                        && occ.occupied(at(n, x, y))
                        && occ.occupied(at(n, f.r1, y))
                        && occ.occupied(at(n, f.r2, y))
                })
        }
        // the cell is (r₁, y) or (r₂, y)
        (true, false) => {
            let y = col;
            occ.occupied(at(n, f.r1, y))
                && occ.occupied(at(n, f.r2, y))
                && (0..grid.row_count() as u32).any(|x| {
                    x != f.r1
                        && x != f.r2
                        && occ.occupied(at(n, x, y))
                        && occ.occupied(at(n, x, f.c1))
                        && occ.occupied(at(n, x, f.c2))
                })
        }
        (true, true) => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    S,
    C2,
    C3,
}

/// One violated condition with the cells that witness it.
///
/// `edges` are indices in canonical family order. For (C3) the five cells are
/// listed in the order `(x,y) (x,c₁) (x,c₂) (r₁,y) (r₂,y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub kind: ViolationKind,
    pub edges: Vec<usize>,
    pub cells: Vec<Cell>,
    pub witness: Option<Cell>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edge = self.edges.first().copied();
        match self.kind {
            ViolationKind::S => {
                write!(f, "S cell={} edges=[", self.cells[0])?;
                for (i, e) in self.edges.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("]")
            }
            ViolationKind::C2 => {
                f.write_str("C2 edge=")?;
                write_edge(f, edge)?;
                write!(f, " cells={},{}", self.cells[0], self.cells[1])
            }
            ViolationKind::C3 => {
                f.write_str("C3 edge=")?;
                write_edge(f, edge)?;
                let w = self.witness.expect("C3 violations carry a witness");
                write!(f, " witness={w} cells=")?;
                for (i, c) in self.cells.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

fn write_edge(f: &mut fmt::Formatter<'_>, edge: Option<usize>) -> fmt::Result {
    match edge {
        Some(k) => write!(f, "{k}"),
        None => f.write_str("new"),
    }
}

/// (C2) check of `edge` against the board's occupancy. `edge` may be placed
/// on the board or merely proposed.
pub fn check_c2(board: &Board, edge: &TwoEdge) -> Option<Violation> {
    let ix = EdgeIx::new(board.grid, edge);
    if !c2_blocked(board, &ix) {
        return None;
    }
    let (p, q) = edge.opposite_cells();
    Some(Violation {
        kind: ViolationKind::C2,
        edges: board.id_of(edge).into_iter().collect(),
        cells: alloc::vec![p, q],
        witness: None,
    })
}

/// Every (C3) witness of `edge` against the board's occupancy.
pub fn check_c3(board: &Board, edge: &TwoEdge) -> Vec<Violation> {
    let grid = board.grid;
    let ix = EdgeIx::new(grid, edge);
    let id: Vec<usize> = board.id_of(edge).into_iter().collect();
    let (r1, r2) = (edge.first().row, edge.second().row);
    let (c1, c2) = (ix.c1, ix.c2);
    let mut out = Vec::new();
    c3_witnesses(board, &ix, |x, y| {
        let xr = grid.row_at(x as usize);
        let cells =
            alloc::vec![Cell::new(xr, y), Cell::new(xr, c1), Cell::new(xr, c2), Cell::new(r1, y), Cell::new(r2, y),];
        if edge.degeneracy() == Degeneracy::Nondegenerate {
            debug_assert!(
                cells.iter().enumerate().all(|(i, a)| cells[i + 1..].iter().all(|b| a != b)),
                "nondegenerate witness cells must be pairwise distinct"
            );
        }
        out.push(Violation { kind: ViolationKind::C3, edges: id.clone(), cells, witness: Some(Cell::new(xr, y)) });
        true
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Vec<Violation>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Pass => &[],
            Verdict::Fail(v) => v,
        }
    }
}

/// Full verification with an exhaustive, deterministic violation list:
/// (S) clashes first, then (C2) and (C3) edge by edge in canonical order.
pub fn verify(family: &Family) -> Verdict {
    let (board, mut violations) = Board::build_lenient(family);
    for (id, edge) in family.edges().iter().enumerate() {
        let ix = EdgeIx::new(board.grid, edge);
        if let Some(mut v) = check_c2(&board, edge) {
            v.edges = alloc::vec![id];
            violations.push(v);
        }
        if c3_any(&board, &ix) {
            for mut v in check_c3(&board, edge) {
                v.edges = alloc::vec![id];
                violations.push(v);
            }
        }
    }
    if violations.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail(violations)
    }
}

/// Short-circuiting form of [`verify`].
pub fn is_admissible(family: &Family) -> bool {
    let (board, conflicts) = Board::build_lenient(family);
    if !conflicts.is_empty() {
        return false;
    }
    family.edges().iter().all(|edge| {
        let ix = EdgeIx::new(board.grid, edge);
        !c2_blocked(&board, &ix) && !c3_any(&board, &ix)
    })
}
