//! The direct 0–1 integer program over a candidate family.
//!
//! Variables are `x_e` (candidate `e` selected) and `o_a` (available cell `a`
//! occupied by a 2-edge). Rows:
//!
//! * `s_a`: `o_a − Σ_{e ∋ a} x_e = 0`;
//! * `c2_e`: `x_e + ō(r₁,c₂) + ō(r₂,c₁) ≤ 2` for nondegenerate `e`;
//! * `c3_e_w`: `x_e + ō(x,y) + ō(x,c₁) + ō(x,c₂) + ō(r₁,y) + ō(r₂,y) ≤ 5`
//!   for every `(x, y)` in the witness set `W(e)`.
//!
//! `ō` is the constant 1 on 1-edge cells and `o_a` otherwise; constants are
//! moved to the right-hand side when the model is built. Coincident `ō`
//! terms (degenerate edges) are kept with multiplicity, so a row can carry a
//! coefficient of 2. The objective is `max Σ x_e`, i.e. minus the optimum of
//! `min −Σ x_e`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::admissibility::{verify, Verdict};
use crate::error::Error;
use crate::grid::{CandidateMode, Cell, Degeneracy, Family, Grid, Row, TwoEdge, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Candidate selection, by candidate index.
    X(usize),
    /// Cell occupancy, by index into the sorted available cells.
    O(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Eq,
    Le,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowKind {
    S {
        cell: usize,
    },
    C2 {
        candidate: usize,
    },
    C3 {
        candidate: usize,
        witness: usize,
    },
    /// `x_e = 0` for a statically pruned candidate.
    Fix {
        candidate: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub kind: RowKind,
    pub terms: Vec<(Var, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    pub fn holds(&self, value: impl Fn(Var) -> i64) -> bool {
        let lhs: i64 = self.terms.iter().map(|(v, c)| c * value(*v)).sum();
        match self.sense {
            Sense::Eq => lhs == self.rhs,
            Sense::Le => lhs <= self.rhs,
        }
    }
}

/// `W(e)`: all `(x, y)` with `x ∉ {r₁, r₂}` and `y ∉ {c₁, c₂}`, rows in
/// lexicographic order and columns ascending.
pub fn witness_set(edge: &TwoEdge, grid: Grid) -> Vec<(Row, Vertex)> {
    let (a, b) = (edge.first(), edge.second());
    let mut out = Vec::new();
    for x in grid.rows().filter(|r| *r != a.row && *r != b.row) {
        for y in (0..=grid.q()).filter(|y| *y != a.col && *y != b.col) {
            if edge.degeneracy() == Degeneracy::Nondegenerate {
                debug_assert!(pairwise_distinct(&pattern(edge, x, y)));
            }
            out.push((x, y));
        }
    }
    out
}

/// The five pattern cells of witness `(x, y)` for `edge`.
pub fn pattern(edge: &TwoEdge, x: Row, y: Vertex) -> [Cell; 5] {
    let (a, b) = (edge.first(), edge.second());
    [Cell::new(x, y), Cell::new(x, a.col), Cell::new(x, b.col), Cell::new(a.row, y), Cell::new(b.row, y)]
}

fn pairwise_distinct(cells: &[Cell]) -> bool {
    cells.iter().enumerate().all(|(i, a)| cells[i + 1..].iter().all(|b| a != b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    grid: Grid,
    mode: CandidateMode,
    candidates: Vec<TwoEdge>,
    cells: Vec<Cell>,
    /// Dense cell index → `o` variable index.
    cell_var: Vec<Option<usize>>,
    constraints: Vec<Constraint>,
    pruned: Vec<usize>,
}

impl IlpModel {
    pub fn build(q: u32, mode: CandidateMode, prune_static: bool) -> Result<Self, Error> {
        let grid = Grid::new(q)?;
        let candidates: Vec<TwoEdge> = grid.candidates(mode).collect();
        let cells: Vec<Cell> = grid.available_cells().collect();
        let mut cell_var = alloc::vec![None; grid.cell_count()];
        for (k, c) in cells.iter().enumerate() {
            cell_var[grid.cell_index(*c)] = Some(k);
        }
        let mut model =
            IlpModel { grid, mode, candidates, cells, cell_var, constraints: Vec::new(), pruned: Vec::new() };
        model.add_simplicity_rows();
        for k in 0..model.candidates.len() {
            let rows = model.candidate_rows(k);
            let forced_zero = rows.iter().any(|r| r.terms.len() == 1 && r.rhs <= 0);
            if prune_static && forced_zero {
                model.pruned.push(k);
                model.constraints.push(Constraint {
                    kind: RowKind::Fix { candidate: k },
                    terms: alloc::vec![(Var::X(k), 1)],
                    sense: Sense::Eq,
                    rhs: 0,
                });
            } else {
                model.constraints.extend(rows);
            }
        }
        Ok(model)
    }

    fn add_simplicity_rows(&mut self) {
        let mut covering: Vec<Vec<usize>> = alloc::vec![Vec::new(); self.cells.len()];
        for (k, e) in self.candidates.iter().enumerate() {
            for half in [e.first(), e.second()] {
                let a = self.cell_var[self.grid.cell_index(half)].expect("halves are available");
                covering[a].push(k);
            }
        }
        for (a, users) in covering.into_iter().enumerate() {
            let mut terms = alloc::vec![(Var::O(a), 1)];
            terms.extend(users.into_iter().map(|k| (Var::X(k), -1)));
            self.constraints.push(Constraint { kind: RowKind::S { cell: a }, terms, sense: Sense::Eq, rhs: 0 });
        }
    }

    /// `ō` terms with constants folded: returns the row's terms and its
    /// reduced right-hand side.
    fn reduced(&self, k: usize, occ: &[Cell], bound: i64) -> (Vec<(Var, i64)>, i64) {
        let mut terms: BTreeMap<Var, i64> = BTreeMap::new();
        terms.insert(Var::X(k), 1);
        let mut rhs = bound;
        for cell in occ {
            match self.cell_var[self.grid.cell_index(*cell)] {
                Some(a) => *terms.entry(Var::O(a)).or_insert(0) += 1,
                None => rhs -= 1,
            }
        }
        // X sorts before O; keep x_e first
        (terms.into_iter().collect(), rhs)
    }

    fn candidate_rows(&self, k: usize) -> Vec<Constraint> {
        let e = self.candidates[k];
        let mut rows = Vec::new();
        if e.degeneracy() == Degeneracy::Nondegenerate {
            let (p, q) = e.opposite_cells();
            let (terms, rhs) = self.reduced(k, &[p, q], 2);
            rows.push(Constraint { kind: RowKind::C2 { candidate: k }, terms, sense: Sense::Le, rhs });
        }
        for (w, (x, y)) in witness_set(&e, self.grid).into_iter().enumerate() {
            let (terms, rhs) = self.reduced(k, &pattern(&e, x, y), 5);
            rows.push(Constraint { kind: RowKind::C3 { candidate: k, witness: w }, terms, sense: Sense::Le, rhs });
        }
        rows
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn mode(&self) -> CandidateMode {
        self.mode
    }

    pub fn candidates(&self) -> &[TwoEdge] {
        &self.candidates
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Candidates fixed to zero by constant substitution.
    pub fn pruned(&self) -> &[usize] {
        &self.pruned
    }

    pub fn variable_count(&self) -> usize {
        self.candidates.len() + self.cells.len()
    }

    pub fn count_rows(&self, pred: impl Fn(&RowKind) -> bool) -> usize {
        self.constraints.iter().filter(|c| pred(&c.kind)).count()
    }

    pub fn var_name(&self, var: Var) -> String {
        match var {
            Var::X(k) => alloc::format!("x_{k}"),
            Var::O(a) => {
                let c = self.cells[a];
                alloc::format!("o_{}_{}_{}", c.row.lo(), c.row.hi(), c.col)
            }
        }
    }

    pub fn row_name(&self, kind: &RowKind) -> String {
        match *kind {
            RowKind::S { cell } => alloc::format!("s_{cell}"),
            RowKind::C2 { candidate } => alloc::format!("c2_{candidate}"),
            RowKind::C3 { candidate, witness } => alloc::format!("c3_{candidate}_{witness}"),
            RowKind::Fix { candidate } => alloc::format!("fix_{candidate}"),
        }
    }

    /// All variables: `x` in candidate order, then `o` in cell order.
    pub fn variables(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.candidates.len()).map(Var::X).chain((0..self.cells.len()).map(Var::O))
    }

    pub fn var_by_name(&self, name: &str) -> Option<Var> {
        if let Some(k) = name.strip_prefix("x_") {
            let k: usize = k.parse().ok()?;
            return (k < self.candidates.len()).then_some(Var::X(k));
        }
        let rest = name.strip_prefix("o_")?;
        let mut parts = rest.split('_').map(|p| p.parse::<u32>().ok());
        let (i, j, c) = (parts.next()??, parts.next()??, parts.next()??);
        if parts.next().is_some() || i >= j || j > self.grid.q() || c > self.grid.q() {
            return None;
        }
        let cell = Cell::new(Row::new(i, j).ok()?, c);
        self.cell_var[self.grid.cell_index(cell)].map(Var::O)
    }

    /// The 0/1 vector induced by a family: `x_e = 1` for its edges, `o_a = 1`
    /// for every cell covered by at least one of them. `None` if some edge is
    /// not a candidate of this model.
    pub fn assignment_for(&self, family: &Family) -> Option<Assignment> {
        let mut asg = Assignment::zeros(self);
        for edge in family.edges() {
            let k = self.candidates.binary_search(edge).ok()?;
            asg.x[k] = true;
            for half in [edge.first(), edge.second()] {
                asg.o[self.cell_var[self.grid.cell_index(half)]?] = true;
            }
        }
        Some(asg)
    }

    pub fn value(&self, asg: &Assignment, var: Var) -> i64 {
        match var {
            Var::X(k) => asg.x[k] as i64,
            Var::O(a) => asg.o[a] as i64,
        }
    }

    /// Indices of constraints violated by `asg`.
    pub fn violated(&self, asg: &Assignment) -> Vec<usize> {
        self.constraints.iter().enumerate().filter(|(_, c)| !c.holds(|v| self.value(asg, v))).map(|(i, _)| i).collect()
    }

    pub fn objective(&self, asg: &Assignment) -> usize {
        asg.x.iter().filter(|b| **b).count()
    }

    /// Extracts the selected family and cross-checks the ILP's view of it
    /// against the admissibility verifier.
    pub fn import(&self, asg: &Assignment) -> ImportReport {
        let edges = self.candidates.iter().zip(&asg.x).filter(|(_, s)| **s).map(|(e, _)| *e).collect();
        let family = Family::new(self.grid, edges).expect("candidates fit the board");
        let violated = self.violated(asg);
        let s_consistent = violated.iter().all(|&i| !matches!(self.constraints[i].kind, RowKind::S { .. }));
        let verdict = verify(&family);
        let ilp_feasible = violated.is_empty();
        ImportReport {
            objective: self.objective(asg),
            agree: ilp_feasible == verdict.is_pass(),
            family,
            s_consistent,
            ilp_feasible,
            violated_rows: violated.len(),
            verdict,
        }
    }
}

/// A 0/1 value for every model variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub x: Vec<bool>,
    pub o: Vec<bool>,
}

impl Assignment {
    pub fn zeros(model: &IlpModel) -> Self {
        Assignment { x: alloc::vec![false; model.candidates.len()], o: alloc::vec![false; model.cells.len()] }
    }

    /// Builds an assignment from `(name, value)` pairs; every model variable
    /// must be named. Unknown names are ignored.
    pub fn from_named<'a>(model: &IlpModel, values: impl IntoIterator<Item = (&'a str, bool)>) -> Result<Self, Error> {
        let mut asg = Assignment::zeros(model);
        let mut seen_x = alloc::vec![false; asg.x.len()];
        let mut seen_o = alloc::vec![false; asg.o.len()];
        for (name, value) in values {
            match model.var_by_name(name) {
                Some(Var::X(k)) => {
                    asg.x[k] = value;
                    seen_x[k] = true;
                }
                Some(Var::O(a)) => {
                    asg.o[a] = value;
                    seen_o[a] = true;
                }
                None => {}
            }
        }
        let missing = seen_x.iter().chain(&seen_o).filter(|s| !**s).count();
        if missing > 0 {
            return Err(Error::IncompleteAssignment { missing });
        }
        Ok(asg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImportReport {
    pub family: Family,
    pub objective: usize,
    /// Every `s_a` row holds.
    pub s_consistent: bool,
    pub ilp_feasible: bool,
    pub violated_rows: usize,
    pub verdict: Verdict,
    /// ILP feasibility and verifier admissibility agree.
    pub agree: bool,
}
