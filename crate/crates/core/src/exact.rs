//! Exact maximum admissible family by branch-and-bound.
//!
//! Admissibility is hereditary, so a depth-first search that only ever
//! extends admissible families by individually insertable candidates visits
//! every admissible family. The search is a max-clique search on the
//! pairwise-compatibility graph of the candidates: at each node the set `P`
//! of candidates that extend the current family is colored greedily into
//! classes of pairwise conflicting candidates, and the number of classes
//! bounds the extension. Pairwise compatibility misses (C3) patterns that
//! need three or more 2-edges, so every extension is re-checked against the
//! board before it enters `P`.
//!
//! The first branching level iterates over *roots*. With symmetry enabled the
//! roots are one representative per orbit of the vertex permutation group,
//! and every later root excludes the orbits of the earlier ones; without it,
//! root `i` only extends with candidates after `i` in branching order. Root
//! subtrees are independent, which is what the parallel driver in `zlq`
//! splits on.

use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use crate::admissibility::{is_admissible, Board, EdgeIx};
use crate::bitset::BitSet;
use crate::error::Error;
use crate::grid::{CandidateMode, Family, Grid, TwoEdge};
use crate::stop::Stop;
use crate::symmetry::orbit_labels;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BranchOrder {
    /// Candidates with the most pairwise conflicts first.
    #[default]
    MostConstrained,
    /// Canonical family order.
    Canonical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ExactConfig {
    pub mode: CandidateMode,
    pub symmetry: bool,
    pub order: BranchOrder,
    /// Report the lexicographically smallest optimal family. Disables the
    /// symmetry restriction, which would hide most optima.
    pub canonical_certificate: bool,
    pub node_limit: Option<u64>,
    /// Stop as soon as this many edges have been added. The result is then
    /// labelled `BoundedIncumbent`.
    pub target: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The search tree was exhausted.
    Optimal,
    /// A budget ran out; `size` is only a lower bound.
    BoundedIncumbent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub outcome: Outcome,
    /// Number of 2-edges added on top of the frozen base.
    pub size: usize,
    /// Base plus the added edges.
    pub certificate: Family,
    pub nodes: u64,
}

impl ExactResult {
    pub fn is_optimal(&self) -> bool {
        self.outcome == Outcome::Optimal
    }
}

/// Search progress callbacks.
pub trait Observer {
    fn node(&mut self, _nodes: u64, _depth: usize, _bound: usize) {}
    fn root(&mut self, _root: usize, _bound: usize) {}
    fn incumbent(&mut self, _size: usize, _nodes: u64) {}
}

pub struct Silent;

impl Observer for Silent {}

/// First-level branch: `candidate` is forced in and only candidates in
/// `allowed` may follow.
#[derive(Clone, Debug)]
pub struct Root {
    pub candidate: usize,
    pub allowed: BitSet,
}

/// Best family found in one root subtree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootResult {
    pub root: usize,
    pub size: usize,
    pub chosen: Vec<usize>,
    pub stopped: bool,
}

/// Counters shared between concurrently searched roots.
#[derive(Debug, Default)]
pub struct Shared {
    pub best: AtomicUsize,
    pub nodes: AtomicU64,
}

/// Which pairs of candidates can never coexist (given the base family).
///
/// A pair is marked iff the base plus the two edges is inadmissible; this
/// covers shared cells, (C2) completed by the partner, and two-edge (C3)
/// patterns.
pub fn pairwise_conflicts(base: &Board, candidates: &[TwoEdge]) -> Vec<BitSet> {
    let n = candidates.len();
    let mut conflict: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    let mut board = base.clone();
    for i in 0..n {
        let Some(id) = board.insert(candidates[i]) else {
            for j in 0..n {
                if j != i {
                    conflict[i].insert(j);
                    conflict[j].insert(i);
                }
            }
            continue;
        };
        for j in i + 1..n {
            if !board.can_insert(&candidates[j]) {
                conflict[i].insert(j);
                conflict[j].insert(i);
            }
        }
        board.remove(id);
    }
    conflict
}

pub struct ExactProblem {
    grid: Grid,
    config: ExactConfig,
    base: Board,
    candidates: Vec<TwoEdge>,
    ix: Vec<EdgeIx>,
    compat: Vec<BitSet>,
    conflict: Vec<BitSet>,
    roots: Vec<Root>,
}

impl ExactProblem {
    /// Full or nondegenerate candidate family on the bare `q`-board.
    pub fn new(q: u32, config: ExactConfig) -> Result<Self, Error> {
        let grid = Grid::new(q)?;
        let candidates: Vec<TwoEdge> = grid.candidates(config.mode).collect();
        Ok(ExactProblem::build(Board::new(grid), candidates, config))
    }

    /// Extensions of a frozen admissible `base` by the given candidates.
    /// Symmetry is not used: the base breaks it.
    pub fn with_base(base: &Family, candidates: Vec<TwoEdge>, config: ExactConfig) -> Result<Self, Error> {
        if !is_admissible(base) {
            return Err(Error::NotAdmissible);
        }
        let board = Board::build(base).map_err(|_| Error::NotAdmissible)?;
        let config = ExactConfig { symmetry: config.symmetry && base.is_empty(), ..config };
        Ok(ExactProblem::build(board, candidates, config))
    }

    fn build(base: Board, mut candidates: Vec<TwoEdge>, config: ExactConfig) -> Self {
        let grid = base.grid();
        candidates.retain(|e| config.mode.admits(e) && base.can_insert(e));
        candidates.sort_unstable();
        candidates.dedup();
        let mut conflict = pairwise_conflicts(&base, &candidates);
        let n = candidates.len();
        if config.order == BranchOrder::MostConstrained {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.sort_by_key(|&i| (core::cmp::Reverse(conflict[i].count()), i));
            candidates = perm.iter().map(|&i| candidates[i]).collect();
            conflict = perm
                .iter()
                .map(|&old| {
                    let mut s = BitSet::new(n);
                    for (b, &ob) in perm.iter().enumerate() {
                        if conflict[old].contains(ob) {
                            s.insert(b);
                        }
                    }
                    s
                })
                .collect();
        }
        let compat: Vec<BitSet> = (0..n)
            .map(|i| {
                let mut s = BitSet::full(n);
                s.difference_with(&conflict[i]);
                s.remove(i);
                s
            })
            .collect();
        let ix = candidates.iter().map(|e| EdgeIx::new(grid, e)).collect();
        let symmetric = config.symmetry && !config.canonical_certificate && base.is_empty();
        let roots = if symmetric { symmetric_roots(grid, &candidates) } else { plain_roots(n) };
        ExactProblem { grid, config, base, candidates, ix, compat, conflict, roots }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn config(&self) -> &ExactConfig {
        &self.config
    }

    /// Candidates in branching order, statically infeasible ones removed.
    pub fn candidates(&self) -> &[TwoEdge] {
        &self.candidates
    }

    pub fn conflicts(&self) -> &[BitSet] {
        &self.conflict
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Admissible bound on the best completion of `chosen`; `None` if
    /// `chosen` is not admissible on top of the base.
    pub fn upper_bound(&self, chosen: &[usize]) -> Option<usize> {
        let mut board = self.base.clone();
        for &c in chosen {
            if !board.can_insert(&self.candidates[c]) {
                return None;
            }
            board.insert(self.candidates[c]);
        }
        let mut p = BitSet::full(self.candidates.len());
        for &c in chosen {
            p.intersect_with(&self.compat[c]);
        }
        let p = self.filter(&board, p);
        Some(chosen.len() + self.bound(&p))
    }

    fn filter(&self, board: &Board, mut p: BitSet) -> BitSet {
        let cands: Vec<usize> = p.iter().collect();
        for u in cands {
            if !board.is_free_for(&self.candidates[u]) || !board.can_insert_ix(&self.ix[u]) {
                p.remove(u);
            }
        }
        p
    }

    /// `min(|P|, ⌊covered free cells / 2⌋, greedy color classes)`.
    fn bound(&self, p: &BitSet) -> usize {
        let baseline = self.baseline(p);
        if baseline == 0 {
            return 0;
        }
        baseline.min(self.color(p).1.last().copied().unwrap_or(0))
    }

    fn baseline(&self, p: &BitSet) -> usize {
        let size = p.count();
        if size <= 1 {
            return size;
        }
        let mut covered = BitSet::new(self.grid.cell_count());
        let n = self.grid.columns();
        for u in p.iter() {
            for h in self.ix[u].halves(n) {
                covered.insert(h);
            }
        }
        size.min(covered.count() / 2)
    }

    /// Greedy sequential coloring of `P` into classes of pairwise
    /// conflicting candidates. Returns vertices sorted by color and their
    /// (nondecreasing) colors.
    fn color(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut colors = Vec::with_capacity(p.count());
        let mut uncolored = p.clone();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut class = uncolored.clone();
            while let Some(v) = class.first() {
                class.remove(v);
                class.intersect_with(&self.conflict[v]);
                uncolored.remove(v);
                order.push(v);
                colors.push(k);
            }
        }
        (order, colors)
    }

    /// Candidate set at a root: allowed, compatible with the root, and
    /// insertable next to it.
    fn root_set(&self, root: &Root, board: &Board) -> BitSet {
        let mut p = root.allowed.clone();
        p.intersect_with(&self.compat[root.candidate]);
        self.filter(board, p)
    }

    /// Searches one root subtree. With `keep_ties` the subtree's own best is
    /// found whenever it reaches the shared best, which makes parallel runs
    /// schedule-independent.
    pub fn solve_root(
        &self,
        root: usize,
        shared: &Shared,
        keep_ties: bool,
        stop: &dyn Stop,
        observer: &mut dyn Observer,
    ) -> RootResult {
        let mut s = Searcher::new(self, shared, keep_ties, stop, observer, 0, None);
        s.run_root(root);
        RootResult { root, size: s.best, chosen: s.best_set.unwrap_or_default(), stopped: s.stopped }
    }

    /// Sequential search over all roots.
    pub fn solve(&self, stop: &dyn Stop, observer: &mut dyn Observer) -> ExactResult {
        let shared = Shared::default();
        let keep_ties = self.config.canonical_certificate;
        let mut s = Searcher::new(self, &shared, keep_ties, stop, observer, 0, Some(Vec::new()));
        for r in 0..self.roots.len() {
            s.run_root(r);
            if s.stopped {
                break;
            }
        }
        let outcome = if s.stopped { Outcome::BoundedIncumbent } else { Outcome::Optimal };
        let chosen = s.best_set.clone().unwrap_or_default();
        self.result(outcome, &chosen, shared.nodes.load(Ordering::Relaxed))
    }

    /// Deterministic reduction of per-root results: size descending, then
    /// root index ascending.
    pub fn reduce(&self, mut results: Vec<RootResult>, nodes: u64) -> ExactResult {
        let stopped = results.iter().any(|r| r.stopped);
        results.sort_by_key(|r| (core::cmp::Reverse(r.size), r.root));
        let chosen = results.first().map(|r| r.chosen.clone()).unwrap_or_default();
        let outcome = if stopped { Outcome::BoundedIncumbent } else { Outcome::Optimal };
        self.result(outcome, &chosen, nodes)
    }

    fn result(&self, outcome: Outcome, chosen: &[usize], nodes: u64) -> ExactResult {
        let mut certificate = self.base.family();
        for &c in chosen {
            certificate.push(self.candidates[c]).expect("candidate fits the board");
        }
        debug_assert!(is_admissible(&certificate));
        ExactResult { outcome, size: chosen.len(), certificate, nodes }
    }
}

fn plain_roots(n: usize) -> Vec<Root> {
    (0..n)
        .map(|i| {
            let mut allowed = BitSet::new(n);
            for j in i + 1..n {
                allowed.insert(j);
            }
            Root { candidate: i, allowed }
        })
        .collect()
}

fn symmetric_roots(grid: Grid, candidates: &[TwoEdge]) -> Vec<Root> {
    let n = candidates.len();
    let labels = orbit_labels(grid, candidates);
    let mut remaining = BitSet::full(n);
    let mut roots = Vec::new();
    for i in 0..n {
        if labels[i] != i {
            continue;
        }
        let mut allowed = remaining.clone();
        allowed.remove(i);
        roots.push(Root { candidate: i, allowed });
        for (j, l) in labels.iter().enumerate() {
            if *l == i {
                remaining.remove(j);
            }
        }
    }
    roots
}

struct Searcher<'a> {
    problem: &'a ExactProblem,
    shared: &'a Shared,
    keep_ties: bool,
    stop: &'a dyn Stop,
    observer: &'a mut dyn Observer,
    board: Board,
    chosen: Vec<usize>,
    best: usize,
    best_set: Option<Vec<usize>>,
    stopped: bool,
}

impl<'a> Searcher<'a> {
    fn new(
        problem: &'a ExactProblem,
        shared: &'a Shared,
        keep_ties: bool,
        stop: &'a dyn Stop,
        observer: &'a mut dyn Observer,
        best: usize,
        best_set: Option<Vec<usize>>,
    ) -> Self {
        Searcher {
            problem,
            shared,
            keep_ties,
            stop,
            observer,
            board: problem.base.clone(),
            chosen: Vec::new(),
            best,
            best_set,
            stopped: false,
        }
    }

    fn threshold(&self) -> usize {
        self.best.max(self.shared.best.load(Ordering::Relaxed))
    }

    fn pruned(&self, bound: usize) -> bool {
        let t = self.threshold();
        if self.keep_ties {
            bound < t
        } else {
            bound <= t
        }
    }

    fn record(&mut self) {
        let size = self.chosen.len();
        let better = size > self.best || self.best_set.is_none();
        let tie_break = self.problem.config.canonical_certificate
            && size == self.best
            && self.best_set.as_ref().is_some_and(|b| self.sorted(&self.chosen) < self.sorted(b));
        if better || tie_break {
            self.best = size;
            self.best_set = Some(self.chosen.clone());
            self.shared.best.fetch_max(size, Ordering::Relaxed);
            let nodes = self.shared.nodes.load(Ordering::Relaxed);
            self.observer.incumbent(size, nodes);
            if self.problem.config.target.is_some_and(|t| size >= t) {
                self.stopped = true;
            }
        }
    }

    fn sorted(&self, set: &[usize]) -> Vec<TwoEdge> {
        let mut edges: Vec<TwoEdge> = set.iter().map(|&c| self.problem.candidates[c]).collect();
        edges.sort_unstable();
        edges
    }

    fn tick(&mut self, bound: usize) -> bool {
        let nodes = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.problem.config.node_limit.is_some_and(|l| nodes > l) {
            self.stopped = true;
        }
        if nodes.is_multiple_of(256) {
            if self.stop.should_stop() {
                self.stopped = true;
            }
            self.observer.node(nodes, self.chosen.len(), bound);
        }
        !self.stopped
    }

    fn run_root(&mut self, r: usize) {
        if self.best_set.is_none() {
            self.best_set = Some(Vec::new());
        }
        if self.stop.should_stop() {
            self.stopped = true;
            return;
        }
        let root = &self.problem.roots[r];
        let v = root.candidate;
        self.board.insert(self.problem.candidates[v]).expect("root candidate is insertable");
        self.chosen.push(v);
        let p = self.problem.root_set(root, &self.board);
        let bound = 1 + self.problem.bound(&p);
        self.observer.root(r, bound);
        if !self.pruned(bound) {
            self.expand(p);
        }
        self.chosen.pop();
        let id = self.board.id_of(&self.problem.candidates[v]).expect("root is placed");
        self.board.remove(id);
    }

    fn expand(&mut self, mut p: BitSet) {
        let problem = self.problem;
        if !self.tick(self.chosen.len() + p.count()) {
            return;
        }
        self.record();
        if p.is_empty() || self.pruned(self.chosen.len() + problem.baseline(&p)) {
            return;
        }
        let (order, colors) = problem.color(&p);
        for i in (0..order.len()).rev() {
            if self.pruned(self.chosen.len() + colors[i]) || self.stopped {
                return;
            }
            let v = order[i];
            let id = self.board.insert(problem.candidates[v]).expect("P holds insertable candidates");
            self.chosen.push(v);
            let mut next = p.clone();
            next.intersect_with(&problem.compat[v]);
            let next = problem.filter(&self.board, next);
            self.expand(next);
            self.chosen.pop();
            self.board.remove(id);
            p.remove(v);
        }
    }
}
