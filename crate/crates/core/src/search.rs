//! Constructive lower-bound search: randomized greedy insertion, local
//! delete-and-repair, restarts, and an exact final verification.
//!
//! Each restart shuffles the candidate list with its own stream, inserts
//! every candidate that keeps the family admissible, then runs improvement
//! passes. A pass first tries deleting each member (in random order) and
//! greedily refilling with a fresh shuffle, then samples `pair_samples`
//! random pairs of members to delete and refill. A trial is kept only when
//! the refilled family is strictly larger. Passes repeat while they improve,
//! up to `improvement_passes`.

use alloc::vec::Vec;

use crate::admissibility::{is_admissible, verify, Board, EdgeIx};
use crate::error::Error;
use crate::grid::{CandidateMode, Degeneracy, Family, Grid, TwoEdge};
use crate::rng::{below, derive_stream, shuffle, Stream};
use crate::stop::Stop;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DeleteWidth {
    One,
    #[default]
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub q: u32,
    pub mode: CandidateMode,
    pub seed: u64,
    pub restarts: u32,
    pub improvement_passes: u32,
    pub delete_width: DeleteWidth,
    /// Random member pairs tried per pass when `delete_width` is `Two`.
    pub pair_samples: u32,
    /// Every restart starts from this family instead of the empty one.
    pub warm_start: Option<Family>,
}

impl SearchConfig {
    pub fn new(q: u32, seed: u64, restarts: u32) -> Self {
        SearchConfig {
            q,
            mode: CandidateMode::Full,
            seed,
            restarts,
            improvement_passes: 8,
            delete_width: DeleteWidth::Two,
            pair_samples: 64,
            warm_start: None,
        }
    }
}

/// Sizes seen during one restart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestartReport {
    pub index: u32,
    pub greedy_size: usize,
    /// Family size after each improvement pass.
    pub pass_sizes: Vec<usize>,
    pub final_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestartOutcome {
    pub family: Family,
    pub report: RestartReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub q: u32,
    pub mode: CandidateMode,
    pub seed: u64,
    pub best: Family,
    /// Restart that produced `best`; `None` if no restart ran.
    pub best_restart: Option<u32>,
    pub restarts: Vec<RestartReport>,
    /// Outcome of the full verifier on `best`.
    pub verified: bool,
}

impl SearchResult {
    /// `q(q+1) + |best|`.
    pub fn bound(&self) -> u64 {
        self.best.grid().zarankiewicz() + self.best.len() as u64
    }
}

/// Candidates that can appear in some admissible family, with their dense
/// coordinates.
#[derive(Clone, Debug)]
pub struct CandidatePool {
    grid: Grid,
    edges: Vec<TwoEdge>,
    ix: Vec<EdgeIx>,
}

impl CandidatePool {
    pub fn new(grid: Grid, mode: CandidateMode) -> Self {
        let bare = Board::new(grid);
        CandidatePool::from_edges(grid, grid.candidates(mode).filter(|e| bare.can_insert(e)).collect())
    }

    pub fn from_edges(grid: Grid, edges: Vec<TwoEdge>) -> Self {
        let ix = edges.iter().map(|e| EdgeIx::new(grid, e)).collect();
        CandidatePool { grid, edges, ix }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[TwoEdge] {
        &self.edges
    }
}

/// Scans `order` (indices into the pool) and inserts every candidate that
/// keeps the board admissible. Returns the ids of the inserted edges.
pub fn greedy_fill(board: &mut Board, pool: &CandidatePool, order: &[usize]) -> Vec<usize> {
    let mut added = Vec::new();
    for &k in order {
        let e = &pool.edges[k];
        if board.is_free_for(e) && board.can_insert_ix(&pool.ix[k]) {
            added.push(board.insert(*e).expect("cells are free"));
        }
    }
    added
}

fn shuffled(pool: &CandidatePool, rng: &mut Stream) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pool.len()).collect();
    shuffle(rng, &mut order);
    order
}

/// Deletes `victims`, refills greedily, and keeps the result only if the
/// board grew. Returns whether it was kept.
fn try_repair(board: &mut Board, pool: &CandidatePool, victims: &[usize], rng: &mut Stream) -> bool {
    let before = board.len();
    let removed: Vec<TwoEdge> = victims.iter().filter_map(|&id| board.remove(id)).collect();
    let order = shuffled(pool, rng);
    let added = greedy_fill(board, pool, &order);
    if board.len() > before {
        return true;
    }
    for id in added {
        board.remove(id);
    }
    for e in removed {
        board.insert(e).expect("restoring removed edges");
    }
    false
}

/// Delete-and-repair improvement. Edges for which `frozen` holds are never
/// deleted. Never shrinks the board; returns the size after each pass.
pub fn local_improve(
    board: &mut Board,
    pool: &CandidatePool,
    config: &SearchConfig,
    rng: &mut Stream,
    frozen: &dyn Fn(usize) -> bool,
    stop: &dyn Stop,
) -> Vec<usize> {
    let mut sizes = Vec::new();
    for _ in 0..config.improvement_passes {
        let start = board.len();
        let mut members: Vec<usize> = board.edges().map(|(id, _)| id).filter(|id| !frozen(*id)).collect();
        shuffle(rng, &mut members);
        for id in members {
            if stop.should_stop() {
                sizes.push(board.len());
                return sizes;
            }
            // an earlier repair in this pass may have removed it
            if board.edges().any(|(i, _)| i == id) {
                try_repair(board, pool, &[id], rng);
            }
        }
        if config.delete_width == DeleteWidth::Two {
            for _ in 0..config.pair_samples {
                if stop.should_stop() {
                    break;
                }
                let members: Vec<usize> = board.edges().map(|(id, _)| id).filter(|id| !frozen(*id)).collect();
                if members.len() < 2 {
                    break;
                }
                let i = below(rng, members.len());
                let mut j = below(rng, members.len() - 1);
                if j >= i {
                    j += 1;
                }
                try_repair(board, pool, &[members[i], members[j]], rng);
            }
        }
        sizes.push(board.len());
        if board.len() == start {
            break;
        }
    }
    sizes
}

/// Shared, validated inputs of a search run.
pub struct SearchContext {
    config: SearchConfig,
    grid: Grid,
    pool: CandidatePool,
    start: Board,
}

impl SearchContext {
    pub fn new(config: SearchConfig) -> Result<Self, Error> {
        let grid = Grid::new(config.q)?;
        let start = match &config.warm_start {
            Some(f) => {
                if f.q() != config.q {
                    return Err(Error::QMismatch { expected: config.q, found: f.q() });
                }
                let wrong_mode = config.mode == CandidateMode::NondegenerateOnly
                    && f.edges().iter().any(|e| e.degeneracy() != Degeneracy::Nondegenerate);
                if wrong_mode || !is_admissible(f) {
                    return Err(Error::NotAdmissible);
                }
                Board::build(f).map_err(|_| Error::NotAdmissible)?
            }
            None => Board::new(grid),
        };
        Ok(SearchContext { pool: CandidatePool::new(grid, config.mode), grid, start, config })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn pool(&self) -> &CandidatePool {
        &self.pool
    }

    /// One restart: shuffle, greedy fill, local improvement.
    pub fn run_restart(&self, index: u32, stop: &dyn Stop) -> RestartOutcome {
        let mut rng = derive_stream(self.config.seed, index as u64);
        let mut board = self.start.clone();
        let order = shuffled(&self.pool, &mut rng);
        greedy_fill(&mut board, &self.pool, &order);
        let greedy_size = board.len();
        let pass_sizes = local_improve(&mut board, &self.pool, &self.config, &mut rng, &|_| false, stop);
        let family = board.family();
        let report = RestartReport { index, greedy_size, final_size: family.len(), pass_sizes };
        RestartOutcome { family, report }
    }

    /// Picks the largest outcome (earliest restart on ties) that passes the
    /// full verifier. Outcomes may arrive in any order.
    pub fn finish(&self, mut outcomes: Vec<RestartOutcome>) -> SearchResult {
        outcomes.sort_by_key(|o| o.report.index);
        let mut ranked: Vec<&RestartOutcome> = outcomes.iter().collect();
        ranked.sort_by_key(|o| (core::cmp::Reverse(o.family.len()), o.report.index));
        let winner = ranked.into_iter().find(|o| verify(&o.family).is_pass());
        let (best, best_restart) = match winner {
            Some(o) => (o.family.clone(), Some(o.report.index)),
            None => (Family::empty(self.grid), None),
        };
        let verified = verify(&best).is_pass();
        SearchResult {
            q: self.config.q,
            mode: self.config.mode,
            seed: self.config.seed,
            best,
            best_restart,
            restarts: outcomes.into_iter().map(|o| o.report).collect(),
            verified,
        }
    }
}

/// Sequential search. Restarts stop being started once `stop` fires; a run
/// stopped before its first restart returns the empty family.
pub fn run_search(config: SearchConfig, stop: &dyn Stop) -> Result<SearchResult, Error> {
    let ctx = SearchContext::new(config)?;
    let mut outcomes = Vec::new();
    for index in 0..ctx.config.restarts {
        if stop.should_stop() {
            break;
        }
        outcomes.push(ctx.run_restart(index, stop));
    }
    Ok(ctx.finish(outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stop::Never;

    #[test]
    fn q3_search_finds_optimum() {
        let r = run_search(SearchConfig::new(3, 1, 8), &Never).unwrap();
        assert_eq!(r.best.len(), 2);
        assert_eq!(r.bound(), 14);
        assert!(r.verified);
    }

    #[test]
    fn deterministic() {
        let a = run_search(SearchConfig::new(4, 99, 4), &Never).unwrap();
        let b = run_search(SearchConfig::new(4, 99, 4), &Never).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stopped_search_is_empty() {
        let r = run_search(SearchConfig::new(4, 1, 4), &|| true).unwrap();
        assert!(r.best.is_empty());
        assert!(r.verified);
        assert_eq!(r.best_restart, None);
    }

    #[test]
    fn greedy_from_bare_board_inserts_something() {
        let g = Grid::new(3).unwrap();
        let pool = CandidatePool::new(g, CandidateMode::Full);
        let mut board = Board::new(g);
        let order: Vec<usize> = (0..pool.len()).rev().collect();
        greedy_fill(&mut board, &pool, &order);
        assert!(!board.is_empty());
        assert!(is_admissible(&board.family()));
    }

    #[test]
    fn nondegenerate_mode_outputs_nondegenerate() {
        let mut c = SearchConfig::new(4, 5, 3);
        c.mode = CandidateMode::NondegenerateOnly;
        let r = run_search(c, &Never).unwrap();
        assert!(r.best.is_nondegenerate());
    }
}
