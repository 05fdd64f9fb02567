//! Lifting a family from the `q`-board to the `(q+1)`-board.
//!
//! Labels are kept, so every 2-edge of the `q`-board is a 2-edge of the
//! larger board. The new rows `{i, q+1}` carry only their two 1-edges and
//! the new column only 1-edges in those rows, which cannot complete any
//! (C2) or (C3) pattern of an old edge, so the embedded family stays
//! admissible. The extension step then adds edges on top of the frozen
//! embedded family, trying candidates that touch the new vertex first.
//! Existence of `⌊q/2⌋` extra edges is a theorem; whether this search finds
//! them is reported, not assumed. When the greedy extension falls short, a
//! bounded exact search over the candidates touching the new vertex decides.

use alloc::vec::Vec;

use crate::admissibility::{is_admissible, Board};
use crate::error::Error;
use crate::exact::{ExactConfig, ExactProblem, Outcome, Silent};
use crate::grid::{CandidateMode, Family, Grid};
use crate::rng::{derive_stream, shuffle};
use crate::search::{greedy_fill, local_improve, CandidatePool, SearchConfig};
use crate::stop::Stop;

/// Reinterprets a verified `q`-board family on the `(q+1)`-board.
pub fn embed(family: &Family) -> Result<Family, Error> {
    if !is_admissible(family) {
        return Err(Error::NotAdmissible);
    }
    let lifted = family.embed(Grid::new(family.q() + 1)?)?;
    debug_assert!(is_admissible(&lifted));
    Ok(lifted)
}

/// The number of extra 2-edges guaranteed by the lifting theorem.
pub fn theorem_increment(q: u32) -> usize {
    (q / 2) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleUse {
    Never,
    /// Only when the greedy extension misses the target.
    Fallback,
    Always,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftConfig {
    pub mode: CandidateMode,
    pub seed: u64,
    pub restarts: u32,
    pub improvement_passes: u32,
    pub oracle: OracleUse,
    pub oracle_node_limit: Option<u64>,
}

impl Default for LiftConfig {
    fn default() -> Self {
        LiftConfig {
            mode: CandidateMode::Full,
            seed: 0,
            restarts: 8,
            improvement_passes: 4,
            oracle: OracleUse::Fallback,
            oracle_node_limit: Some(2_000_000),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Edges the exact search added on top of the embedded family.
    pub added: usize,
    /// `Optimal` if the new-vertex subproblem was exhausted.
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub from_q: u32,
    pub to_q: u32,
    pub base_size: usize,
    /// `base_size + ⌊q/2⌋`.
    pub target: usize,
    /// Best verified family on the larger board.
    pub family: Family,
    pub greedy_size: usize,
    pub oracle: Option<OracleReport>,
}

impl LiftReport {
    pub fn achieved(&self) -> bool {
        self.family.len() >= self.target
    }

    /// `z` of the larger board plus the size of the returned family.
    pub fn bound(&self) -> u64 {
        self.family.grid().zarankiewicz() + self.family.len() as u64
    }

    /// The bound the lifting theorem guarantees: `z + target`.
    pub fn target_bound(&self) -> u64 {
        self.family.grid().zarankiewicz() + self.target as u64
    }
}

/// Embeds `family` and extends it; the embedded edges are never removed.
pub fn lift_extend(family: &Family, config: &LiftConfig, stop: &dyn Stop) -> Result<LiftReport, Error> {
    let base = embed(family)?;
    let grid = base.grid();
    let new_vertex = grid.q();
    let target = family.len() + theorem_increment(family.q());

    let pool = CandidatePool::new(grid, config.mode);
    let (fresh, rest): (Vec<usize>, Vec<usize>) =
        (0..pool.len()).partition(|&k| pool.edges()[k].touches_vertex(new_vertex));
    let start = Board::build(&base).map_err(|_| Error::NotAdmissible)?;
    let base_ids = base.len();
    let search =
        SearchConfig { improvement_passes: config.improvement_passes, ..SearchConfig::new(grid.q(), config.seed, 1) };

    let mut best = base.clone();
    for index in 0..config.restarts {
        if stop.should_stop() {
            break;
        }
        let mut rng = derive_stream(config.seed, index as u64);
        let mut order = fresh.clone();
        shuffle(&mut rng, &mut order);
        let mut tail = rest.clone();
        shuffle(&mut rng, &mut tail);
        order.extend(tail);
        let mut board = start.clone();
        greedy_fill(&mut board, &pool, &order);
        local_improve(&mut board, &pool, &search, &mut rng, &|id| id < base_ids, stop);
        if board.len() > best.len() {
            best = board.family();
        }
    }
    let greedy_size = best.len();

    let run_oracle = match config.oracle {
        OracleUse::Never => false,
        OracleUse::Fallback => greedy_size < target,
        OracleUse::Always => true,
    };
    let mut oracle = None;
    if run_oracle {
        let candidates = fresh.iter().map(|&k| pool.edges()[k]).collect();
        let exact = ExactConfig {
            mode: config.mode,
            node_limit: config.oracle_node_limit,
            target: Some(theorem_increment(family.q())),
            ..Default::default()
        };
        let result = ExactProblem::with_base(&base, candidates, exact)?.solve(stop, &mut Silent);
        if result.certificate.len() > best.len() {
            best = result.certificate.clone();
        }
        oracle = Some(OracleReport { added: result.size, outcome: result.outcome });
    }
    debug_assert!(is_admissible(&best));
    Ok(LiftReport {
        from_q: family.q(),
        to_q: grid.q(),
        base_size: family.len(),
        target,
        family: best,
        greedy_size,
        oracle,
    })
}
