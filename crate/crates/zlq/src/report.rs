//! JSON documents printed by the command line, and the JSON-lines solver
//! log. Field order is the declaration order, so output is byte-stable.

use std::io::Write;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use zlq_core::exact::{ExactResult, Observer, Outcome};
use zlq_core::lifting::LiftReport;
use zlq_core::search::{RestartReport, SearchResult};
use zlq_core::{CandidateMode, CountingSummary, Family};

pub fn mode_name(mode: CandidateMode) -> &'static str {
    match mode {
        CandidateMode::Full => "full",
        CandidateMode::NondegenerateOnly => "nondeg",
    }
}

pub fn outcome_name(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Optimal => "optimal",
        Outcome::BoundedIncumbent => "bounded",
    }
}

/// `C(q+1,2)` and `q+1`: the board shape in `z_L(m,n)`.
pub fn board_shape(q: u32) -> (u64, u64) {
    let n = q as u64 + 1;
    (n * (n - 1) / 2, n)
}

#[derive(Serialize)]
pub struct Stats {
    pub q: u32,
    pub rows: u64,
    pub columns: u64,
    pub one_edges: u64,
    pub available: u64,
    pub full: u64,
    pub nondeg: u64,
    pub row_degenerate: u64,
    pub column_degenerate: u64,
    pub z: u64,
}

impl From<CountingSummary> for Stats {
    fn from(s: CountingSummary) -> Self {
        Stats {
            q: s.q,
            rows: s.rows,
            columns: s.columns,
            one_edges: s.one_edges,
            available: s.available,
            full: s.full,
            nondeg: s.nondegenerate,
            row_degenerate: s.row_degenerate,
            column_degenerate: s.column_degenerate,
            z: s.z,
        }
    }
}

#[derive(Serialize)]
pub struct SearchSummary {
    pub q: u32,
    pub mode: &'static str,
    pub seed: u64,
    pub restarts: u32,
    /// Restarts that ran before the budget stopped the search.
    pub completed: usize,
    pub best_size: usize,
    pub best_restart: Option<u32>,
    pub bound: u64,
    pub verified: bool,
}

impl SearchSummary {
    pub fn new(result: &SearchResult, restarts: u32) -> Self {
        SearchSummary {
            q: result.q,
            mode: mode_name(result.mode),
            seed: result.seed,
            restarts,
            completed: result.restarts.len(),
            best_size: result.best.len(),
            best_restart: result.best_restart,
            bound: result.bound(),
            verified: result.verified,
        }
    }
}

#[derive(Serialize)]
pub struct RestartLine<'a> {
    pub event: &'static str,
    pub seed: u64,
    pub restart: u32,
    pub greedy_size: usize,
    pub pass_sizes: &'a [usize],
    pub final_size: usize,
}

impl<'a> RestartLine<'a> {
    pub fn new(seed: u64, r: &'a RestartReport) -> Self {
        RestartLine {
            event: "restart",
            seed,
            restart: r.index,
            greedy_size: r.greedy_size,
            pass_sizes: &r.pass_sizes,
            final_size: r.final_size,
        }
    }
}

#[derive(Serialize)]
pub struct OracleSummary {
    pub added: usize,
    pub outcome: &'static str,
}

#[derive(Serialize)]
pub struct LiftSummary {
    pub from_q: u32,
    pub to_q: u32,
    pub base_size: usize,
    pub target: usize,
    pub achieved: bool,
    pub size: usize,
    pub bound: u64,
    /// `(q+1)(q+2) + target`.
    pub target_bound: u64,
    pub greedy_size: usize,
    pub oracle: Option<OracleSummary>,
    pub verified: bool,
}

impl LiftSummary {
    pub fn new(r: &LiftReport, verified: bool) -> Self {
        LiftSummary {
            from_q: r.from_q,
            to_q: r.to_q,
            base_size: r.base_size,
            target: r.target,
            achieved: r.achieved(),
            size: r.family.len(),
            bound: r.bound(),
            target_bound: r.target_bound(),
            greedy_size: r.greedy_size,
            oracle: r.oracle.map(|o| OracleSummary { added: o.added, outcome: outcome_name(o.outcome) }),
            verified,
        }
    }
}

#[derive(Serialize)]
pub struct ExactSummary {
    pub q: u32,
    pub mode: &'static str,
    pub outcome: &'static str,
    pub size: usize,
    pub z_l: u64,
    pub nodes: u64,
    pub verified: bool,
}

impl ExactSummary {
    pub fn new(q: u32, mode: CandidateMode, r: &ExactResult, verified: bool) -> Self {
        ExactSummary {
            q,
            mode: mode_name(mode),
            outcome: outcome_name(r.outcome),
            size: r.size,
            z_l: r.certificate.grid().zarankiewicz() + r.size as u64,
            nodes: r.nodes,
            verified,
        }
    }
}

#[derive(Serialize)]
pub struct FamilySummary {
    pub q: u32,
    pub size: usize,
    pub verified: bool,
    pub nondegenerate: bool,
    pub bound: u64,
}

impl FamilySummary {
    pub fn new(f: &Family, verified: bool) -> Self {
        FamilySummary {
            q: f.q(),
            size: f.len(),
            verified,
            nondegenerate: f.is_nondegenerate(),
            bound: f.grid().zarankiewicz() + f.len() as u64,
        }
    }
}

/// Serializes `value` as one line of JSON.
pub fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

pub type Sink = Arc<Mutex<Box<dyn Write + Send>>>;

pub fn sink(w: impl Write + Send + 'static) -> Sink {
    Arc::new(Mutex::new(Box::new(w)))
}

/// Writes `node`, `bound` and `incumbent` events as JSON lines. Node events
/// are thinned to one per `every` explored nodes.
pub struct EventLog {
    sink: Option<Sink>,
    every: u64,
    last: u64,
}

#[derive(Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
enum Event {
    Node { nodes: u64, depth: usize, bound: usize },
    Bound { root: usize, bound: usize },
    Incumbent { size: usize, nodes: u64 },
}

impl EventLog {
    pub fn new(sink: Option<Sink>, every: u64) -> Self {
        EventLog { sink, every: every.max(1), last: 0 }
    }

    fn emit(&self, e: &Event) {
        if let Some(s) = &self.sink {
            // a failing log must not abort the search
            let _ = s.lock().unwrap().write_all(json_line(e).as_bytes());
        }
    }
}

impl Observer for EventLog {
    fn node(&mut self, nodes: u64, depth: usize, bound: usize) {
        if nodes >= self.last + self.every {
            self.last = nodes;
            self.emit(&Event::Node { nodes, depth, bound });
        }
    }

    fn root(&mut self, root: usize, bound: usize) {
        self.emit(&Event::Bound { root, bound });
    }

    fn incumbent(&mut self, size: usize, nodes: u64) {
        self.emit(&Event::Incumbent { size, nodes });
    }
}
