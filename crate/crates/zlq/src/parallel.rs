//! Multi-threaded drivers. Work items (root subtrees, restarts) are handed
//! out from an atomic counter; results are reduced by the deterministic
//! rules of the core crate, so the answer does not depend on the schedule.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use zlq_core::exact::{ExactProblem, ExactResult, Observer, RootResult, Shared};
use zlq_core::search::{run_search, SearchConfig, SearchContext, SearchResult};
use zlq_core::stop::Stop;
use zlq_core::Error;

/// Exact solve over `threads` workers. One thread runs the sequential
/// solver unchanged; more threads search roots independently with tie
/// retention and reduce by (size desc, root asc). `observer` builds one
/// observer per worker.
pub fn solve_exact<O, F>(problem: &ExactProblem, threads: usize, stop: &(dyn Stop + Sync), observer: F) -> ExactResult
where
    O: Observer,
    F: Fn() -> O + Sync,
{
    if threads <= 1 {
        return problem.solve(stop, &mut observer());
    }
    let shared = Shared::default();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<RootResult>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| {
                let mut obs = observer();
                loop {
                    let r = next.fetch_add(1, Ordering::Relaxed);
                    if r >= problem.roots().len() {
                        break;
                    }
                    let res = problem.solve_root(r, &shared, true, stop, &mut obs);
                    let stopped = res.stopped;
                    results.lock().unwrap().push(res);
                    if stopped {
                        break;
                    }
                }
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    // roots never started count as stopped: their subtrees are unexplored
    if results.len() < problem.roots().len() {
        results.push(RootResult { root: usize::MAX, size: 0, chosen: Vec::new(), stopped: true });
    }
    problem.reduce(results, shared.nodes.load(Ordering::Relaxed))
}

/// Restarts spread over `threads` workers; identical output for any count.
pub fn search(config: SearchConfig, threads: usize, stop: &(dyn Stop + Sync)) -> Result<SearchResult, Error> {
    if threads <= 1 {
        return run_search(config, stop);
    }
    let ctx = SearchContext::new(config)?;
    let restarts = ctx.config().restarts as usize;
    let next = AtomicUsize::new(0);
    let outcomes = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= restarts || stop.should_stop() {
                    break;
                }
                let out = ctx.run_restart(i as u32, stop);
                outcomes.lock().unwrap().push(out);
            });
        }
    });
    Ok(ctx.finish(outcomes.into_inner().unwrap()))
}
