//! Limited augmented Zarankiewicz numbers for the incidence graph of `K_{q+1}`.
//!
//! The board has one row per 2-subset of `{0, …, q}` and one column per
//! vertex; its 1-edges are the incidences. This crate places 2-edges on the
//! remaining cells subject to the admissibility conditions (S), (C2), (C3),
//! verifies families exactly, builds the 0–1 ILP, and searches for large
//! admissible families exactly (branch-and-bound) or heuristically
//! (randomized greedy with local repair).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, wall-clock
//! budgets, threads and the command line live in the `zlq` crate.

#![no_std]

extern crate alloc;

pub mod admissibility;
pub mod bitset;
pub mod error;
pub mod exact;
pub mod grid;
pub mod ilp;
pub mod lifting;
pub mod recognition;
pub mod rng;
pub mod search;
pub mod stop;
pub mod symmetry;

pub use admissibility::{verify, Board, CellStatus, Verdict, Violation, ViolationKind};
pub use error::Error;
pub use grid::{
    classify, counting_summary, CandidateMode, Cell, CountingSummary, Degeneracy, Family, Grid, Row, TwoEdge, Vertex,
};
