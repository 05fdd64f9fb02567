//! File formats, reference fixtures, LP export, wall-clock budgets,
//! multi-threaded drivers and the `zlq` command line on top of `zlq-core`.

pub mod budget;
pub mod cli;
pub mod fixtures;
pub mod format;
pub mod lp;
pub mod parallel;
pub mod report;
