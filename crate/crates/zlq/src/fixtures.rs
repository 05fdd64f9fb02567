//! Reference families and numbers.
//!
//! The families are the files under `data/v1`, parsed on demand, so a
//! transcription mistake shows up as a verifier failure rather than as a
//! silently wrong constant.

use serde::Serialize;
use thiserror::Error;
use zlq_core::Family;

use crate::format::{parse_family, ParseError};

const FILES: [(u32, &str); 5] = [
    (3, include_str!("../data/v1/q3.zlq")),
    (4, include_str!("../data/v1/q4.zlq")),
    (5, include_str!("../data/v1/q5.zlq")),
    (6, include_str!("../data/v1/q6.zlq")),
    (7, include_str!("../data/v1/q7.zlq")),
];

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("no reference family for q = {0} (available: 3..=7)")]
    OutOfRange(u32),
    #[error("fixture for q = {q} does not parse: {source}")]
    Corrupt { q: u32, source: ParseError },
}

pub fn fixture_qs() -> impl Iterator<Item = u32> {
    FILES.iter().map(|(q, _)| *q)
}

/// The raw family file for `q`.
pub fn family_text(q: u32) -> Option<&'static str> {
    FILES.iter().find(|(p, _)| *p == q).map(|(_, t)| *t)
}

pub fn reference_family(q: u32) -> Result<Family, FixtureError> {
    let text = family_text(q).ok_or(FixtureError::OutOfRange(q))?;
    parse_family(text).map_err(|source| FixtureError::Corrupt { q, source })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceRow {
    pub q: u32,
    /// Board shape `C(q+1,2) × (q+1)`.
    pub m: u64,
    pub n: u64,
    /// Classical `z = q(q+1)`.
    pub z: u64,
    pub z_l: u64,
    pub exactness: Exactness,
}

pub fn reference_table() -> [ReferenceRow; 5] {
    let row = |q: u32, z_l, exactness| {
        let n = q as u64 + 1;
        ReferenceRow { q, m: n * (n - 1) / 2, n, z: q as u64 * n, z_l, exactness }
    };
    [
        row(3, 14, Exactness::Exact),
        row(4, 26, Exactness::Exact),
        row(5, 43, Exactness::LowerBound),
        row(6, 64, Exactness::LowerBound),
        row(7, 88, Exactness::LowerBound),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapRatio {
    pub q: u32,
    /// `100 (z_L − z) / z`.
    pub percent: f64,
    pub exactness: Exactness,
}

impl GapRatio {
    /// One decimal, prefixed with `≥` for lower bounds.
    pub fn display(&self) -> String {
        let prefix = if self.exactness == Exactness::LowerBound { "≥" } else { "" };
        format!("{prefix}{:.1}%", self.percent)
    }
}

/// Defined for `q` in `4..=7`.
pub fn gap_ratio(q: u32) -> Option<GapRatio> {
    if !(4..=7).contains(&q) {
        return None;
    }
    let r = reference_table().into_iter().find(|r| r.q == q)?;
    let percent = 100.0 * (r.z_l - r.z) as f64 / r.z as f64;
    Some(GapRatio { q, percent, exactness: r.exactness })
}

/// `2·C(4t,2) + 4t² − 2t`, the lower bound for `K_{4t}`.
pub fn k4t_bound(t: u64) -> u64 {
    let n = 4 * t;
    2 * (n * (n - 1) / 2) + 4 * t * t - 2 * t
}
