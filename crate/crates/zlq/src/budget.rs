//! Wall-clock budgets.

use std::time::{Duration, Instant};

use zlq_core::stop::Stop;

/// Fires once the wall-clock limit has passed; never fires without one.
/// A zero limit fires immediately.
#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    end: Option<Instant>,
}

impl Deadline {
    pub fn after(limit: Option<Duration>) -> Self {
        Deadline { end: limit.map(|d| Instant::now() + d) }
    }

    pub fn none() -> Self {
        Deadline { end: None }
    }
}

impl Stop for Deadline {
    fn should_stop(&self) -> bool {
        self.end.is_some_and(|end| Instant::now() >= end)
    }
}

/// Seconds, possibly fractional and zero.
pub fn parse_seconds(text: &str) -> Result<Duration, String> {
    let secs: f64 = text.parse().map_err(|_| format!("not a number of seconds: {text:?}"))?;
    Duration::try_from_secs_f64(secs).map_err(|_| format!("not a valid duration: {text:?}"))
}
