/// Cooperative cancellation for long searches. The core has no clock;
/// callers supply one (see `zlq::budget`).
pub trait Stop {
    fn should_stop(&self) -> bool;
}

/// Never stops.
#[derive(Clone, Copy, Debug, Default)]
pub struct Never;

impl Stop for Never {
    fn should_stop(&self) -> bool {
        false
    }
}

impl<F: Fn() -> bool> Stop for F {
    fn should_stop(&self) -> bool {
        self()
    }
}
