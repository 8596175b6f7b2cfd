/// Discrete simulation clock in whole Unix seconds.
#[derive(Debug, Clone, Copy)]
pub struct SimClock {
    now: u64,
    tick: u64,
}

impl SimClock {
    pub fn new(start: u64, tick_secs: u64) -> Self {
        assert!(tick_secs > 0, "tick must be positive");
        SimClock { now: start, tick: tick_secs }
    }

    pub fn now(&self) -> u64 {
        self.now
    }

    pub fn tick_secs(&self) -> u64 {
        self.tick
    }

    /// Advances by one tick and returns the new time.
    pub fn advance(&mut self) -> u64 {
        self.now += self.tick;
        self.now
    }
}
