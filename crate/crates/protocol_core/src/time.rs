use serde::{Deserialize, Serialize};

use crate::error::ProtocolError;

/// Length of one identifier rotation window.
pub const SECONDS_PER_INTERVAL: u64 = 600;
/// Rotation windows per day.
pub const INTERVALS_PER_DAY: u64 = 144;
pub const SECONDS_PER_DAY: u64 = SECONDS_PER_INTERVAL * INTERVALS_PER_DAY;

/// Days since the Unix epoch.
pub type DayIndex = u64;

/// Count of 600-second windows since the Unix epoch.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct IntervalNumber(pub u64);

impl IntervalNumber {
    /// First interval of the given day.
    pub fn day_start(day: DayIndex) -> Self {
        IntervalNumber(day * INTERVALS_PER_DAY)
    }

    /// Day this interval falls in.
    pub fn day(self) -> DayIndex {
        self.0 / INTERVALS_PER_DAY
    }

    /// Unix timestamp of the start of this interval.
    pub fn start_unix(self) -> u64 {
        self.0 * SECONDS_PER_INTERVAL
    }

    pub fn is_day_aligned(self) -> bool {
        self.0 % INTERVALS_PER_DAY == 0
    }

    /// Absolute distance to another interval, in interval counts.
    pub fn distance(self, other: IntervalNumber) -> u64 {
        self.0.abs_diff(other.0)
    }
}

impl std::fmt::Display for IntervalNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Interval number containing the given Unix timestamp.
pub fn interval_number(unix_seconds: i64) -> Result<IntervalNumber, ProtocolError> {
    if unix_seconds < 0 {
        return Err(ProtocolError::InvalidArgument(format!(
            "timestamp {unix_seconds} is before the epoch"
        )));
    }
    Ok(IntervalNumber(unix_seconds as u64 / SECONDS_PER_INTERVAL))
}

/// Day index containing the given interval.
pub fn day_of_interval(interval: IntervalNumber) -> DayIndex {
    interval.day()
}
