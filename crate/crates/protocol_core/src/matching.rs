use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::keys::{derive_rpik, expand_tek, RollingProximityIdentifier, TemporaryExposureKey};
use crate::time::IntervalNumber;

/// Timestamp tolerance applied when matching, in interval counts.
pub const DEFAULT_TOLERANCE: u64 = 2;

/// A diagnosis key as published by the upload server.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedTek {
    pub tek: TemporaryExposureKey,
    pub report_time: IntervalNumber,
}

/// The matching engine's view of one locally observed identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContactSighting {
    pub rpi: RollingProximityIdentifier,
    /// Unix timestamp the identifier was first observed.
    pub observed_at: u64,
}

/// One (published key, observed contact) hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MatchEvent {
    pub tek_index: usize,
    pub contact_index: usize,
    /// Interval whose derived identifier equalled the observed one.
    pub matched_interval: IntervalNumber,
}

/// Matches published keys against observed identifiers.
///
/// A contact matches when some interval of a published key derives the
/// observed identifier and that interval lies within `tolerance` of the
/// interval the contact was observed in. Identifiers replayed outside the
/// tolerance window therefore never match.
pub fn match_keys(
    published: &[PublishedTek],
    observed: &[ContactSighting],
    tolerance: u64,
) -> Vec<MatchEvent> {
    // Index every derived identifier once; contacts then probe the map.
    let mut derived: HashMap<[u8; 16], Vec<(usize, IntervalNumber)>> = HashMap::new();
    for (tek_index, published_tek) in published.iter().enumerate() {
        let _ = derive_rpik(&published_tek.tek);
        for (interval, rpi) in expand_tek(&published_tek.tek) {
            derived.entry(rpi.0).or_default().push((tek_index, interval));
        }
    }

    let mut events = Vec::new();
    for (contact_index, sighting) in observed.iter().enumerate() {
        let observed_interval = IntervalNumber(sighting.observed_at / 600);
        if let Some(hits) = derived.get(&sighting.rpi.0) {
            for &(tek_index, matched_interval) in hits {
                if matched_interval.distance(observed_interval) <= tolerance {
                    events.push(MatchEvent {
                        tek_index,
                        contact_index,
                        matched_interval,
                    });
                }
            }
        }
    }
    events.sort();
    events
}
