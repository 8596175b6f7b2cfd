use serde::{Deserialize, Serialize};

use crate::device::{Advertisement, DeviceId, Origin};
use crate::signal::Position;
use crate::world::Emission;

/// Attacker configuration as it appears in scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AttackerSpec {
    /// Records identifiers near `capture` and re-emits them unchanged at
    /// `replay` after `delay_secs`.
    Replayer {
        id: String,
        capture: [f64; 2],
        replay: [f64; 2],
        delay_secs: u64,
        #[serde(default)]
        tx_power_dbm: f64,
    },
    /// Rebroadcasts everything it hears with `gain_db` of extra power.
    Amplifier {
        id: String,
        position: [f64; 2],
        gain_db: f64,
    },
    /// Suppresses every link touching a disc of `radius_m`.
    Jammer {
        id: String,
        position: [f64; 2],
        radius_m: f64,
    },
}

#[derive(Debug, Clone)]
struct CapturedAd {
    advertisement: Advertisement,
    captured_at: u64,
}

/// Runtime state for one attacker agent. Replayers and amplifiers act
/// through the same advertisement channel as honest devices; only the
/// jammer manipulates the channel itself.
#[derive(Debug, Clone)]
pub struct Attacker {
    pub id: DeviceId,
    spec: AttackerSpec,
    buffer: Vec<CapturedAd>,
}

impl Attacker {
    pub fn new(spec: AttackerSpec) -> Self {
        let id = match &spec {
            AttackerSpec::Replayer { id, .. }
            | AttackerSpec::Amplifier { id, .. }
            | AttackerSpec::Jammer { id, .. } => DeviceId(id.clone()),
        };
        Attacker { id, spec, buffer: Vec::new() }
    }

    pub fn spec(&self) -> &AttackerSpec {
        &self.spec
    }

    /// Where this attacker listens, if it listens at all.
    pub(crate) fn listen_position(&self) -> Option<Position> {
        match &self.spec {
            AttackerSpec::Replayer { capture, .. } => Some(Position::new(capture[0], capture[1])),
            AttackerSpec::Amplifier { position, .. } => {
                Some(Position::new(position[0], position[1]))
            }
            AttackerSpec::Jammer { .. } => None,
        }
    }

    pub(crate) fn record_capture(&mut self, advertisement: Advertisement, captured_at: u64) {
        if matches!(self.spec, AttackerSpec::Replayer { .. }) {
            self.buffer.push(CapturedAd { advertisement, captured_at });
        }
    }

    /// Replays whose delay elapsed in (since, now].
    pub(crate) fn due_replays(&mut self, since: u64, now: u64) -> Vec<Emission> {
        let AttackerSpec::Replayer { replay, delay_secs, tx_power_dbm, .. } = &self.spec else {
            return Vec::new();
        };
        let position = Position::new(replay[0], replay[1]);
        let (mut due, pending): (Vec<_>, Vec<_>) = self
            .buffer
            .drain(..)
            .partition(|c| c.captured_at + delay_secs > since && c.captured_at + delay_secs <= now);
        self.buffer = pending;
        due.drain(..)
            .map(|c| self.inject_replay(&c.advertisement, now, position, *tx_power_dbm))
            .collect()
    }

    /// Re-emits a previously captured advertisement at a new place and
    /// time. The identifier bytes are untouched; only the ground-truth
    /// origin marks it as fraudulent.
    pub fn inject_replay(
        &self,
        captured: &Advertisement,
        at_time: u64,
        at_position: Position,
        tx_power_dbm: f64,
    ) -> Emission {
        Emission {
            advertisement: Advertisement {
                mac: captured.mac,
                rpi: captured.rpi,
                aem: captured.aem.clone(),
                emitted_at: at_time,
                origin: Origin::Attacker(self.id.clone()),
            },
            position: at_position,
            tx_power_dbm,
        }
    }

    /// Amplified copies of this step's honest emissions within earshot.
    pub(crate) fn amplify(
        &self,
        heard: &[(Advertisement, f64)],
        now: u64,
    ) -> Vec<Emission> {
        let AttackerSpec::Amplifier { position, gain_db, .. } = &self.spec else {
            return Vec::new();
        };
        let position = Position::new(position[0], position[1]);
        heard
            .iter()
            .map(|(ad, source_tx)| Emission {
                advertisement: Advertisement {
                    mac: ad.mac,
                    rpi: ad.rpi,
                    aem: ad.aem.clone(),
                    emitted_at: now,
                    origin: Origin::Attacker(self.id.clone()),
                },
                position,
                tx_power_dbm: source_tx + gain_db,
            })
            .collect()
    }

    /// True when a link with endpoints at `a` and `b` falls inside this
    /// attacker's jamming disc.
    pub(crate) fn jams(&self, a: &Position, b: &Position) -> bool {
        match &self.spec {
            AttackerSpec::Jammer { position, radius_m, .. } => {
                let center = Position::new(position[0], position[1]);
                center.distance_to(a) <= *radius_m || center.distance_to(b) <= *radius_m
            }
            _ => false,
        }
    }
}
