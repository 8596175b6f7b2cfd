use protocol_core::{
    derive_aemk, derive_rpi, derive_rpik, encrypt_aem, generate_tek, AemKey,
    AssociatedEncryptedMetadata, IntervalNumber, RollingProximityIdentifier, RpiKey,
    TemporaryExposureKey,
};
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::signal::Position;

/// Opaque device identifier; ground truth only, never broadcast.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeviceId(pub String);

impl std::fmt::Display for DeviceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl From<&str> for DeviceId {
    fn from(s: &str) -> Self {
        DeviceId(s.to_string())
    }
}

/// Who actually emitted an advertisement. Simulator-only ground truth,
/// stripped before anything reaches a device agent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    Device(DeviceId),
    Attacker(DeviceId),
}

impl Origin {
    pub fn is_attacker(&self) -> bool {
        matches!(self, Origin::Attacker(_))
    }
}

/// One broadcast frame as it exists on the air.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Advertisement {
    pub mac: [u8; 6],
    pub rpi: RollingProximityIdentifier,
    pub aem: AssociatedEncryptedMetadata,
    pub emitted_at: u64,
    pub origin: Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Waypoint {
    /// Absolute Unix time.
    pub t: u64,
    pub position: Position,
}

/// Piecewise-linear path through (time, position) waypoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    waypoints: Vec<Waypoint>,
}

impl Trajectory {
    /// Waypoints are sorted by time on construction.
    pub fn new(mut waypoints: Vec<Waypoint>) -> Self {
        assert!(!waypoints.is_empty(), "trajectory needs at least one waypoint");
        waypoints.sort_by_key(|w| w.t);
        Trajectory { waypoints }
    }

    pub fn fixed(position: Position) -> Self {
        Trajectory::new(vec![Waypoint { t: 0, position }])
    }

    pub fn position_at(&self, t: u64) -> Position {
        let first = &self.waypoints[0];
        if t <= first.t {
            return first.position;
        }
        for pair in self.waypoints.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if t <= b.t {
                let span = (b.t - a.t) as f64;
                if span == 0.0 {
                    return b.position;
                }
                let f = (t - a.t) as f64 / span;
                return Position::new(
                    a.position.x + (b.position.x - a.position.x) * f,
                    a.position.y + (b.position.y - a.position.y) * f,
                );
            }
        }
        self.waypoints.last().unwrap().position
    }
}

/// Current broadcast identity; all fields rotate together.
#[derive(Debug, Clone)]
struct BroadcastIdentity {
    interval: IntervalNumber,
    mac: [u8; 6],
    rpi: RollingProximityIdentifier,
    aem: AssociatedEncryptedMetadata,
}

/// One simulated handset: position, key material, and the currently
/// advertised identity.
#[derive(Debug, Clone)]
pub struct Device {
    pub id: DeviceId,
    pub trajectory: Trajectory,
    pub tx_power_dbm: f64,
    pub position: Position,
    teks: Vec<TemporaryExposureKey>,
    day_keys: Option<(RpiKey, AemKey)>,
    identity: Option<BroadcastIdentity>,
}

impl Device {
    pub fn new(id: DeviceId, trajectory: Trajectory, tx_power_dbm: f64) -> Self {
        let position = trajectory.position_at(0);
        Device {
            id,
            trajectory,
            tx_power_dbm,
            position,
            teks: Vec::new(),
            day_keys: None,
            identity: None,
        }
    }

    /// Daily keys generated so far, oldest first.
    pub fn tek_history(&self) -> &[TemporaryExposureKey] {
        &self.teks
    }

    pub fn current_mac(&self) -> Option<[u8; 6]> {
        self.identity.as_ref().map(|i| i.mac)
    }

    pub fn current_rpi(&self) -> Option<RollingProximityIdentifier> {
        self.identity.as_ref().map(|i| i.rpi)
    }

    pub(crate) fn move_to(&mut self, t: u64) {
        self.position = self.trajectory.position_at(t);
    }

    /// Swaps in a fresh MAC and the identifier for `interval`, atomically.
    /// Generates the day's key first when crossing a day boundary.
    /// Returns the new TEK if one was generated.
    pub fn rotate<R: RngCore + ?Sized>(
        &mut self,
        rng: &mut R,
        interval: IntervalNumber,
    ) -> Option<TemporaryExposureKey> {
        if let Some(identity) = &self.identity {
            if identity.interval == interval {
                return None;
            }
        }

        let mut fresh_tek = None;
        let needs_key = match self.teks.last() {
            Some(tek) => !tek.covers(interval),
            None => true,
        };
        if needs_key {
            let tek = generate_tek(rng, interval.day());
            self.day_keys = Some((derive_rpik(&tek), derive_aemk(&tek)));
            self.teks.push(tek);
            fresh_tek = Some(tek);
        }

        let (rpik, aemk) = self.day_keys.as_ref().expect("day keys exist after refresh");
        let rpi = derive_rpi(rpik, interval);
        let tx_byte = (self.tx_power_dbm.round().clamp(-128.0, 127.0) as i8).to_le_bytes();
        let aem = encrypt_aem(aemk, &rpi, &tx_byte).expect("1-byte metadata is valid");

        let mut mac = [0u8; 6];
        rng.fill_bytes(&mut mac);

        self.identity = Some(BroadcastIdentity { interval, mac, rpi, aem });
        fresh_tek
    }

    pub(crate) fn advertisement(&self, now: u64) -> Advertisement {
        let identity = self.identity.as_ref().expect("device rotated before emitting");
        Advertisement {
            mac: identity.mac,
            rpi: identity.rpi,
            aem: identity.aem.clone(),
            emitted_at: now,
            origin: Origin::Device(self.id.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn test_device() -> Device {
        Device::new(DeviceId::from("d1"), Trajectory::fixed(Position::new(0.0, 0.0)), 0.0)
    }

    #[test]
    fn rotation_changes_mac_and_rpi_together() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut device = test_device();

        device.rotate(&mut rng, IntervalNumber(100));
        let (mac1, rpi1) = (device.current_mac().unwrap(), device.current_rpi().unwrap());
        device.rotate(&mut rng, IntervalNumber(101));
        let (mac2, rpi2) = (device.current_mac().unwrap(), device.current_rpi().unwrap());

        assert_ne!(mac1, mac2);
        assert_ne!(rpi1, rpi2);
    }

    #[test]
    fn identity_constant_within_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut device = test_device();

        device.rotate(&mut rng, IntervalNumber(100));
        let before = (device.current_mac(), device.current_rpi());
        device.rotate(&mut rng, IntervalNumber(100));
        assert_eq!(before, (device.current_mac(), device.current_rpi()));
    }

    #[test]
    fn new_day_generates_new_tek() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut device = test_device();

        let first = device.rotate(&mut rng, IntervalNumber(143));
        assert!(first.is_some());
        assert!(device.rotate(&mut rng, IntervalNumber(144)).is_some());
        assert!(device.rotate(&mut rng, IntervalNumber(145)).is_none());
        assert_eq!(device.tek_history().len(), 2);
    }

    #[test]
    fn trajectory_interpolates() {
        let traj = Trajectory::new(vec![
            Waypoint { t: 0, position: Position::new(0.0, 0.0) },
            Waypoint { t: 100, position: Position::new(10.0, 0.0) },
        ]);
        assert_eq!(traj.position_at(50).x, 5.0);
        assert_eq!(traj.position_at(200).x, 10.0);
        assert_eq!(traj.position_at(0).x, 0.0);
    }
}
