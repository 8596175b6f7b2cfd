use protocol_core::{
    AssociatedEncryptedMetadata, IntervalNumber, RollingProximityIdentifier,
    TemporaryExposureKey, SECONDS_PER_INTERVAL,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::attacker::{Attacker, AttackerSpec};
use crate::clock::SimClock;
use crate::config::{DeviceSpec, WorldConfig};
use crate::device::{Advertisement, Device, DeviceId, Origin, Trajectory, Waypoint};
use crate::signal::Position;

/// An advertisement on the air, with the physics needed to receive it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Emission {
    pub advertisement: Advertisement,
    pub position: Position,
    pub tx_power_dbm: f64,
}

/// One advertisement as received by one device. `origin` is simulator
/// ground truth and must not be forwarded to device agents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delivery {
    pub receiver: DeviceId,
    pub mac: [u8; 6],
    pub rpi: RollingProximityIdentifier,
    pub aem: AssociatedEncryptedMetadata,
    pub rssi_dbm: f64,
    pub received_at: u64,
    pub origin: Origin,
}

/// Everything that happened in one tick.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOutput {
    pub now: u64,
    pub deliveries: Vec<Delivery>,
    pub emissions: Vec<Emission>,
    pub new_teks: Vec<(DeviceId, TemporaryExposureKey)>,
}

/// The virtual radio environment. Devices are kept sorted by id so event
/// order — and with it the whole trace — is a pure function of the seed
/// and scenario.
pub struct World {
    config: WorldConfig,
    clock: SimClock,
    rng: ChaCha12Rng,
    devices: Vec<Device>,
    attackers: Vec<Attacker>,
}

impl World {
    pub fn new(config: WorldConfig) -> Self {
        let clock = SimClock::new(config.start_time, config.tick_secs);
        let rng = ChaCha12Rng::seed_from_u64(config.seed);
        World { config, clock, rng, devices: Vec::new(), attackers: Vec::new() }
    }

    pub fn config(&self) -> &WorldConfig {
        &self.config
    }

    pub fn now(&self) -> u64 {
        self.clock.now()
    }

    pub fn add_device(&mut self, spec: &DeviceSpec) {
        let start = self.config.start_time;
        let waypoints = spec
            .waypoints
            .iter()
            .map(|w| Waypoint { t: start + w.t, position: Position::new(w.x, w.y) })
            .collect();
        let device = Device::new(
            DeviceId(spec.id.clone()),
            Trajectory::new(waypoints),
            spec.tx_power_dbm,
        );
        let at = self.devices.partition_point(|d| d.id < device.id);
        self.devices.insert(at, device);
    }

    pub fn add_attacker(&mut self, spec: &AttackerSpec) {
        self.attackers.push(Attacker::new(spec.clone()));
    }

    pub fn device(&self, id: &DeviceId) -> Option<&Device> {
        self.devices.iter().find(|d| &d.id == id)
    }

    pub fn devices(&self) -> impl Iterator<Item = &Device> {
        self.devices.iter()
    }

    pub fn attackers(&self) -> impl Iterator<Item = &Attacker> {
        self.attackers.iter()
    }

    fn jammed(&self, a: &Position, b: &Position) -> bool {
        self.attackers.iter().any(|atk| atk.jams(a, b))
    }

    fn noise(&mut self) -> f64 {
        if self.config.noise_sigma_db == 0.0 {
            return 0.0;
        }
        let normal = Normal::new(0.0, self.config.noise_sigma_db).expect("sigma >= 0");
        normal.sample(&mut self.rng)
    }

    /// Advances one tick: move, rotate, broadcast, deliver.
    pub fn step(&mut self) -> StepOutput {
        let previous = self.clock.now();
        let now = self.clock.advance();
        let interval = IntervalNumber(now / SECONDS_PER_INTERVAL);

        let mut new_teks = Vec::new();
        for device in &mut self.devices {
            device.move_to(now);
            if let Some(tek) = device.rotate(&mut self.rng, interval) {
                new_teks.push((device.id.clone(), tek));
            }
        }

        let mut emissions: Vec<Emission> = self
            .devices
            .iter()
            .map(|d| Emission {
                advertisement: d.advertisement(now),
                position: d.position,
                tx_power_dbm: d.tx_power_dbm,
            })
            .collect();

        // Attacker hearing uses the same propagation rule as devices.
        let honest = emissions.clone();
        let mut attacker_emissions = Vec::new();
        for attacker in &mut self.attackers {
            attacker_emissions.extend(attacker.due_replays(previous, now));
            if let Some(listen_at) = attacker.listen_position() {
                let mut heard = Vec::new();
                for emission in &honest {
                    let rssi = self.config.path_loss.rssi_at(
                        emission.tx_power_dbm,
                        listen_at.distance_to(&emission.position),
                        0.0,
                    );
                    if rssi >= self.config.sensitivity_floor_dbm {
                        heard.push((emission.advertisement.clone(), emission.tx_power_dbm));
                    }
                }
                attacker_emissions.extend(attacker.amplify(&heard, now));
                for (advertisement, _) in heard {
                    attacker.record_capture(advertisement, now);
                }
            }
        }
        emissions.extend(attacker_emissions);

        let mut deliveries = Vec::new();
        for device in &self.devices {
            for emission in &emissions {
                if emission.advertisement.origin == Origin::Device(device.id.clone()) {
                    continue;
                }
                let distance = device.position.distance_to(&emission.position);
                let noise = self.noise();
                let rssi =
                    self.config.path_loss.rssi_at(emission.tx_power_dbm, distance, noise);
                if rssi < self.config.sensitivity_floor_dbm {
                    continue;
                }
                if self.jammed(&device.position, &emission.position) {
                    continue;
                }
                deliveries.push(Delivery {
                    receiver: device.id.clone(),
                    mac: emission.advertisement.mac,
                    rpi: emission.advertisement.rpi,
                    aem: emission.advertisement.aem.clone(),
                    rssi_dbm: rssi,
                    received_at: now,
                    origin: emission.advertisement.origin.clone(),
                });
            }
        }

        StepOutput { now, deliveries, emissions, new_teks }
    }
}
