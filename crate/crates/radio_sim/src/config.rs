use serde::{Deserialize, Serialize};

use crate::signal::PathLossModel;

fn default_tick() -> u64 {
    10
}

fn default_floor() -> f64 {
    -90.0
}

/// Physics and timing knobs for a simulation world.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldConfig {
    pub seed: u64,
    /// Unix time of the first tick.
    pub start_time: u64,
    #[serde(default = "default_tick")]
    pub tick_secs: u64,
    /// Receivers discard anything weaker than this.
    #[serde(default = "default_floor")]
    pub sensitivity_floor_dbm: f64,
    #[serde(default)]
    pub path_loss: PathLossModel,
    /// Standard deviation of per-delivery Gaussian noise, in dB.
    #[serde(default)]
    pub noise_sigma_db: f64,
}

impl Default for WorldConfig {
    fn default() -> Self {
        WorldConfig {
            seed: 0,
            start_time: 0,
            tick_secs: default_tick(),
            sensitivity_floor_dbm: default_floor(),
            path_loss: PathLossModel::default(),
            noise_sigma_db: 0.0,
        }
    }
}

/// Device entry in a scenario file. Waypoint times are offsets from the
/// scenario start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceSpec {
    pub id: String,
    #[serde(default)]
    pub tx_power_dbm: f64,
    pub waypoints: Vec<WaypointSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaypointSpec {
    /// Seconds after scenario start.
    pub t: u64,
    pub x: f64,
    pub y: f64,
}
