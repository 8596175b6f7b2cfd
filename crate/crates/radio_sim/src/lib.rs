//! Deterministic discrete-time virtual BLE environment.
//!
//! A [`World`] holds devices on 2-D trajectories plus optional attacker
//! agents. Each [`World::step`] advances a seeded simulation by one tick:
//! identifiers rotate at interval boundaries (MAC and RPI together), every
//! device broadcasts, and every scanning device receives whatever clears
//! the signal floor and is not jammed. Identical seeds and scenarios
//! produce byte-identical event traces.

mod attacker;
mod clock;
mod config;
mod device;
mod signal;
mod world;

pub use attacker::{Attacker, AttackerSpec};
pub use clock::SimClock;
pub use config::{DeviceSpec, WaypointSpec, WorldConfig};
pub use device::{Advertisement, Device, DeviceId, Origin, Trajectory, Waypoint};
pub use signal::{rssi_at, PathLossModel, Position};
pub use world::{Delivery, Emission, StepOutput, World};
