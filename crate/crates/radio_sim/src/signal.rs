use serde::{Deserialize, Serialize};

/// 2-D position in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub fn new(x: f64, y: f64) -> Self {
        Position { x, y }
    }

    pub fn distance_to(&self, other: &Position) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// Log-distance path loss: loss(d) = ref_loss_db + 10·exponent·log10(d).
///
/// Defaults are free-space constants (40 dB at 1 m, exponent 2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLossModel {
    pub ref_loss_db: f64,
    pub exponent: f64,
}

impl Default for PathLossModel {
    fn default() -> Self {
        PathLossModel { ref_loss_db: 40.0, exponent: 2.0 }
    }
}

impl PathLossModel {
    pub fn rssi_at(&self, tx_power_dbm: f64, distance_m: f64, noise_db: f64) -> f64 {
        // Distances under 10 cm clamp to 10 cm; the model diverges at 0.
        let d = distance_m.max(0.1);
        tx_power_dbm - (self.ref_loss_db + 10.0 * self.exponent * d.log10()) + noise_db
    }
}

/// Received signal strength under the default free-space model.
pub fn rssi_at(tx_power_dbm: f64, distance_m: f64, noise_db: f64) -> f64 {
    PathLossModel::default().rssi_at(tx_power_dbm, distance_m, noise_db)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_at_one_meter() {
        assert!((rssi_at(0.0, 1.0, 0.0) - (-40.0)).abs() < 1e-9);
    }

    #[test]
    fn closed_form_at_ten_meters() {
        assert!((rssi_at(0.0, 10.0, 0.0) - (-60.0)).abs() < 1e-9);
    }

    #[test]
    fn doubling_distance_costs_about_six_db() {
        let drop = rssi_at(0.0, 4.0, 0.0) - rssi_at(0.0, 8.0, 0.0);
        assert!((drop - 6.02).abs() < 0.01);
    }

    #[test]
    fn zero_distance_clamps() {
        assert_eq!(rssi_at(0.0, 0.0, 0.0), rssi_at(0.0, 0.1, 0.0));
    }

    #[test]
    fn noise_shifts_linearly() {
        assert!((rssi_at(0.0, 1.0, 3.5) - (-36.5)).abs() < 1e-9);
    }
}
