use aes::cipher::{generic_array::GenericArray, BlockEncrypt, KeyInit};
use aes::Aes128;
use hkdf::Hkdf;
use rand::RngCore;
use serde::{Deserialize, Serialize};
use sha2::Sha256;

use crate::encoding;
use crate::time::{DayIndex, IntervalNumber, INTERVALS_PER_DAY};

pub const KEY_LEN: usize = 16;

const RPIK_LABEL: &[u8] = b"EN-RPIK";
const AEMK_LABEL: &[u8] = b"EN-AEMK";
const RPI_PAD_PREFIX: &[u8] = b"EN-RPI";

/// Daily secret from which all broadcast identifiers derive.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporaryExposureKey {
    #[serde(with = "encoding::serde_key16")]
    pub key: [u8; KEY_LEN],
    pub valid_from: IntervalNumber,
}

impl TemporaryExposureKey {
    pub fn new(key: [u8; KEY_LEN], day: DayIndex) -> Self {
        TemporaryExposureKey {
            key,
            valid_from: IntervalNumber::day_start(day),
        }
    }

    pub fn day(&self) -> DayIndex {
        self.valid_from.day()
    }

    /// True if `interval` falls inside this key's one-day validity window.
    pub fn covers(&self, interval: IntervalNumber) -> bool {
        interval >= self.valid_from
            && interval.0 < self.valid_from.0 + INTERVALS_PER_DAY
    }
}

impl std::fmt::Debug for TemporaryExposureKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // Key bytes are secrets; show only the validity window.
        f.debug_struct("TemporaryExposureKey")
            .field("valid_from", &self.valid_from)
            .finish_non_exhaustive()
    }
}

/// Key under which rolling proximity identifiers are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RpiKey(pub [u8; KEY_LEN]);

/// Key under which associated metadata is encrypted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AemKey(pub [u8; KEY_LEN]);

/// Broadcast pseudonym for one ten-minute interval.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct RollingProximityIdentifier(#[serde(with = "encoding::serde_key16")] pub [u8; KEY_LEN]);

impl RollingProximityIdentifier {
    pub fn to_b64(&self) -> String {
        encoding::encode_b64url(&self.0)
    }
}

impl std::fmt::Debug for RollingProximityIdentifier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rpi({})", self.to_b64())
    }
}

/// Draws a fresh daily key from the provided entropy source.
pub fn generate_tek<R: RngCore + ?Sized>(rng: &mut R, day: DayIndex) -> TemporaryExposureKey {
    let mut key = [0u8; KEY_LEN];
    rng.fill_bytes(&mut key);
    TemporaryExposureKey::new(key, day)
}

fn hkdf_expand16(tek: &TemporaryExposureKey, label: &[u8]) -> [u8; KEY_LEN] {
    // Extract-expand with an all-zero salt, domain-separated by label.
    let hk = Hkdf::<Sha256>::new(None, &tek.key);
    let mut out = [0u8; KEY_LEN];
    hk.expand(label, &mut out).expect("16 bytes is a valid HKDF length");
    out
}

pub fn derive_rpik(tek: &TemporaryExposureKey) -> RpiKey {
    RpiKey(hkdf_expand16(tek, RPIK_LABEL))
}

pub fn derive_aemk(tek: &TemporaryExposureKey) -> AemKey {
    AemKey(hkdf_expand16(tek, AEMK_LABEL))
}

/// Derives the identifier broadcast during `interval`: one AES-128 block
/// over a padded little-endian interval number.
pub fn derive_rpi(rpik: &RpiKey, interval: IntervalNumber) -> RollingProximityIdentifier {
    let cipher = Aes128::new(GenericArray::from_slice(&rpik.0));
    let mut block = [0u8; 16];
    block[..RPI_PAD_PREFIX.len()].copy_from_slice(RPI_PAD_PREFIX);
    block[8..].copy_from_slice(&interval.0.to_le_bytes());
    let mut ga = GenericArray::from(block);
    cipher.encrypt_block(&mut ga);
    RollingProximityIdentifier(ga.into())
}

/// All 144 (interval, identifier) pairs covered by one daily key.
pub fn expand_tek(
    tek: &TemporaryExposureKey,
) -> Vec<(IntervalNumber, RollingProximityIdentifier)> {
    let rpik = derive_rpik(tek);
    (0..INTERVALS_PER_DAY)
        .map(|off| {
            let interval = IntervalNumber(tek.valid_from.0 + off);
            (interval, derive_rpi(&rpik, interval))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn tek_from_hex(hex_key: &str, day: DayIndex) -> TemporaryExposureKey {
        let bytes = hex::decode(hex_key).unwrap();
        TemporaryExposureKey::new(bytes.try_into().unwrap(), day)
    }

    #[test]
    fn generation_is_deterministic_under_fixed_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(generate_tek(&mut a, 0), generate_tek(&mut b, 0));
    }

    #[test]
    fn generation_is_fresh_as_rng_advances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let first = generate_tek(&mut rng, 0);
        let second = generate_tek(&mut rng, 0);
        assert_ne!(first.key, second.key);
    }

    #[test]
    fn valid_from_is_day_aligned() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let tek = generate_tek(&mut rng, 3);
        assert_eq!(tek.valid_from, IntervalNumber(432));
        assert!(tek.valid_from.is_day_aligned());
    }

    #[test]
    fn derivations_are_deterministic() {
        let tek = tek_from_hex("8a3f0c6e1d5b49a2c7e80f1364bd9520", 0);
        assert_eq!(derive_rpik(&tek), derive_rpik(&tek));
        assert_eq!(derive_aemk(&tek), derive_aemk(&tek));
        let rpik = derive_rpik(&tek);
        assert_eq!(
            derive_rpi(&rpik, IntervalNumber(17)),
            derive_rpi(&rpik, IntervalNumber(17))
        );
    }

    // Golden vectors computed by scripts/gen_key_schedule_vectors.py and
    // frozen here; the script implements the same extract-expand and block
    // construction against Python's hmac/hashlib and the cryptography AES.
    #[test]
    fn zero_key_golden_vectors() {
        let tek = tek_from_hex("00000000000000000000000000000000", 0);
        assert_eq!(hex::encode(derive_rpik(&tek).0), "57e4c5f2ceeb86a849542209e846a4d9");
        assert_eq!(hex::encode(derive_aemk(&tek).0), "e8ccd234e1115b41c823f73e42f30375");
        let rpik = derive_rpik(&tek);
        assert_eq!(
            hex::encode(derive_rpi(&rpik, IntervalNumber(0)).0),
            "f252a8a76c6012a86337d54f914b53b5"
        );
        assert_eq!(
            hex::encode(derive_rpi(&rpik, IntervalNumber(2_666_666)).0),
            "7f1c8a151919e94e4c9e7864f0fddce8"
        );
    }

    #[test]
    fn rpik_and_aemk_differ_on_random_keys() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for day in 0..1000 {
            let tek = generate_tek(&mut rng, day);
            assert_ne!(derive_rpik(&tek).0, derive_aemk(&tek).0);
        }
    }

    #[test]
    fn consecutive_intervals_give_distinct_identifiers() {
        let tek = tek_from_hex("37d1a6f4028e5bc99f70213c46e8ad1b", 4500);
        let rpik = derive_rpik(&tek);
        // Exhaustive over one day's worth of intervals.
        let ids: HashSet<_> = (0..INTERVALS_PER_DAY)
            .map(|off| derive_rpi(&rpik, IntervalNumber(tek.valid_from.0 + off)).0)
            .collect();
        assert_eq!(ids.len(), INTERVALS_PER_DAY as usize);
    }

    #[test]
    fn expand_covers_exactly_one_day() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tek = generate_tek(&mut rng, 10);
        let expanded = expand_tek(&tek);
        assert_eq!(expanded.len(), 144);
        assert_eq!(expanded[0].0, IntervalNumber(1440));
        assert_eq!(expanded[143].0, IntervalNumber(1583));

        let rpik = derive_rpik(&tek);
        for (interval, rpi) in &expanded {
            assert_eq!(*rpi, derive_rpi(&rpik, *interval));
        }

        let distinct: HashSet<_> = expanded.iter().map(|(_, r)| r.0).collect();
        assert_eq!(distinct.len(), 144);
    }

    #[test]
    fn no_rpi_collides_with_metadata_key() {
        let mut rng = ChaCha8Rng::seed_from_u64(321);
        for day in 0..1000 {
            let tek = generate_tek(&mut rng, day);
            let aemk = derive_aemk(&tek).0;
            let rpik_bytes = derive_rpik(&tek).0;
            for (_, rpi) in expand_tek(&tek) {
                assert_ne!(rpi.0, aemk);
                assert_ne!(rpi.0, rpik_bytes);
            }
        }
    }
}
