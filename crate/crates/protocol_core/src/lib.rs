//! Deterministic key schedule and matching engine for the exposure
//! notification protocol.
//!
//! Everything in this crate is a pure function of its inputs: daily
//! temporary exposure keys (TEKs) expand into per-interval rolling
//! proximity identifiers (RPIs), metadata is encrypted under a parallel
//! TEK-derived key, and published TEKs are matched against locally
//! observed RPIs with a bounded timestamp tolerance.

mod aem;
mod encoding;
mod error;
mod keys;
mod matching;
mod time;

pub use aem::{decrypt_aem, encrypt_aem, AssociatedEncryptedMetadata, AEM_MAX_LEN};
pub use encoding::{decode_b64url, decode_key16, encode_b64url};
pub use error::ProtocolError;
pub use keys::{
    derive_aemk, derive_rpi, derive_rpik, expand_tek, generate_tek, AemKey, RpiKey,
    RollingProximityIdentifier, TemporaryExposureKey, KEY_LEN,
};
pub use matching::{match_keys, ContactSighting, MatchEvent, PublishedTek, DEFAULT_TOLERANCE};
pub use time::{
    day_of_interval, interval_number, IntervalNumber, DayIndex, INTERVALS_PER_DAY,
    SECONDS_PER_DAY, SECONDS_PER_INTERVAL,
};
