//! Serialization rules shared across the protocol: keys and identifiers
//! travel as unpadded base64url.

use base64::engine::general_purpose::URL_SAFE_NO_PAD;
use base64::Engine;

use crate::error::ProtocolError;

pub fn encode_b64url(bytes: &[u8]) -> String {
    URL_SAFE_NO_PAD.encode(bytes)
}

pub fn decode_b64url(text: &str) -> Result<Vec<u8>, ProtocolError> {
    URL_SAFE_NO_PAD
        .decode(text)
        .map_err(|e| ProtocolError::Encoding(format!("bad base64url: {e}")))
}

pub fn decode_key16(text: &str) -> Result<[u8; 16], ProtocolError> {
    let bytes = decode_b64url(text)?;
    bytes
        .try_into()
        .map_err(|_| ProtocolError::Encoding("expected 16 bytes".into()))
}

pub(crate) mod serde_key16 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(key: &[u8; 16], ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&super::encode_b64url(key))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<[u8; 16], D::Error> {
        let text = String::deserialize(de)?;
        super::decode_key16(&text).map_err(serde::de::Error::custom)
    }
}
