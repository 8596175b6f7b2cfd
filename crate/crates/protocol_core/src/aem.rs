use aes::cipher::{generic_array::GenericArray, BlockEncrypt, KeyInit};
use aes::Aes128;
use serde::{Deserialize, Serialize};

use crate::error::ProtocolError;
use crate::keys::{AemKey, RollingProximityIdentifier};

pub const AEM_MAX_LEN: usize = 4;

/// Metadata bytes encrypted alongside an identifier (carries transmit power).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedEncryptedMetadata {
    pub ciphertext: Vec<u8>,
}

fn keystream(aemk: &AemKey, rpi: &RollingProximityIdentifier) -> [u8; 16] {
    // One-block stream keyed by the metadata key with the identifier as nonce.
    let cipher = Aes128::new(GenericArray::from_slice(&aemk.0));
    let mut block = GenericArray::from(rpi.0);
    cipher.encrypt_block(&mut block);
    block.into()
}

pub fn encrypt_aem(
    aemk: &AemKey,
    rpi: &RollingProximityIdentifier,
    metadata: &[u8],
) -> Result<AssociatedEncryptedMetadata, ProtocolError> {
    if metadata.is_empty() || metadata.len() > AEM_MAX_LEN {
        return Err(ProtocolError::InvalidArgument(format!(
            "metadata must be 1..={AEM_MAX_LEN} bytes, got {}",
            metadata.len()
        )));
    }
    let stream = keystream(aemk, rpi);
    let ciphertext = metadata
        .iter()
        .zip(stream.iter())
        .map(|(m, k)| m ^ k)
        .collect();
    Ok(AssociatedEncryptedMetadata { ciphertext })
}

pub fn decrypt_aem(
    aemk: &AemKey,
    rpi: &RollingProximityIdentifier,
    aem: &AssociatedEncryptedMetadata,
) -> Result<Vec<u8>, ProtocolError> {
    if aem.ciphertext.is_empty() || aem.ciphertext.len() > AEM_MAX_LEN {
        return Err(ProtocolError::InvalidArgument(format!(
            "ciphertext must be 1..={AEM_MAX_LEN} bytes, got {}",
            aem.ciphertext.len()
        )));
    }
    let stream = keystream(aemk, rpi);
    Ok(aem
        .ciphertext
        .iter()
        .zip(stream.iter())
        .map(|(c, k)| c ^ k)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keys::{derive_aemk, derive_rpik, derive_rpi, generate_tek};
    use crate::time::IntervalNumber;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tx_power_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tek = generate_tek(&mut rng, 0);
        let aemk = derive_aemk(&tek);
        let rpi = derive_rpi(&derive_rpik(&tek), IntervalNumber(12));

        let tx_power: i8 = -20;
        let aem = encrypt_aem(&aemk, &rpi, &tx_power.to_le_bytes()).unwrap();
        let plain = decrypt_aem(&aemk, &rpi, &aem).unwrap();
        assert_eq!(i8::from_le_bytes([plain[0]]), -20);
    }

    #[test]
    fn wrong_rpi_yields_garbage() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let tek = generate_tek(&mut rng, 0);
            let aemk = derive_aemk(&tek);
            let rpik = derive_rpik(&tek);
            let right = derive_rpi(&rpik, IntervalNumber(1));
            let wrong = derive_rpi(&rpik, IntervalNumber(2));

            let aem = encrypt_aem(&aemk, &right, &[0x42, 0x43]).unwrap();
            assert_ne!(decrypt_aem(&aemk, &wrong, &aem).unwrap(), vec![0x42, 0x43]);
        }
    }

    #[test]
    fn empty_and_oversize_metadata_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let tek = generate_tek(&mut rng, 0);
        let aemk = derive_aemk(&tek);
        let rpi = derive_rpi(&derive_rpik(&tek), IntervalNumber(0));

        assert!(encrypt_aem(&aemk, &rpi, &[]).is_err());
        assert!(encrypt_aem(&aemk, &rpi, &[0; 5]).is_err());
        assert!(encrypt_aem(&aemk, &rpi, &[0; 4]).is_ok());
    }

    // Vector from scripts/gen_key_schedule_vectors.py.
    #[test]
    fn golden_vector_zero_key() {
        let tek = crate::TemporaryExposureKey::new([0u8; 16], 0);
        let aemk = derive_aemk(&tek);
        let rpi = derive_rpi(&derive_rpik(&tek), IntervalNumber(0));
        let aem = encrypt_aem(&aemk, &rpi, &(-20i8).to_le_bytes()).unwrap();
        assert_eq!(hex::encode(&aem.ciphertext), "41");
    }
}
