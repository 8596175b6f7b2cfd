#!/usr/bin/env python3
"""Reference implementation of the identifier key schedule.

Computes the golden vectors frozen in the Rust test suite. The key
derivation here is written directly against hmac/hashlib so it shares
no code with the Rust implementation it checks.

Construction:
  rpik = hkdf_sha256(ikm=tek, salt=<32 zero bytes>, info=b"EN-RPIK", len=16)
  aemk = hkdf_sha256(ikm=tek, salt=<32 zero bytes>, info=b"EN-AEMK", len=16)
  rpi(rpik, j) = aes128_encrypt_block(rpik, b"EN-RPI" + b"\x00\x00" + u64le(j))
  aem(aemk, rpi, m) = m XOR aes128_encrypt_block(aemk, rpi)[:len(m)]

Run: python3 scripts/gen_key_schedule_vectors.py
"""

import hashlib
import hmac

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes


def hkdf_sha256(ikm: bytes, salt: bytes, info: bytes, length: int) -> bytes:
    prk = hmac.new(salt, ikm, hashlib.sha256).digest()
    okm = b""
    block = b""
    counter = 1
    while len(okm) < length:
        block = hmac.new(prk, block + info + bytes([counter]), hashlib.sha256).digest()
        okm += block
        counter += 1
    return okm[:length]


def aes128_block(key: bytes, block: bytes) -> bytes:
    enc = Cipher(algorithms.AES(key), modes.ECB()).encryptor()
    return enc.update(block) + enc.finalize()


def rpik(tek: bytes) -> bytes:
    return hkdf_sha256(tek, b"\x00" * 32, b"EN-RPIK", 16)


def aemk(tek: bytes) -> bytes:
    return hkdf_sha256(tek, b"\x00" * 32, b"EN-AEMK", 16)


def rpi(rpik_bytes: bytes, interval: int) -> bytes:
    pad = b"EN-RPI" + b"\x00\x00" + interval.to_bytes(8, "little")
    return aes128_block(rpik_bytes, pad)


def aem(aemk_bytes: bytes, rpi_bytes: bytes, metadata: bytes) -> bytes:
    stream = aes128_block(aemk_bytes, rpi_bytes)
    return bytes(a ^ b for a, b in zip(metadata, stream))


TEKS = {
    "zero": bytes(16),
    # Two fixed keys drawn once from /dev/urandom and pinned here.
    "rand_a": bytes.fromhex("8a3f0c6e1d5b49a2c7e80f1364bd9520"),
    "rand_b": bytes.fromhex("37d1a6f4028e5bc99f70213c46e8ad1b"),
}

INTERVALS = {"zero": [0, 2666666], "rand_a": [2666666, 2666667], "rand_b": [648000]}


def main() -> None:
    for name, tek in TEKS.items():
        rk, ak = rpik(tek), aemk(tek)
        print(f"tek {name} = {tek.hex()}")
        print(f"  rpik = {rk.hex()}")
        print(f"  aemk = {ak.hex()}")
        for j in INTERVALS[name]:
            print(f"  rpi({j}) = {rpi(rk, j).hex()}")
        # tx power -20 dBm as a one-byte signed value
        r0 = rpi(rk, INTERVALS[name][0])
        m = (-20).to_bytes(1, "little", signed=True)
        print(f"  aem(rpi({INTERVALS[name][0]}), tx=-20) = {aem(ak, r0, m).hex()}")


if __name__ == "__main__":
    main()
