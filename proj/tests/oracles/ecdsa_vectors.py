#!/usr/bin/env python3
"""Deterministic-nonce ECDSA vectors from python-ecdsa, plus Base58Check
addresses computed from the same public keys.

Run once; output is committed as tests/fixtures/ecdsa_vectors.json.
"""
import hashlib
import json
import sys

import base58
import ecdsa
from ecdsa.util import sigencode_strings_canonize

N = ecdsa.SECP256k1.order


def vector(secret: int, message: bytes):
    sk = ecdsa.SigningKey.from_secret_exponent(secret, curve=ecdsa.SECP256k1, hashfunc=hashlib.sha256)
    r, s = sk.sign_deterministic(message, hashfunc=hashlib.sha256, sigencode=sigencode_strings_canonize)
    pk = sk.get_verifying_key().to_string("compressed")
    return {
        "secret": f"{secret:064x}",
        "message": message.hex(),
        "public_key": pk.hex(),
        "r": r.hex(),
        "s": s.hex(),
    }


def main():
    cases = [
        (1, b""),
        (1, b"abc"),
        (2, b"DDNS/EXAMPLE"),
        (N - 1, b"edge of the scalar range"),
        (0x0101010101010101010101010101010101010101010101010101010101010101, b"seeded"),
        (0xC9AFA9D845BA75166B5C215767B1D6934E50C3DB36E89B127B8A622B120F6721, b"sample"),
        (0xC9AFA9D845BA75166B5C215767B1D6934E50C3DB36E89B127B8A622B120F6721, b"test"),
    ]
    h = hashlib.sha256(b"oracle-seed").digest()
    for i in range(25):
        h = hashlib.sha256(h).digest()
        secret = int.from_bytes(h, "big") % (N - 1) + 1
        cases.append((secret, hashlib.sha256(h + b"msg").digest()[: i + 1]))

    # Base58Check of version 0x37 over fixed 20-byte payloads.
    addresses = []
    for i in range(8):
        payload = hashlib.sha256(bytes([i])).digest()[:20]
        addresses.append({"version": 0x37, "payload": payload.hex(),
                          "text": base58.b58encode_check(bytes([0x37]) + payload).decode()})
    base58_plain = []
    for data in [b"", b"\x00", b"\x00\x00\x01", b"hello world", bytes(range(32))]:
        base58_plain.append({"hex": data.hex(), "text": base58.b58encode(data).decode()})

    json.dump({"signatures": [vector(s, m) for s, m in cases],
               "addresses": addresses,
               "base58": base58_plain}, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
