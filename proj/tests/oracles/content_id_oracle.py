#!/usr/bin/env python3
"""Recompute content ids with hashlib + base58 and compare to the C++ output."""
import hashlib
import subprocess
import sys

import base58


def main():
    out = subprocess.run([sys.argv[1]], check=True, capture_output=True, text=True).stdout
    lines = out.splitlines()
    bad = 0
    for line in lines:
        hexpayload, cid = line.split()
        payload = b"" if hexpayload == "-" else bytes.fromhex(hexpayload)
        expect = base58.b58encode(b"\x12\x20" + hashlib.sha256(payload).digest()).decode()
        if expect != cid:
            bad += 1
            print("mismatch", hexpayload[:32], cid, expect)
    print(f"{len(lines)} ids checked, {bad} mismatches")
    return 0 if bad == 0 and len(lines) == 1000 else 1


if __name__ == "__main__":
    sys.exit(main())
