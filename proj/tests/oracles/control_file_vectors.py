#!/usr/bin/env python3
"""Canonical form and content id of the documentation control file, computed
with the stdlib json module. Writes tests/fixtures/example_canonical.json."""
import hashlib
import json
import pathlib

import base58

HERE = pathlib.Path(__file__).resolve().parent
FIX = HERE.parent / "fixtures"

doc = json.loads((FIX / "example_control.json").read_text())
for sets in doc["records"].values():
    for entries in sets.values():
        for e in entries:
            e.setdefault("ttl", 3600)
canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
cid = base58.b58encode(b"\x12\x20" + hashlib.sha256(canonical.encode()).digest()).decode()
(FIX / "example_canonical.json").write_text(json.dumps({"canonical": canonical, "content_id": cid}, indent=2) + "\n")
print(cid)
