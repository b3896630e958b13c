#!/usr/bin/env python3
"""Wire rdata of every accepted corpus record, rendered by dnspython from
hand-written presentation text. Writes tests/fixtures/rdata_golden.json."""
import json
import pathlib

import dns.rdata
import dns.rdataclass
import dns.rdatatype

FIX = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
DOMAIN = "example.ddns"

corpus = json.loads((FIX / "record_corpus.json").read_text())


def absname(v):
    if v == "@":
        return DOMAIN + "."
    if v == ".":
        return "."
    if "." not in v:
        return v + "." + DOMAIN + "."
    return v.rstrip(".") + "."


def chunks(t):
    parts = t if isinstance(t, list) else [t]
    return " ".join('"' + p.replace("\\", "\\\\").replace('"', '\\"') + '"' for p in parts)


def dms(deg, pos, neg):
    hemi = pos if deg >= 0 else neg
    thousandths = round(abs(deg) * 3600000)
    d, rem = divmod(thousandths, 3600000)
    m, rem = divmod(rem, 60000)
    return f"{d} {m} {rem // 1000}.{rem % 1000:03d} {hemi}"


def text_for(t, f):
    if t in ("A", "AAAA"):
        return "A" if t == "A" else "AAAA", f["address"]
    if t in ("CNAME", "NS", "PTR"):
        return t, absname(f["target"])
    if t == "MX":
        return t, f"{f['priority']} {absname(f['server'])}"
    if t in ("TXT", "SPF", "DKIM", "DMARC"):
        return "TXT", chunks(f["text"])
    if t == "SRV":
        return t, f"{f['priority']} {f['weight']} {f['port']} {absname(f['target'])}"
    if t == "SOA":
        return t, (f"{absname(f['mname'])} {absname(f['rname'])} {f['serial']} {f['refresh']} {f['retry']} "
                   f"{f['expire']} {f['minimum']}")
    if t == "CAA":
        return t, f"{f['flags']} {f['tag']} \"{f['value']}\""
    if t == "TLSA":
        return t, f"{f['usage']} {f['selector']} {f['matching_type']} {f['certificate']}"
    if t == "SSHFP":
        return t, f"{f['algorithm']} {f['fingerprint_type']} {f['fingerprint']}"
    if t == "URI":
        return t, f"{f['priority']} {f['weight']} \"{f['target']}\""
    if t == "NAPTR":
        return t, (f"{f['order']} {f['preference']} \"{f['flags']}\" \"{f['services']}\" \"{f['regexp']}\" "
                   f"{absname(f['replacement'])}")
    if t == "LOC":
        alt = f.get("altitude", 0)
        return t, (f"{dms(f['latitude'], 'N', 'S')} {dms(f['longitude'], 'E', 'W')} {alt:.2f}m "
                   f"{f.get('size', 1)}m {f.get('horizontal_precision', 10000)}m {f.get('vertical_precision', 10)}m")
    if t == "HINFO":
        return t, f"\"{f['cpu']}\" \"{f['os']}\""
    if t == "RP":
        return t, f"{absname(f['mbox'])} {absname(f['txt'])}"
    raise KeyError(t)


out = {}
for t, c in corpus.items():
    wire_type, text = text_for(t, c["accept"])
    rd = dns.rdata.from_text(dns.rdataclass.IN, dns.rdatatype.from_text(wire_type), text)
    out[t] = {"type": int(dns.rdatatype.from_text(wire_type)), "rdata": rd.to_wire().hex(), "text": text}
(FIX / "rdata_golden.json").write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
print(len(out), "rdata vectors")
