#!/usr/bin/env python3
"""Cross-implementation check.

Drives the CLI to produce keys, signatures, and a sanitized log, then
re-verifies everything here with an independent implementation of the
binary formats: GF(16) arithmetic, public-map evaluation in the documented
coefficient order, the canonical message/AD/fixed-part encodings, and the
SHAKE256 hash-to-field framing. Any byte-level drift in the formats fails
this script.
"""

import hashlib
import json
import struct
import subprocess
import sys
import tempfile
from pathlib import Path


def gf16_mul(a, b):
    r = 0
    for i in range(4):
        if a >> i & 1:
            for j in range(4):
                if b >> j & 1:
                    r ^= 1 << (i + j)
    for deg in (6, 5, 4):
        if r >> deg & 1:
            r ^= 0x13 << (deg - 4)
    return r


MUL = [[gf16_mul(a, b) for b in range(16)] for a in range(16)]


def unpack_elements(data, count):
    assert len(data) == (count + 1) // 2, "payload size mismatch"
    return [data[i // 2] & 0xF if i % 2 == 0 else data[i // 2] >> 4 for i in range(count)]


def parse_public_key(path, expected_role):
    raw = Path(path).read_bytes()
    assert raw[:4] == b"MSAN" and raw[4] == 0x01, "bad key header"
    assert raw[5] == expected_role, f"role {raw[5]} != {expected_role}"
    n, m = struct.unpack(">HH", raw[6:10])
    assert raw[10] == 0x10, "field order byte"
    count = m * (n * (n + 1) // 2 + n + 1)
    elems = unpack_elements(raw[11:], count)
    polys, pos, quad_len = [], 0, n * (n + 1) // 2
    for _ in range(m):
        quad = elems[pos : pos + quad_len]
        pos += quad_len
        lin = elems[pos : pos + n]
        pos += n
        cst = elems[pos]
        pos += 1
        polys.append((quad, lin, cst))
    return raw, n, m, polys


def eval_public(n, polys, x):
    prods = [MUL[x[i]][x[j]] for i in range(n) for j in range(i, n)]
    out = []
    for quad, lin, cst in polys:
        acc = cst
        for c, p in zip(quad, prods):
            acc ^= MUL[c][p]
        for c, xi in zip(lin, x):
            acc ^= MUL[c][xi]
        out.append(acc)
    return out


def parse_signatures(path, n):
    raw = Path(path).read_bytes()
    sigs, off, half = [], 0, (n + 1) // 2
    while off < len(raw):
        assert raw[off : off + 4] == b"MSIG" and raw[off + 4] == 0x01, "bad signature header"
        assert struct.unpack(">H", raw[off + 5 : off + 7])[0] == n
        off += 7
        s1 = unpack_elements(raw[off : off + half], n)
        off += half
        s2 = unpack_elements(raw[off : off + half], n)
        off += half
        count = struct.unpack(">I", raw[off : off + 4])[0]
        off += 4
        mask = raw[off : off + (count + 7) // 8]
        off += len(mask)
        modifiable = [(mask[i // 8] >> (7 - i % 8)) & 1 for i in range(count)]
        sigs.append((s1, s2, count, modifiable))
    return sigs


def blocks_of(schema, line):
    entry = json.loads(line)
    return [f"{name}={entry[name]}".encode() for name in schema]


def encode_message(blocks):
    out = struct.pack(">I", len(blocks))
    for b in blocks:
        out += struct.pack(">I", len(b)) + b
    return out


def encode_ad(count, modifiable):
    mask = bytearray((count + 7) // 8)
    for i, bit in enumerate(modifiable):
        if bit:
            mask[i // 8] |= 0x80 >> (i % 8)
    return struct.pack(">I", count) + bytes(mask)


def fixed_extract(blocks, modifiable):
    out = struct.pack(">I", len(blocks))
    for i, b in enumerate(blocks):
        if not modifiable[i]:
            out += struct.pack(">II", i, len(b)) + b
    return out


def hash_to_field(tag, parts, m):
    stream = bytes([tag])
    for p in parts:
        stream += struct.pack(">I", len(p)) + p
    dig = hashlib.shake_256(stream).digest((m + 1) // 2)
    return [dig[i // 2] & 0xF if i % 2 == 0 else dig[i // 2] >> 4 for i in range(m)]


def main():
    cli = str(Path(sys.argv[1]).resolve())
    schema = ["timestamp", "actor", "action", "resource", "detail"]
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        (tmp / "policy.json").write_text(
            json.dumps({"fields": schema, "redactable": ["actor", "detail"]})
        )
        log_line = json.dumps(
            {
                "timestamp": "2026-08-09T09:00:00Z",
                "actor": "carol",
                "action": "export",
                "resource": "/db/records",
                "detail": "quarterly export",
            }
        )
        (tmp / "log.jsonl").write_text(log_line + "\n")

        def run(*args):
            subprocess.run([cli, *args], cwd=tmp, check=True, capture_output=True)

        run("keygen", "--role", "signer", "--params", "uov-toy", "--out", "signer",
            "--seed", "11223344")
        run("keygen", "--role", "sanitizer", "--params", "uov-toy", "--out", "sanit",
            "--seed", "55667788")
        run("sign", "--key", "signer.sk", "--sanitizer-pk", "sanit.pk",
            "--policy", "policy.json", "--in", "log.jsonl", "--out", "log.msig",
            "--seed", "99")
        run("sanitize", "--key", "sanit.sk", "--signer-pk", "signer.pk",
            "--policy", "policy.json", "--redact", "detail",
            "--in", "log.jsonl", "--sig", "log.msig",
            "--out", "log2.msig", "--out-msg", "log2.jsonl", "--seed", "aa")

        signer_raw, n, m, signer_polys = parse_public_key(tmp / "signer.pk", 0x00)
        sanit_raw, n2, m2, sanit_polys = parse_public_key(tmp / "sanit.pk", 0x02)
        assert (n, m) == (n2, m2) == (24, 8)

        checks = []

        def verify(line, sig, expect_origin):
            s1, s2, count, modifiable = sig
            blocks = blocks_of(schema, line)
            assert count == len(blocks)
            h0 = hash_to_field(
                0x00, [fixed_extract(blocks, modifiable), encode_ad(count, modifiable), sanit_raw], m
            )
            checks.append(("sigma1", eval_public(n, signer_polys, s1) == h0))
            h1 = hash_to_field(0x01, [encode_message(blocks), sanit_raw, signer_raw], m)
            by_signer = eval_public(n, signer_polys, s2) == h1
            by_sanitizer = eval_public(n, sanit_polys, s2) == h1
            checks.append(("sigma2", by_signer or by_sanitizer))
            checks.append(("origin " + expect_origin,
                           (expect_origin == "Sig") == by_signer))

        verify(log_line, parse_signatures(tmp / "log.msig", n)[0], "Sig")
        sanitized_line = (tmp / "log2.jsonl").read_text().strip()
        assert "[REDACTED]" in sanitized_line
        verify(sanitized_line, parse_signatures(tmp / "log2.msig", n)[0], "San")

        # Negative control: a flipped element must not verify here either.
        s1, s2, count, modifiable = parse_signatures(tmp / "log.msig", n)[0]
        blocks = blocks_of(schema, log_line)
        h0 = hash_to_field(
            0x00, [fixed_extract(blocks, modifiable), encode_ad(count, modifiable), sanit_raw], m
        )
        broken = list(s1)
        broken[0] ^= 0x7
        checks.append(("mutation rejected", eval_public(n, signer_polys, broken) != h0))

        failures = [name for name, ok in checks if not ok]
        for name, ok in checks:
            print(f"{'ok  ' if ok else 'FAIL'} {name}")
        if failures:
            sys.exit(f"cross-implementation mismatch: {failures}")
        print(f"all {len(checks)} cross-implementation checks passed")


if __name__ == "__main__":
    main()
