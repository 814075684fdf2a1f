"""On-disk shard and manifest formats.

Shard file, little-endian::

    magic "MSCR" | version u8 = 1 | n, k, d, t u16 | modulus u32
    | node_index u16 | stripe_count u32 | 6 reserved zero bytes
    | payload: stripe_count * alpha symbols, u16 each

The manifest is UTF-8 ``key=value`` lines with keys
n, k, d, t, modulus, length, stripes, checksum.
"""

import struct
from dataclasses import dataclass

import numpy as np

MAGIC = b"MSCR"
VERSION = 1
HEADER = struct.Struct("<4sB4HIHI6s")
MANIFEST_KEYS = ("n", "k", "d", "t", "modulus", "length", "stripes", "checksum")

FNV_OFFSET = 14695981039346656037
FNV_PRIME = 1099511628211
_MASK64 = (1 << 64) - 1


class ShardFormatError(ValueError):
    pass


def fnv1a_64(data):
    h = FNV_OFFSET
    for b in data:
        h = ((h ^ b) * FNV_PRIME) & _MASK64
    return h


@dataclass(frozen=True)
class ShardHeader:
    n: int
    k: int
    d: int
    t: int
    modulus: int
    node_index: int
    stripe_count: int

    def pack(self):
        return HEADER.pack(MAGIC, VERSION, self.n, self.k, self.d, self.t,
                           self.modulus, self.node_index, self.stripe_count, bytes(6))

    @property
    def params_tuple(self):
        return (self.n, self.k, self.d, self.t, self.modulus)


def write_shard(path, header, rows):
    """Write ``rows`` (stripes x alpha symbols) under ``header``."""
    rows = np.asarray(rows)
    if rows.size and int(rows.max()) > 0xFFFF:
        raise ShardFormatError("symbols do not fit in 16 bits")
    with open(path, "wb") as f:
        f.write(header.pack())
        f.write(rows.astype("<u2").tobytes())


def read_shard(path, alpha=None):
    """Return ``(header, rows)``; ``alpha`` (if known) checks the payload length."""
    with open(path, "rb") as f:
        raw = f.read()
    if len(raw) < HEADER.size:
        raise ShardFormatError(f"{path}: truncated header")
    magic, version, n, k, d, t, modulus, idx, stripes, reserved = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ShardFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise ShardFormatError(f"{path}: unsupported version {version}")
    if reserved != bytes(6):
        raise ShardFormatError(f"{path}: reserved header bytes are not zero")
    header = ShardHeader(n, k, d, t, modulus, idx, stripes)
    if alpha is None:
        alpha = d - k + t
    payload = raw[HEADER.size:]
    if len(payload) != stripes * alpha * 2:
        raise ShardFormatError(
            f"{path}: payload is {len(payload)} bytes, header implies {stripes * alpha * 2}")
    rows = np.frombuffer(payload, dtype="<u2").astype(np.int64).reshape(stripes, alpha)
    return header, rows


def write_manifest(path, values):
    with open(path, "w", encoding="utf-8") as f:
        for key in MANIFEST_KEYS:
            f.write(f"{key}={values[key]}\n")


def read_manifest(path):
    values = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise ShardFormatError(f"{path}: malformed line {line!r}")
            values[key.strip()] = val.strip()
    missing = [k for k in MANIFEST_KEYS if k not in values]
    if missing:
        raise ShardFormatError(f"{path}: missing keys {missing}")
    out = {k: int(values[k]) for k in MANIFEST_KEYS if k != "checksum"}
    out["checksum"] = int(values["checksum"], 16)
    return out
