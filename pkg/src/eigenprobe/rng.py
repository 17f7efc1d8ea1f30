"""Deterministic random streams.

Every sampler in this package draws from a Philox counter-based generator
whose 128-bit key is derived by hashing a tuple of labels (strings, ints,
floats, arrays).  Two different label tuples give statistically independent
streams, and the same tuple gives the same stream on every platform and
under any thread/process scheduling.

Gaussians are produced by applying the inverse normal CDF (a fixed rational
approximation, ``scipy.special.ndtri``) to 53-bit uniforms, so the normal
stream is also reproducible bit-for-bit; rejection-style normal generators
are avoided on purpose.
"""

from __future__ import annotations

import hashlib

import numpy as np
from scipy.special import ndtri

_SEP = b"\x1f"


def _encode(part) -> bytes:
    if isinstance(part, bytes):
        return b"b" + part
    if isinstance(part, str):
        return b"s" + part.encode("utf-8")
    if isinstance(part, (bool, np.bool_)):
        return b"i" + str(int(part)).encode()
    if isinstance(part, (int, np.integer)):
        return b"i" + str(int(part)).encode()
    if isinstance(part, (float, np.floating)):
        # repr round-trips doubles exactly
        return b"f" + repr(float(part)).encode()
    if isinstance(part, np.ndarray):
        arr = np.ascontiguousarray(part)
        return b"a" + str(arr.dtype).encode() + _SEP + str(arr.shape).encode() + _SEP + arr.tobytes()
    if isinstance(part, (tuple, list)):
        return b"t" + _SEP.join(_encode(p) for p in part)
    raise TypeError(f"cannot derive a stream key from {type(part)!r}")


def derive_key(*parts) -> int:
    """128-bit Philox key from a tuple of labels."""
    h = hashlib.blake2b(digest_size=16)
    for part in parts:
        h.update(_encode(part))
        h.update(_SEP)
    return int.from_bytes(h.digest(), "little")


def stream(*parts) -> np.random.Generator:
    """Independent generator addressed by the given labels."""
    return np.random.Generator(np.random.Philox(key=derive_key(*parts)))


def seed_from(*parts) -> int:
    """64-bit sub-seed (for APIs that take a plain integer seed)."""
    return derive_key(*parts) & 0xFFFFFFFFFFFFFFFF


def uniform_open(rng: np.random.Generator, size) -> np.ndarray:
    """Uniforms on the open interval (0, 1): (k + 1/2) / 2^53."""
    k = rng.integers(0, 1 << 53, size=size, dtype=np.uint64)
    return (k.astype(np.float64) + 0.5) * 2.0**-53


def standard_normal(rng: np.random.Generator, size) -> np.ndarray:
    """N(0,1) draws via the inverse-CDF transform (platform independent)."""
    return ndtri(uniform_open(rng, size))
