"""Bit-vector helpers shared by the binary codes.

A k-bit vector (x1, ..., xk) is stored as an integer with x1 as the most
significant bit, so position a of a Hadamard codeword holds popcount(a & x) mod 2.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np


def bits_to_int(bits: Sequence[int]) -> int:
    v = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        v = (v << 1) | int(b)
    return v


def int_to_bits(v: int, k: int) -> tuple[int, ...]:
    if not 0 <= v < 1 << k:
        raise ValueError(f"{v} does not fit in {k} bits")
    return tuple((v >> (k - 1 - i)) & 1 for i in range(k))


def unit(i: int, k: int) -> int:
    """e_i for 0-based coordinate i."""
    if not 0 <= i < k:
        raise IndexError(f"coordinate {i} out of range for k={k}")
    return 1 << (k - 1 - i)


def parity(v) -> np.ndarray:
    """popcount(v) mod 2, elementwise."""
    return (np.bitwise_count(np.asarray(v, dtype=np.uint64)) & 1).astype(np.uint8)


def dot(a, x) -> np.ndarray:
    """Inner product mod 2 of integer-packed bit vectors (broadcasting)."""
    return parity(np.bitwise_and(np.asarray(a, dtype=np.uint64), np.asarray(x, dtype=np.uint64)))


def wht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform: out[a] = sum_x values[x] (-1)^{a.x}."""
    out = np.array(values, copy=True)
    n = out.shape[0]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        v = out.reshape(-1, 2, h)
        lo, hi = v[:, 0, :].copy(), v[:, 1, :]
        v[:, 0, :] += hi
        v[:, 1, :] = lo - hi
        h *= 2
    return out
