"""Hadamard code: encoding, 2-query local decoding, linearity testing and
the Goldreich-Levin local list decoder.

Positions and messages are k-bit integers (first coordinate is the most
significant bit); see :mod:`ecclab.bits`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bits import bits_to_int, dot, int_to_bits, parity, unit, wht
from .codes import Code, CodeParams

MAX_K = 24


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in [1, {MAX_K}], got {k}")


class BitOracle:
    """Query access to a word in {0,1}^(2^k), counting every position read.

    ``source`` is either a length-2^k table or a vectorised function mapping
    an array of positions to an array of bits.
    """

    def __init__(self, source, k: int | None = None):
        if callable(source):
            if k is None:
                raise ValueError("k is required for function oracles")
            self._fn: Callable[[np.ndarray], np.ndarray] = source
            self.table = None
        else:
            table = np.asarray(source, dtype=np.uint8)
            n = table.shape[0]
            if n == 0 or n & (n - 1):
                raise ValueError("table length must be a power of two")
            if k is not None and n != 1 << k:
                raise ValueError(f"table length {n} != 2^{k}")
            if np.any(table > 1):
                raise ValueError("table entries must be bits")
            k = n.bit_length() - 1
            self.table = table
            self._fn = table.__getitem__
        _check_k(k)
        self.k = k
        self.n = 1 << k
        self.queries = 0

    def __call__(self, pos: int) -> int:
        self.queries += 1
        return int(self._fn(np.asarray([pos], dtype=np.int64))[0])

    def query_many(self, pos) -> np.ndarray:
        pos = np.asarray(pos, dtype=np.int64)
        self.queries += pos.size
        return np.asarray(self._fn(pos.ravel()), dtype=np.uint8).reshape(pos.shape)

    def complement(self) -> "BitOracle":
        """Oracle for the negated word (fresh counter)."""
        if self.table is not None:
            return BitOracle(1 - self.table)
        fn = self._fn
        return BitOracle(lambda p: 1 - np.asarray(fn(p), dtype=np.uint8), self.k)

    def reset(self) -> None:
        self.queries = 0


def had_encode(x, k: int | None = None) -> np.ndarray:
    """H(x)_a = a . x mod 2 for every a in {0,1}^k.

    ``x`` is a bit sequence, or an integer together with ``k``.
    """
    if isinstance(x, (int, np.integer)):
        if k is None:
            raise ValueError("k is required when x is an integer")
        xv = int(x)
        if not 0 <= xv < 1 << k:
            raise ValueError(f"{xv} does not fit in {k} bits")
    else:
        k = len(x)
        xv = bits_to_int(x)
    _check_k(k)
    return dot(np.arange(1 << k, dtype=np.uint64), xv)


class HadamardCode(Code):
    """[2^k, k, 2^(k-1)]_2."""

    def __init__(self, k: int):
        _check_k(k)
        self.params = CodeParams(1 << k, k, 1 << (k - 1), 2)

    def encode(self, msg: Sequence[int]) -> tuple[int, ...]:
        if len(msg) != self.k:
            raise ValueError(f"message length {len(msg)} != k = {self.k}")
        return tuple(int(b) for b in had_encode(msg))


def blr_local_decode(y: BitOracle, i: int, rng: np.random.Generator) -> int:
    """x_i from two queries: y(a) xor y(a xor e_i) for uniform a."""
    e = unit(i, y.k)
    a = int(rng.integers(0, y.n))
    return y(a) ^ y(a ^ e)


def blr_query_pairs(k: int, i: int) -> np.ndarray:
    """All (first, second) query pairs of the local decoder, one row per random choice."""
    a = np.arange(1 << k, dtype=np.int64)
    return np.stack([a, a ^ unit(i, k)], axis=1)


def full_decode_repetitions(eps: float, k: int) -> int:
    """r = ceil(ln(4k) / (8 eps^2)).

    Each vote is right with probability >= 1/2 + 2 eps, so Hoeffding puts the
    per-bit majority failure at exp(-8 r eps^2) <= 1/(4k); a union bound over k
    bits gives overall success >= 3/4.
    """
    if not 0 < eps <= 0.25:
        raise ValueError("eps must be in (0, 1/4]")
    return math.ceil(math.log(4 * k) / (8 * eps * eps))


def _majority(votes: np.ndarray, r: int) -> np.ndarray:
    # ties go to 0
    return (2 * votes.sum(axis=-1) > r).astype(np.uint8)


def had_full_decode(y: BitOracle, eps: float, rng: np.random.Generator,
                    repetitions: int | None = None) -> tuple[int, ...]:
    """Recover all of x when y is (1/4 - eps)-close to H(x); 2 r k queries."""
    k = y.k
    r = repetitions or full_decode_repetitions(eps, k)
    z = rng.integers(0, y.n, size=(k, r), dtype=np.int64)
    e = np.array([unit(i, k) for i in range(k)], dtype=np.int64)[:, None]
    v = y.query_many(z) ^ y.query_many(z ^ e)
    return tuple(int(b) for b in _majority(v, r))


def blr_linearity_test(f: BitOracle, repetitions: int, rng: np.random.Generator) -> bool:
    """Accept iff f(a) xor f(b) = f(a xor b) on every one of ``repetitions`` random pairs."""
    a = rng.integers(0, f.n, size=repetitions, dtype=np.int64)
    b = rng.integers(0, f.n, size=repetitions, dtype=np.int64)
    return bool(np.all(f.query_many(a) ^ f.query_many(b) == f.query_many(a ^ b)))


def blr_rejection_probability(table) -> float:
    """Exact single-repetition rejection probability, enumerating every (a, b)."""
    t = np.asarray(table, dtype=np.uint8)
    n = t.shape[0]
    a = np.arange(n)
    bad = t[:, None] ^ t[None, :] ^ t[a[:, None] ^ a[None, :]]
    return float(bad.sum()) / (n * n)


def linear_agreements(table) -> np.ndarray:
    """Pr_x[f(x) = a . x] for every a, from the exact Walsh-Hadamard transform."""
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    return 0.5 + wht(1 - 2 * t) / (2 * n)


def count_close_linear(table, eps: float) -> int:
    """Number of linear functions with agreement >= 1/2 + eps."""
    return int(np.sum(linear_agreements(table) >= 0.5 + eps - 1e-12))


def list_size_bound(eps: float) -> float:
    """At most 1/(4 eps^2) linear functions agree with any f on >= 1/2 + eps."""
    return 1.0 / (4 * eps * eps)


def pairwise_majority_bound_check(t: int, eps: float) -> float:
    """Lower bound 1 - 1/(4 eps^2 t) on Pr[majority of t pairwise independent
    bits, each 1 w.p. >= 1/2 + eps, equals 1] (Chebyshev)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if eps <= 0:
        raise ValueError("eps must be positive")
    return max(0.0, 1.0 - 1.0 / (4 * eps * eps * t))


@dataclass(frozen=True)
class GLConfig:
    eps: float
    c_l: int = 2
    inner_eps: float = 0.125
    filter_candidates: bool = True

    def __post_init__(self):
        if not 0 < self.eps < 0.5:
            raise ValueError("eps must be in (0, 1/2)")
        if not 0 < self.inner_eps <= 0.25:
            raise ValueError("inner_eps must be in (0, 1/4]")

    @property
    def l(self) -> int:
        return math.ceil(2 * math.log2(1 / self.eps)) + self.c_l

    @property
    def t_est(self) -> int:
        """Number of pairwise-independent votes per majority: 2^l - 1."""
        return (1 << self.l) - 1

    def filter_samples(self, list_length: int) -> int:
        return math.ceil(48 / self.eps ** 2 * math.log(8 * max(1, list_length)))


def subset_points(xs: Sequence[int]) -> np.ndarray:
    """x_S = xor of x_j over j in S, for S = 1 .. 2^l - 1 read as bitmasks over the seeds."""
    xs = np.asarray(xs, dtype=np.int64)
    out = np.zeros(1 << len(xs), dtype=np.int64)
    for j, xj in enumerate(xs):
        half = 1 << j
        out[half: 2 * half] = out[:half] ^ xj
    return out[1:]


def estimate_agreements(g: BitOracle, candidates: Sequence[int], samples: int,
                        rng: np.random.Generator) -> np.ndarray:
    """Sampled estimate of Pr_z[g(z) = a . z] for each candidate a.

    When ``samples`` is at least 2^k, reading every position is cheaper and
    the agreements are computed exactly.
    """
    if samples >= g.n:
        z = np.arange(g.n, dtype=np.int64)
    else:
        z = rng.integers(0, g.n, size=samples, dtype=np.int64)
    gz = g.query_many(z)
    c = np.asarray(candidates, dtype=np.int64)[:, None]
    return np.mean(dot(c, z[None, :]) == gz[None, :], axis=1)


def gl_list_decode(g: BitOracle, eps: float, cfg: GLConfig | None = None,
                   rng: np.random.Generator | None = None) -> list[int]:
    """Goldreich-Levin: every a with Pr[g = L_a] > 1/2 + eps is in the output w.p. >= 3/4.

    Seeds x_1..x_l are drawn once; for each of the 2^l guesses b of (a . x_j)
    the corrected oracle g'(w) = maj_S (b_S xor g(w xor x_S)) is full-decoded.
    All guesses share the full decoder's sample positions, so g is read once
    per (position, S) and every guess is scored from the same reads.
    """
    if rng is None:
        raise ValueError("an explicit generator is required")
    cfg = cfg or GLConfig(eps)
    if cfg.eps != eps:
        raise ValueError("cfg.eps does not match eps")
    k, n, l = g.k, g.n, cfg.l
    xS = subset_points(rng.integers(0, n, size=l, dtype=np.int64))
    masks = np.arange(1, 1 << l, dtype=np.int64)
    guesses = np.arange(1 << l, dtype=np.int64)
    # sign of b_S for every (S, guess)
    b_sign = 1.0 - 2.0 * dot(masks[:, None], guesses[None, :]).astype(np.float32)

    r = full_decode_repetitions(cfg.inner_eps, k)
    z = rng.integers(0, n, size=(k, r), dtype=np.int64)
    e = np.array([unit(i, k) for i in range(k)], dtype=np.int64)[:, None]
    w = np.concatenate([z.ravel(), (z ^ e).ravel()])
    reads = g.query_many(w[:, None] ^ xS[None, :]).astype(np.float32)
    tally = (1.0 - 2.0 * reads) @ b_sign  # sum over S of (-1)^(b_S xor g(w xor x_S))
    g_prime = (tally < 0).astype(np.uint8)  # odd vote count: no ties
    half = k * r
    votes = (g_prime[:half] ^ g_prime[half:]).reshape(k, r, -1)
    bits = (2 * votes.sum(axis=1) > r).astype(np.int64)  # k x guesses, ties to 0
    weights = np.array([unit(i, k) for i in range(k)], dtype=np.int64)[:, None]
    cands = sorted(set(int(v) for v in (bits * weights).sum(axis=0)))
    if not cfg.filter_candidates:
        return cands
    est = estimate_agreements(g, cands, cfg.filter_samples(len(cands)), rng)
    return [a for a, p in zip(cands, est) if p > 0.5 + eps / 2]


def planted_oracle(a: int, k: int, agreement: float, rng: np.random.Generator) -> BitOracle:
    """L_a with exactly floor((1 - agreement) 2^k) positions flipped."""
    table = had_encode(a, k)
    flips = int(math.floor((1 - agreement) * (1 << k) + 1e-9))
    pos = rng.choice(1 << k, size=flips, replace=False)
    table[pos] ^= 1
    return BitOracle(table)


__all__ = [
    "BitOracle",
    "GLConfig",
    "HadamardCode",
    "bits_to_int",
    "blr_linearity_test",
    "blr_local_decode",
    "blr_query_pairs",
    "blr_rejection_probability",
    "count_close_linear",
    "estimate_agreements",
    "full_decode_repetitions",
    "gl_list_decode",
    "had_encode",
    "had_full_decode",
    "int_to_bits",
    "linear_agreements",
    "list_size_bound",
    "pairwise_majority_bound_check",
    "parity",
    "planted_oracle",
    "subset_points",
]
