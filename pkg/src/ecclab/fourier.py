"""Fourier analysis of boolean functions and heavy-coefficient learning.

Two views of a boolean function are kept apart on purpose: the 0/1 truth
table, and the +-1 view with 0 -> +1, 1 -> -1.  Conversions are explicit
(:meth:`BooleanFunction.pm`).  Coefficients are f_hat(a) = 2^-k sum_x f(x) chi_a(x)
with chi_a(x) = (-1)^(a.x) on the +-1 view.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, TextIO

import numpy as np

from .bits import dot, int_to_bits, wht
from .hadamard import BitOracle, GLConfig, gl_list_decode

MAX_K = 20


class BooleanFunction:
    """Truth table over {0,1}^k (bit values), position x = integer form of x."""

    def __init__(self, table):
        t = np.asarray(table, dtype=np.uint8)
        n = t.shape[0]
        if n == 0 or n & (n - 1):
            raise ValueError("table length must be a power of two")
        if np.any(t > 1):
            raise ValueError("truth table entries must be 0 or 1")
        self.k = n.bit_length() - 1
        if self.k > MAX_K:
            raise ValueError(f"k={self.k} exceeds {MAX_K}")
        self.table = t
        self.table.setflags(write=False)

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], k: int) -> "BooleanFunction":
        return cls(fn(np.arange(1 << k, dtype=np.int64)))

    @classmethod
    def linear(cls, a: int, k: int) -> "BooleanFunction":
        return cls(dot(np.arange(1 << k), a))

    @property
    def n(self) -> int:
        return 1 << self.k

    def pm(self) -> np.ndarray:
        """+-1 view: 0 -> +1, 1 -> -1."""
        return 1 - 2 * self.table.astype(np.int64)

    def negate(self) -> "BooleanFunction":
        return BooleanFunction(1 - self.table)

    def oracle(self) -> BitOracle:
        return BitOracle(self.table)

    def __eq__(self, other) -> bool:
        return isinstance(other, BooleanFunction) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())


@dataclass(frozen=True)
class FourierSpectrum:
    """Coefficients indexed by a; ``sums`` holds the exact integers 2^k f_hat(a)."""

    k: int
    sums: np.ndarray

    @property
    def coefficients(self) -> np.ndarray:
        return self.sums / float(1 << self.k)

    def __getitem__(self, a: int) -> float:
        return float(self.sums[a]) / (1 << self.k)

    def exact(self, a: int) -> Fraction:
        return Fraction(int(self.sums[a]), 1 << self.k)

    def parseval(self, exact: bool = False):
        """sum_a f_hat(a)^2 (1 for boolean functions)."""
        if exact:
            return Fraction(sum(int(s) * int(s) for s in self.sums), 1 << (2 * self.k))
        c = self.coefficients
        return float(np.dot(c, c))

    def heavy(self, theta: float) -> dict[int, float]:
        """{a: f_hat(a)} for every |f_hat(a)| >= theta."""
        c = self.coefficients
        return {int(a): float(c[a]) for a in np.flatnonzero(np.abs(c) >= theta)}

    def to_csv(self, fh: TextIO | None = None, threshold: float = 0.0) -> str:
        """Rows ``a,coefficient`` with a as a k-bit string and 9 decimals."""
        buf = fh or io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "coefficient"])
        for a, c in enumerate(self.coefficients):
            if abs(c) >= threshold:
                w.writerow(["".join(map(str, int_to_bits(a, self.k))), f"{c:.9f}"])
        return buf.getvalue() if fh is None else ""


def fourier_transform(f: BooleanFunction) -> FourierSpectrum:
    return FourierSpectrum(f.k, wht(f.pm()))


def synthesis(spec: FourierSpectrum) -> BooleanFunction:
    """Invert the transform exactly: 2^k f(x) = sum_a sums[a] chi_a(x) / 2^k."""
    vals = wht(spec.sums)
    n = 1 << spec.k
    if np.any(vals % n):
        raise ValueError("spectrum does not come from a boolean function")
    pm = vals // n
    if not np.all(np.abs(pm) == 1):
        raise ValueError("spectrum does not come from a boolean function")
    return BooleanFunction((1 - pm) // 2)


def agreement_from_coefficient(f: BooleanFunction, a: int) -> Fraction:
    """Pr_x[f(x) = a.x] = 1/2 + f_hat(a)/2, cross-checked by direct count."""
    spec_val = Fraction(int(wht(f.pm())[a]), f.n)
    formula = Fraction(1, 2) + spec_val / 2
    counted = Fraction(int(np.sum(f.table == dot(np.arange(f.n), a))), f.n)
    if formula != counted:  # pragma: no cover - identity
        raise AssertionError(f"agreement identity failed at a={a}: {formula} != {counted}")
    return formula


def estimate_coefficients(oracle: BitOracle, candidates, samples: int,
                          rng: np.random.Generator) -> np.ndarray:
    """Sampled f_hat(a) = E_z[(-1)^(f(z) + a.z)] for each candidate."""
    z = rng.integers(0, oracle.n, size=samples, dtype=np.int64)
    fz = oracle.query_many(z).astype(np.int64)
    c = np.asarray(list(candidates), dtype=np.int64)[:, None]
    signs = 1 - 2 * (dot(c, z[None, :]).astype(np.int64) ^ fz[None, :])
    return signs.mean(axis=1)


def km_sample_size(tolerance: float, list_length: int) -> int:
    """Hoeffding: ceil(2 ln(16 L) / tol^2) keeps all L estimates within tol w.p. >= 7/8."""
    return math.ceil(2 * math.log(16 * max(1, list_length)) / tolerance ** 2)


def km_learn_heavy(f, theta: float, rng: np.random.Generator,
                   tolerance: float | None = None) -> list[tuple[int, float]]:
    """Find the a with large |f_hat(a)| using Goldreich-Levin on f and on not-f.

    GL runs with eps = theta/2, so any a with |f_hat(a)| > theta is a
    candidate with probability >= 3/4 per sign.  Candidates are re-estimated
    by sampling and kept when |estimate| >= theta - tolerance (default
    theta/4).  Returns (a, estimate) pairs sorted by a.
    """
    if not 0 < theta < 1:
        raise ValueError("theta must be in (0, 1)")
    tol = theta / 4 if tolerance is None else tolerance
    oracle = f.oracle() if isinstance(f, BooleanFunction) else f
    cfg = GLConfig(theta / 2)
    cands = set(gl_list_decode(oracle, cfg.eps, cfg, rng))
    cands |= set(gl_list_decode(oracle.complement(), cfg.eps, cfg, rng))
    cands = sorted(cands)
    if not cands:
        return []
    est = estimate_coefficients(oracle, cands, km_sample_size(tol, len(cands)), rng)
    return [(a, float(e)) for a, e in zip(cands, est) if abs(e) >= theta - tol]


@dataclass
class KMApproximation:
    coefficients: dict[int, float]
    approximation: BooleanFunction
    disagreement: float | None

    @property
    def support(self) -> list[int]:
        return sorted(self.coefficients)


def sign_threshold(k: int, coefficients: Mapping[int, float]) -> BooleanFunction:
    """0/1 table of sign(g), g = sum_a c_a chi_a; g >= 0 maps to 0."""
    x = np.arange(1 << k, dtype=np.int64)
    g = np.zeros(1 << k)
    for a, c in coefficients.items():
        g += c * (1 - 2 * dot(x, a).astype(np.int64))
    return BooleanFunction((g < 0).astype(np.uint8))


def km_approximate(f, rng: np.random.Generator, threshold: float = 0.1,
                   tolerance: float | None = None) -> KMApproximation:
    """Learn the heavy coefficients, then return sign(sum of estimated terms).

    When ``f`` is a :class:`BooleanFunction` the exact disagreement with the
    approximation is reported; for a bare oracle it is ``None``.
    """
    learned = dict(km_learn_heavy(f, threshold, rng, tolerance))
    k = f.k
    approx = sign_threshold(k, learned)
    dis = None
    if isinstance(f, BooleanFunction):
        dis = float(np.mean(approx.table != f.table))
    return KMApproximation(learned, approx, dis)


def random_rounding(k: int, coefficients: Mapping[int, float], rng: np.random.Generator) -> BooleanFunction:
    """f(x) = +1 with probability (1 + g(x))/2 for g = sum_a c_a chi_a (|g| <= 1 required).

    E[f_hat(a)] = c_a, so the result has approximately the given spectrum.
    """
    x = np.arange(1 << k, dtype=np.int64)
    g = np.zeros(1 << k)
    for a, c in coefficients.items():
        g += c * (1 - 2 * dot(x, a).astype(np.int64))
    if np.any(np.abs(g) > 1 + 1e-12):
        raise ValueError("coefficients give |g| > 1")
    plus = rng.random(1 << k) < (1 + g) / 2
    return BooleanFunction((~plus).astype(np.uint8))


__all__ = [
    "BooleanFunction",
    "FourierSpectrum",
    "KMApproximation",
    "agreement_from_coefficient",
    "estimate_coefficients",
    "fourier_transform",
    "km_approximate",
    "km_learn_heavy",
    "km_sample_size",
    "random_rounding",
    "sign_threshold",
    "synthesis",
]
