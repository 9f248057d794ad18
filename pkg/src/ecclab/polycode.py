"""Reed-Muller and systematic multivariate polynomial codes with line-based
local decoders, plus the multilinear constant-query code.

Codewords list the values on S^m in product order, first coordinate slowest.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Callable, Mapping, Sequence

import numpy as np

from .codes import Code, CodeParams, DecodingError
from .galois import Field, MultiPoly, monomials
from .galois.poly import p_eval, p_interpolate
from .reed_solomon import RSCode, bw_decode


@dataclass(frozen=True)
class PolyCodeConfig:
    """Field, evaluation grid S, interpolation grid A, m variables, degree t.

    ``S`` defaults to the whole field in canonical order.
    """

    field: Field
    m: int
    t: int
    S: tuple[int, ...] | None = None
    A: tuple[int, ...] | None = None
    _pos: dict = dc_field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        F = self.field
        S = tuple(range(F.order)) if self.S is None else tuple(F.check(int(s)) for s in self.S)
        if len(set(S)) != len(S):
            raise ValueError("S has repeated elements")
        if self.m < 1 or self.t < 0:
            raise ValueError("need m >= 1 and t >= 0")
        if self.t >= len(S):
            raise ValueError(f"degree t={self.t} must be < |S|={len(S)}")
        object.__setattr__(self, "S", S)
        if self.A is not None:
            A = tuple(F.check(int(a)) for a in self.A)
            if len(set(A)) != len(A) or not set(A) <= set(S):
                raise ValueError("A must be a subset of S without repeats")
            if self.m * (len(A) - 1) > self.t:
                raise ValueError(f"m(|A|-1) = {self.m * (len(A) - 1)} exceeds t = {self.t}")
            object.__setattr__(self, "A", A)
        object.__setattr__(self, "_pos", {s: i for i, s in enumerate(S)})

    @property
    def n(self) -> int:
        return len(self.S) ** self.m

    @property
    def k_rm(self) -> int:
        return math.comb(self.m + self.t, self.m)

    @property
    def k_sys(self) -> int:
        if self.A is None:
            raise ValueError("no interpolation grid A configured")
        return len(self.A) ** self.m

    def index(self, point: Sequence[int]) -> int:
        """Position of ``point`` in the codeword."""
        idx = 0
        for s in point:
            idx = idx * len(self.S) + self._pos[int(s)]
        return idx

    def points(self) -> list[tuple[int, ...]]:
        return list(product(self.S, repeat=self.m))

    def coordinates(self) -> list[np.ndarray]:
        """Per-variable coordinate arrays over the grid, in codeword order."""
        S = np.array(self.S, dtype=np.int64)
        idx = np.indices((len(S),) * self.m).reshape(self.m, -1)
        return [S[row] for row in idx]


@dataclass(frozen=True)
class Line:
    """l(z) = a + z b."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def point(self, F: Field, z: int) -> tuple[int, ...]:
        return tuple(F.add(ai, F.mul(z, bi)) for ai, bi in zip(self.a, self.b))


class PointOracle:
    """Query access to a function on F^m with a query counter.

    ``source`` is a codeword table (indexed through ``cfg``) or a callable.
    """

    def __init__(self, source, cfg: PolyCodeConfig):
        self.cfg = cfg
        if callable(source):
            self._fn: Callable[[tuple[int, ...]], int] = source
        else:
            table = tuple(int(v) for v in source)
            if len(table) != cfg.n:
                raise ValueError(f"table length {len(table)} != n = {cfg.n}")
            self._fn = lambda p: table[cfg.index(p)]
        self.queries = 0
        self.log: list[tuple[int, ...]] | None = None

    def __call__(self, point: Sequence[int]) -> int:
        self.queries += 1
        point = tuple(int(v) for v in point)
        if self.log is not None:
            self.log.append(point)
        return self._fn(point)


def _power_table(F: Field, coords: np.ndarray, t: int) -> list[np.ndarray]:
    pw = [np.ones_like(coords)]
    for _ in range(t):
        pw.append(F.mul_array(pw[-1], coords))
    return pw


def evaluate_on_grid(cfg: PolyCodeConfig, poly: MultiPoly) -> tuple[int, ...]:
    F = cfg.field
    if poly.m != cfg.m:
        raise ValueError("variable count mismatch")
    deg = max(poly.total_degree, 0)
    powers = [_power_table(F, c, deg) for c in cfg.coordinates()]
    acc = np.zeros(cfg.n, dtype=np.int64)
    for exps, c in poly.terms.items():
        term = np.full(cfg.n, c, dtype=np.int64)
        for j, e in enumerate(exps):
            if e:
                term = F.mul_array(term, powers[j][e])
        acc = F.add_array(acc, term)
    return tuple(int(v) for v in acc)


def rm_poly(cfg: PolyCodeConfig, coefficients: Sequence[int]) -> MultiPoly:
    return MultiPoly.from_coefficients(cfg.field, cfg.m, cfg.t, coefficients)


def rm_encode(cfg: PolyCodeConfig, coefficients: Sequence[int]) -> tuple[int, ...]:
    """Evaluate the polynomial with the given monomial coefficients on S^m.

    Coefficients follow :func:`ecclab.galois.monomials` order.
    """
    if len(coefficients) != cfg.k_rm:
        raise ValueError(f"expected {cfg.k_rm} coefficients, got {len(coefficients)}")
    return evaluate_on_grid(cfg, rm_poly(cfg, coefficients))


def _lagrange_matrix(F: Field, A: Sequence[int], S: Sequence[int]) -> list[list[int]]:
    """L[s][a] = ell_a(s), the Lagrange basis on A evaluated on S."""
    rows = []
    for s in S:
        row = []
        for a in A:
            num, den = 1, 1
            for b in A:
                if b != a:
                    num = F.mul(num, F.sub(s, b))
                    den = F.mul(den, F.sub(a, b))
            row.append(F.div(num, den))
        rows.append(row)
    return rows


def systematic_encode(cfg: PolyCodeConfig, f: Sequence[int]) -> tuple[int, ...]:
    """Tensor-Lagrange extension of ``f`` (values on A^m, product order) to S^m."""
    if cfg.A is None:
        raise ValueError("systematic encoding needs an interpolation grid A")
    F, A, m = cfg.field, cfg.A, cfg.m
    if len(f) != cfg.k_sys:
        raise ValueError(f"expected {cfg.k_sys} values on A^m, got {len(f)}")
    L = np.array(_lagrange_matrix(F, A, cfg.S), dtype=np.int64)
    T = np.array([F.check(int(v)) for v in f], dtype=np.int64).reshape((len(A),) * m)
    for axis in range(m):
        T = np.moveaxis(T, axis, 0)
        out = np.zeros((len(cfg.S),) + T.shape[1:], dtype=np.int64)
        for si in range(len(cfg.S)):
            acc = np.zeros(T.shape[1:], dtype=np.int64)
            for ai in range(len(A)):
                acc = F.add_array(acc, F.mul_array(L[si, ai], T[ai]))
            out[si] = acc
        T = np.moveaxis(out, 0, axis)
    return tuple(int(v) for v in T.ravel())


def systematic_positions(cfg: PolyCodeConfig) -> list[int]:
    """Codeword positions holding the message (the points of A^m)."""
    return [cfg.index(p) for p in product(cfg.A, repeat=cfg.m)]


def _require_full_grid(cfg: PolyCodeConfig) -> None:
    if len(cfg.S) != cfg.field.order:
        raise ValueError("line decoding assumes S = F")


def smooth_query_points(cfg: PolyCodeConfig) -> list[int]:
    """The fixed z values 1, 2, ..., t+1 (canonical nonzero elements)."""
    if cfg.field.order < cfg.t + 2:
        raise ValueError("field too small for t+1 nonzero line points")
    return list(range(1, cfg.t + 2))


def smooth_line_queries(cfg: PolyCodeConfig, a: Sequence[int], b: Sequence[int]) -> list[tuple[int, ...]]:
    line = Line(tuple(a), tuple(b))
    return [line.point(cfg.field, z) for z in smooth_query_points(cfg)]


def smooth_line_recover(cfg: PolyCodeConfig, answers: Sequence[int]) -> int:
    """q(0) for the degree-t q with q(z_j) = answers[j]."""
    F = cfg.field
    zs = smooth_query_points(cfg)
    return p_eval(F, p_interpolate(F, zs, [int(v) for v in answers]), 0)


def smooth_line_decode(p: PointOracle, a: Sequence[int], cfg: PolyCodeConfig,
                       rng: np.random.Generator) -> int:
    """p(a) from t+1 queries along a uniformly random line through a."""
    _require_full_grid(cfg)
    F = cfg.field
    b = tuple(int(v) for v in rng.integers(0, F.order, size=cfg.m))
    return smooth_line_recover(cfg, [p(pt) for pt in smooth_line_queries(cfg, a, b)])


def noisy_line_decode(g: PointOracle, a: Sequence[int], cfg: PolyCodeConfig,
                      rng: np.random.Generator) -> int:
    """p(a) from 3t queries at distinct random nonzero z, corrected by Berlekamp-Welch.

    Raises :class:`DecodingError` when the line has too many errors to decode.
    """
    _require_full_grid(cfg)
    F, t = cfg.field, cfg.t
    if t < 1:
        raise ValueError("noisy decoding needs t >= 1")
    if F.order - 1 < 3 * t:
        raise ValueError(f"field has fewer than 3t = {3 * t} nonzero elements")
    zs = [int(z) for z in rng.choice(np.arange(1, F.order), size=3 * t, replace=False)]
    b = tuple(int(v) for v in rng.integers(0, F.order, size=cfg.m))
    line = Line(tuple(int(v) for v in a), b)
    answers = [g(line.point(F, z)) for z in zs]
    coeffs = bw_decode(RSCode(F, zs, t + 1), answers, e=t - 1)
    return coeffs[0]


def subset_index(m: int, d: int) -> list[tuple[int, ...]]:
    """d-subsets of {0..m-1} in lexicographic order; message entry i belongs to subset i."""
    return list(combinations(range(m), d))


def indicator_point(subset: Sequence[int], m: int) -> tuple[int, ...]:
    """e_S: 1 on the coordinates in S, 0 elsewhere."""
    s = set(subset)
    return tuple(1 if j in s else 0 for j in range(m))


def _check_multilinear_field(F: Field, d: int) -> None:
    if not d < F.order <= 2 * d:
        raise ValueError(f"need d < |F| <= 2d, got |F|={F.order}, d={d}")


def multilinear_poly(F: Field, m: int, d: int, x) -> MultiPoly:
    subsets = subset_index(m, d)
    if isinstance(x, Mapping):
        vals = [x.get(S, 0) for S in subsets]
        if set(x) - set(subsets):
            raise ValueError("message indexed by something other than d-subsets")
    else:
        vals = list(x)
        if len(vals) > len(subsets):
            raise ValueError(f"message length {len(vals)} exceeds C(m, d) = {len(subsets)}")
        vals += [0] * (len(subsets) - len(vals))
    terms = {indicator_point(S, m): F.check(int(v)) for S, v in zip(subsets, vals)}
    return MultiPoly(F, m, terms, t=d)


def multilinear_config(F: Field, m: int, d: int) -> PolyCodeConfig:
    _check_multilinear_field(F, d)
    return PolyCodeConfig(F, m, d)


def multilinear_encode(m: int, d: int, x, F: Field) -> tuple[int, ...]:
    """Evaluate p_x(z) = sum_S x_S prod_{j in S} z_j on all of F^m."""
    cfg = multilinear_config(F, m, d)
    return evaluate_on_grid(cfg, multilinear_poly(F, m, d, x))


@dataclass(frozen=True)
class ZeroFraction:
    fraction: float
    samples: int
    exact: bool


def schwartz_zippel_check(p: MultiPoly, S: Sequence[int], trials: int | None = None,
                          rng: np.random.Generator | None = None) -> ZeroFraction:
    """Fraction of S^m where p vanishes: exact when ``trials`` is None, else sampled."""
    if p.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    S = list(S)
    if trials is None:
        cfg = PolyCodeConfig(p.field, p.m, min(p.t, len(S) - 1), tuple(S))
        vals = evaluate_on_grid(cfg, p)
        zeros = sum(1 for v in vals if v == 0)
        return ZeroFraction(zeros / len(vals), len(vals), True)
    if rng is None:
        raise ValueError("sampling needs an explicit generator")
    pts = rng.choice(np.array(S, dtype=np.int64), size=(trials, p.m))
    zeros = sum(1 for pt in pts if p(tuple(int(v) for v in pt)) == 0)
    return ZeroFraction(zeros / trials, trials, False)


__all__ = [
    "Line",
    "MultilinearCode",
    "PointOracle",
    "PolyCodeConfig",
    "ZeroFraction",
    "evaluate_on_grid",
    "indicator_point",
    "monomials",
    "multilinear_config",
    "multilinear_encode",
    "multilinear_poly",
    "noisy_line_decode",
    "rm_encode",
    "rm_poly",
    "schwartz_zippel_check",
    "smooth_line_decode",
    "smooth_line_queries",
    "smooth_line_recover",
    "subset_index",
    "systematic_encode",
    "systematic_positions",
]


class MultilinearCode(Code):
    """Message x indexed by d-subsets of [m], encoded as p_x on all of F^m."""

    linear = True

    def __init__(self, F: Field, m: int, d: int):
        self.cfg = multilinear_config(F, m, d)
        self.field, self.m, self.d = F, m, d
        n = F.order ** m
        # Schwartz-Zippel: a nonzero total-degree-d polynomial vanishes on <= d/|F| of F^m
        dist = max(1, math.ceil((1 - d / F.order) * n))
        self.params = CodeParams(n, math.comb(m, d), dist, F.order)

    def encode(self, msg) -> tuple[int, ...]:
        if len(msg) != self.k:
            raise ValueError(f"message length {len(msg)} != C(m, d) = {self.k}")
        return multilinear_encode(self.m, self.d, msg, self.field)

    def message_point(self, i: int) -> tuple[int, ...]:
        """e_S for the i-th d-subset."""
        return indicator_point(subset_index(self.m, self.d)[i], self.m)
