"""Bivariate polynomials Q(x, y) and extraction of their y-linear factors.

A polynomial is stored by y-degree: ``rows[j]`` is the coefficient list (in
x, low to high) of ``y^j``.  :func:`bivariate_y_roots` finds every ``p`` with
``deg p < k`` and ``Q(x, p(x)) == 0`` using Roth-Ruckenstein style descent:
strip the largest power of x, find the roots gamma of ``Q(0, y)``, recurse on
``Q(x, x*y + gamma)``.  :func:`bivariate_y_roots_exhaustive` tries all q^k
candidates and is the reference oracle for small instances.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping

from .field import Field
from .poly import UniPoly, p_add, p_eval, p_mul, p_scale, trim

EXHAUSTIVE_LIMIT = 10**5


class BivariatePoly:
    """Q(x, y) = sum c_ij x^i y^j with an optional degree constraint.

    ``dx``/``dy`` describe a rectangular bound (i < dx, j < dy); ``weight``
    and ``wbound`` describe a weighted bound (i + weight*j < wbound).
    """

    __slots__ = ("field", "rows", "dx", "dy", "weight", "wbound")

    def __init__(self, field: Field, coeffs: Mapping[tuple[int, int], int],
                 dx: int | None = None, dy: int | None = None,
                 weight: int | None = None, wbound: int | None = None):
        ymax = max((j for (i, j), c in coeffs.items() if c), default=-1)
        rows: list[list[int]] = [[] for _ in range(ymax + 1)]
        for (i, j), c in coeffs.items():
            c = field.check(int(c))
            if not c:
                continue
            if dx is not None and i >= dx or dy is not None and j >= dy:
                raise ValueError(f"monomial x^{i} y^{j} violates rectangular bound ({dx}, {dy})")
            if weight is not None and wbound is not None and i + weight * j >= wbound:
                raise ValueError(f"monomial x^{i} y^{j} violates weighted bound {wbound}")
            row = rows[j]
            if len(row) <= i:
                row.extend([0] * (i + 1 - len(row)))
            row[i] = c
        self.field = field
        self.rows = tuple(tuple(trim(r)) for r in rows)
        self.dx, self.dy, self.weight, self.wbound = dx, dy, weight, wbound

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable[int]]) -> "BivariatePoly":
        coeffs = {(i, j): c for j, r in enumerate(rows) for i, c in enumerate(r) if c}
        return cls(field, coeffs)

    @classmethod
    def from_y_factors(cls, field: Field, polys: Iterable[UniPoly]) -> "BivariatePoly":
        """prod (y - p(x)), expanded."""
        rows: list[list[int]] = [[1]]
        for p in polys:
            neg = p_scale(field, p.coeffs, field.neg(1))
            new: list[list[int]] = [[] for _ in range(len(rows) + 1)]
            for j, r in enumerate(rows):
                new[j + 1] = p_add(field, new[j + 1], r)
                new[j] = p_add(field, new[j], p_mul(field, r, neg))
            rows = new
        return cls.from_rows(field, rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    @property
    def y_degree(self) -> int:
        return len(self.rows) - 1

    def coefficients(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for j, r in enumerate(self.rows) for i, c in enumerate(r) if c}

    def __call__(self, x: int, y: int) -> int:
        F = self.field
        acc = 0
        for r in reversed(self.rows):
            acc = F.add(F.mul(acc, y), p_eval(F, r, x))
        return acc

    def substitute(self, p: UniPoly) -> UniPoly:
        """Q(x, p(x)) as a univariate polynomial."""
        return UniPoly._raw(self.field, _substitute(self.field, self.rows, p.coeffs))

    def __repr__(self) -> str:
        return f"BivariatePoly({self.coefficients()} over {self.field!r})"


def _substitute(F: Field, rows, p) -> list[int]:
    acc: list[int] = []
    for r in reversed(rows):
        acc = p_add(F, p_mul(F, acc, p), r)
    return acc


def _univariate_roots(F: Field, c: list[int]) -> list[int]:
    if not c:
        raise ValueError("zero polynomial has every element as a root")
    if len(c) == 1:
        return []
    return [g for g in range(F.order) if p_eval(F, c, g) == 0]


def _shift(F: Field, rows: list[list[int]], gamma: int) -> list[list[int]]:
    """Q(x, x*y + gamma)."""
    # Taylor shift in y: T(y) = Q(x, y + gamma), by Horner.
    t: list[list[int]] = []
    for r in reversed(rows):
        # t <- t * (y + gamma) + r
        new = [[] for _ in range(len(t) + 1)]
        for j, coef in enumerate(t):
            new[j + 1] = p_add(F, new[j + 1], coef)
            new[j] = p_add(F, new[j], p_scale(F, coef, gamma))
        new[0] = p_add(F, new[0], list(r))
        t = new
    # y^j -> x^j y^j
    return [([0] * j + coef) if coef else [] for j, coef in enumerate(t)]


def _rr(F: Field, rows: list[list[int]], depth: int, k: int, prefix: list[int], out: list[list[int]]):
    v = min(_valuation(r) for r in rows if r)
    if v:
        rows = [r[v:] if r else [] for r in rows]
    rows = [trim(list(r)) for r in rows]
    while rows and not rows[-1]:
        rows.pop()
    const = trim([r[0] if r else 0 for r in rows])
    for gamma in _univariate_roots(F, const):
        path = prefix + [gamma]
        if depth + 1 == k:
            out.append(path)
        else:
            _rr(F, _shift(F, rows, gamma), depth + 1, k, path, out)


def _valuation(r) -> int:
    for i, c in enumerate(r):
        if c:
            return i
    return len(r)


def bivariate_y_roots(Q: BivariatePoly, k: int, method: str = "recursive") -> list[UniPoly]:
    """Every polynomial p of degree <= k-1 with Q(x, p(x)) identically zero.

    ``method`` is ``"recursive"`` (default) or ``"exhaustive"``; the latter is
    only allowed when q^k <= 1e5.  Results are deduplicated and sorted by
    coefficient vector.
    """
    if Q.is_zero():
        raise ValueError("Q must be nonzero")
    if k < 1:
        raise ValueError("k must be positive")
    F = Q.field
    if method == "exhaustive":
        return bivariate_y_roots_exhaustive(Q, k)
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    rows = [list(r) for r in Q.rows]
    paths: list[list[int]] = []
    _rr(F, rows, 0, k, [], paths)
    found = set()
    for path in paths:
        coeffs = tuple(trim(list(path)))
        if coeffs in found:
            continue
        if not _substitute(F, Q.rows, list(coeffs)):
            found.add(coeffs)
    return [UniPoly._raw(F, list(c)) for c in sorted(found, key=lambda c: c + (0,) * (k - len(c)))]


def bivariate_y_roots_exhaustive(Q: BivariatePoly, k: int) -> list[UniPoly]:
    F = Q.field
    if F.order ** k > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search over q^k = {F.order ** k} candidates exceeds {EXHAUSTIVE_LIMIT}")
    out = []
    for coeffs in product(range(F.order), repeat=k):
        if not _substitute(F, Q.rows, trim(list(coeffs))):
            out.append(UniPoly._raw(F, list(coeffs)))
    return out
