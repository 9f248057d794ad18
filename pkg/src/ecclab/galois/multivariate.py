"""Sparse multivariate polynomials with a total-degree bound."""
from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Iterable, Mapping, Sequence

from .field import Field


def monomials(m: int, t: int) -> list[tuple[int, ...]]:
    """All exponent vectors of length m with total degree <= t, graded then lexicographic.

    There are C(m+t, m) of them.
    """
    out = []
    for deg in range(t + 1):
        block = set()
        for combo in combinations_with_replacement(range(m), deg):
            e = [0] * m
            for v in combo:
                e[v] += 1
            block.add(tuple(e))
        out.extend(sorted(block, reverse=True))
    return out


class MultiPoly:
    __slots__ = ("field", "m", "t", "terms")

    def __init__(self, field: Field, m: int, terms: Mapping[Sequence[int], int], t: int | None = None):
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != m or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for m={m}")
            c = field.check(int(c))
            if c:
                clean[exps] = c
        deg = max((sum(e) for e in clean), default=0)
        if t is None:
            t = deg
        elif deg > t:
            raise ValueError(f"total degree {deg} exceeds bound {t}")
        self.field, self.m, self.t, self.terms = field, m, t, clean

    @classmethod
    def from_coefficients(cls, field: Field, m: int, t: int, coeffs: Sequence[int]) -> "MultiPoly":
        mons = monomials(m, t)
        if len(coeffs) != len(mons):
            raise ValueError(f"expected {len(mons)} coefficients, got {len(coeffs)}")
        return cls(field, m, dict(zip(mons, coeffs)), t)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __call__(self, point: Sequence[int]) -> int:
        F = self.field
        if len(point) != self.m:
            raise ValueError("point dimension mismatch")
        acc = 0
        for exps, c in self.terms.items():
            v = c
            for xi, e in zip(point, exps):
                if e:
                    v = F.mul(v, F.pow(xi, e))
            acc = F.add(acc, v)
        return acc

    def evaluate_grid(self, S: Sequence[int]) -> list[int]:
        """Values on S^m in lexicographic order of the point (first coordinate slowest)."""
        F = self.field
        powers = {s: [F.pow(s, e) for e in range(self.t + 1)] for s in S}
        terms = list(self.terms.items())
        out = []
        for pt in product(S, repeat=self.m):
            acc = 0
            for exps, c in terms:
                v = c
                for xi, e in zip(pt, exps):
                    if e:
                        v = F.mul(v, powers[xi][e])
                acc = F.add(acc, v)
            out.append(acc)
        return out

    def __repr__(self) -> str:
        return f"MultiPoly(m={self.m}, t={self.t}, {len(self.terms)} terms over {self.field!r})"


def grid_points(S: Iterable[int], m: int) -> list[tuple[int, ...]]:
    return list(product(list(S), repeat=m))
