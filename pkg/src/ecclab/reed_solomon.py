"""Reed-Solomon codes: encoding, Berlekamp-Welch, and Sudan list decoding."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import isqrt
from typing import Sequence

import numpy as np

from .codes import Code, CodeParams, DecodingError, ReceivedWord
from .galois import GF, BivariatePoly, Field, UniPoly, bivariate_y_roots
from .galois.linalg import nullspace
from .galois.poly import p_divmod, p_eval, p_interpolate, trim

BRUTE_FORCE_LIMIT = 10**5


class RSCode(Code):
    """[n, k, n-k+1]_q Reed-Solomon code on distinct evaluation points."""

    def __init__(self, field: Field, points: Sequence[int], k: int):
        points = tuple(field.check(int(x)) for x in points)
        if len(set(points)) != len(points):
            raise ValueError("evaluation points must be distinct")
        n = len(points)
        if not 1 <= k < n:
            raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
        self.field = field
        self.points = points
        self.params = CodeParams(n, k, n - k + 1, field.order)

    @classmethod
    def standard(cls, q: int, n: int, k: int) -> "RSCode":
        """Code over GF(q) on the first n field elements 0, 1, ..., n-1."""
        if n > q:
            raise ValueError("n cannot exceed the field size")
        return cls(GF(q), range(n), k)

    def encode(self, msg: Sequence[int]) -> tuple[int, ...]:
        return rs_encode(self, msg)

    def decode(self, y, e: int | None = None) -> tuple[int, ...]:
        return bw_decode(self, y, e)

    @property
    def max_errors(self) -> int:
        return (self.n - self.k) // 2

    def __repr__(self) -> str:
        return f"RSCode{self.params} over {self.field!r}"


def rs_encode(code: RSCode, msg: Sequence[int]) -> tuple[int, ...]:
    """Evaluate c0 + c1 x + ... + c_{k-1} x^{k-1} at every evaluation point."""
    if len(msg) != code.k:
        raise ValueError(f"message length {len(msg)} != k = {code.k}")
    F = code.field
    coeffs = [F.check(int(c)) for c in msg]
    return tuple(p_eval(F, coeffs, x) for x in code.points)


def bw_decode(code: RSCode, y, e: int | None = None) -> tuple[int, ...]:
    """Berlekamp-Welch unique decoding with error budget ``e``.

    Returns the message whose codeword differs from ``y`` in at most ``e``
    positions, or raises :class:`DecodingError`.
    """
    F, xs, n, k = code.field, code.points, code.n, code.k
    ys = [F.check(int(v)) for v in (y.symbols if isinstance(y, ReceivedWord) else y)]
    if len(ys) != n:
        raise ValueError(f"received word length {len(ys)} != n = {n}")
    if e is None:
        e = code.max_errors
    if e < 0 or 2 * e >= n - k + 1:
        raise ValueError(f"error budget e={e} must satisfy e < (n-k+1)/2")

    # exact fit
    p = p_interpolate(F, xs[:k], ys[:k])
    if all(p_eval(F, p, x) == v for x, v in zip(xs, ys)):
        return _finish(code, p, ys, e)
    if e == 0:
        raise DecodingError("received word is not a codeword and the error budget is 0")

    # unknowns: a_0..a_e (E), b_0..b_{e+k-1} (N); N(x_i) - y_i E(x_i) = 0
    rows = []
    for x, v in zip(xs, ys):
        pw = [1] * (e + k)
        for j in range(1, e + k):
            pw[j] = F.mul(pw[j - 1], x)
        rows.append([F.neg(F.mul(v, pw[i])) for i in range(e + 1)] + pw)
    basis = nullspace(F, rows, 2 * e + k + 1)
    if not basis:
        raise DecodingError("no nonzero (E, N) solution")
    sol = basis[0]
    E, N = trim(sol[: e + 1]), trim(sol[e + 1:])
    if not E:
        raise DecodingError("degenerate solution with E = 0")
    quot, rem = p_divmod(F, N, E)
    if rem:
        raise DecodingError("N is not a multiple of E")
    return _finish(code, quot, ys, e)


def _finish(code: RSCode, p: list[int], ys: list[int], e: int) -> tuple[int, ...]:
    if len(p) > code.k:
        raise DecodingError("decoded polynomial has degree >= k")
    F = code.field
    disagree = sum(1 for x, v in zip(code.points, ys) if p_eval(F, p, x) != v)
    if disagree > e:
        raise DecodingError(f"candidate disagrees in {disagree} > {e} positions")
    return tuple(p) + (0,) * (code.k - len(p))


@dataclass
class ListCandidate:
    poly: UniPoly
    message: tuple[int, ...]
    agreement: int


@dataclass
class ListDecodeResult:
    candidates: list[ListCandidate] = field(default_factory=list)
    k: int = 0
    t: int = 0

    @property
    def messages(self) -> list[tuple[int, ...]]:
        return [c.message for c in self.candidates]

    @property
    def polynomials(self) -> list[UniPoly]:
        return [c.poly for c in self.candidates]

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)


def _prepare_points(points, field: Field | None):
    pts = []
    for x, y in points:
        if field is None:
            field = getattr(x, "field", None) or getattr(y, "field", None)
        pts.append((int(x), int(y)))
    if field is None:
        raise ValueError("field is required for integer points")
    pts = [(field.check(x), field.check(y)) for x, y in pts]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    return pts, field


def rectangular_degrees(n: int, k: int) -> tuple[int, int]:
    """(d_x, d_y): ceil(sqrt(kn)), ceil(sqrt(n/k)), with d_x bumped until d_x*d_y > n."""
    dx = isqrt(k * n)
    if dx * dx < k * n:
        dx += 1
    dy = 1
    while dy * dy * k < n:
        dy += 1
    while dx * dy <= n:
        dx += 1
    return dx, dy


def weighted_support(n: int, k: int, t: int) -> list[tuple[int, int]]:
    """Monomials x^i y^j with i + k j < t and j <= sqrt(2n/k), ordered by j then i."""
    jmax = 0
    while (jmax + 1) ** 2 * k <= 2 * n:
        jmax += 1
    return [(i, j) for j in range(jmax + 1) for i in range(max(0, t - k * j))]


def _interpolate_Q(F: Field, pts, monos) -> list[int]:
    rows = []
    for x, y in pts:
        row = []
        for i, j in monos:
            row.append(F.mul(F.pow(x, i), F.pow(y, j)))
        rows.append(row)
    basis = nullspace(F, rows, len(monos))
    if not basis:  # pragma: no cover - guarded by unknowns > equations
        raise DecodingError("interpolation system has only the zero solution")
    return basis[0]


def _collect(F: Field, pts, Q: BivariatePoly, k: int, t: int, method: str) -> ListDecodeResult:
    res = ListDecodeResult(k=k, t=t)
    for p in bivariate_y_roots(Q, k, method=method):
        agree = sum(1 for x, y in pts if p_eval(F, p.coeffs, x) == y)
        if agree >= t:
            res.candidates.append(ListCandidate(p, p.padded(k), agree))
    return res


def sudan_list_decode(points, k: int, t: int, field: Field | None = None,
                      method: str = "recursive") -> ListDecodeResult:
    """All polynomials of degree <= k-1 through at least t of the points; needs t > 2 sqrt(nk)."""
    pts, F = _prepare_points(points, field)
    n = len(pts)
    if k < 1 or t < 1 or t * t <= 4 * n * k:
        raise ValueError(f"agreement t={t} must exceed 2*sqrt(n*k) = {2 * (n * k) ** 0.5:.4f}")
    dx, dy = rectangular_degrees(n, k)
    monos = [(i, j) for j in range(dy) for i in range(dx)]
    sol = _interpolate_Q(F, pts, monos)
    Q = BivariatePoly(F, dict(zip(monos, sol)), dx=dx, dy=dy)
    return _collect(F, pts, Q, k, t, method)


def sudan_list_decode_weighted(points, k: int, t: int, field: Field | None = None,
                               method: str = "recursive") -> ListDecodeResult:
    """Weighted-degree variant; needs t > sqrt(2nk)."""
    pts, F = _prepare_points(points, field)
    n = len(pts)
    if k < 1 or t < 1 or t * t <= 2 * n * k:
        raise ValueError(f"agreement t={t} must exceed sqrt(2*n*k) = {(2 * n * k) ** 0.5:.4f}")
    monos = weighted_support(n, k, t)
    if len(monos) <= n:
        raise ValueError(f"weighted support has {len(monos)} <= n = {n} monomials for t={t}")
    sol = _interpolate_Q(F, pts, monos)
    Q = BivariatePoly(F, dict(zip(monos, sol)), weight=k, wbound=t)
    return _collect(F, pts, Q, k, t, method)


def brute_force_list_decode(points, k: int, t: int, field: Field | None = None) -> list[tuple[int, ...]]:
    """Every degree <= k-1 polynomial (as coefficient tuple) with agreement >= t, by enumeration."""
    pts, F = _prepare_points(points, field)
    if F.order ** k > BRUTE_FORCE_LIMIT:
        raise ValueError(f"q^k = {F.order ** k} exceeds {BRUTE_FORCE_LIMIT}")
    coeffs = np.array(list(product(range(F.order), repeat=k)), dtype=np.int64).reshape(-1, k)
    agree = np.zeros(len(coeffs), dtype=np.int64)
    for x, y in pts:
        val = np.zeros(len(coeffs), dtype=np.int64)
        for j in range(k - 1, -1, -1):  # Horner
            val = F.add_array(F.mul_array(val, x), coeffs[:, j])
        agree += val == y
    return [tuple(int(c) for c in row) for row in coeffs[agree >= t]]
