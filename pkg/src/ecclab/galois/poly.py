"""Dense univariate polynomials over a :class:`Field`.

The module-level helpers operate on plain coefficient lists (low to high
degree, raw integers) and are what the decoders use internally.  ``UniPoly``
wraps them in an immutable value type.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .field import Field, FieldElement, FieldMismatchError

MAX_DENSE_DEGREE = 4096


def trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def p_add(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = F.add(out[i], v)
    return trim(out)


def p_sub(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = F.sub(out[i], v)
    return trim(out)


def p_scale(F: Field, a: Sequence[int], s: int) -> list[int]:
    if s == 0:
        return []
    return trim([F.mul(v, s) for v in a])


def p_mul(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    mul, add = F.mul, F.add
    for i, u in enumerate(a):
        if u == 0:
            continue
        for j, v in enumerate(b):
            if v:
                out[i + j] = add(out[i + j], mul(u, v))
    return trim(out)


def p_divmod(F: Field, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = trim(list(a))
    if len(rem) < len(b):
        return [], rem
    lead_inv = F.inv(b[-1])
    quot = [0] * (len(rem) - len(b) + 1)
    db = len(b) - 1
    for shift in range(len(rem) - len(b), -1, -1):
        coef = rem[shift + db]
        if coef == 0:
            continue
        c = F.mul(coef, lead_inv)
        quot[shift] = c
        for i, v in enumerate(b):
            if v:
                rem[shift + i] = F.sub(rem[shift + i], F.mul(c, v))
    return trim(quot), trim(rem[:db])


def p_eval(F: Field, a: Sequence[int], x: int) -> int:
    acc = 0
    mul, add = F.mul, F.add
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


def p_interpolate(F: Field, xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Lagrange interpolation through (xs[i], ys[i]); xs must be distinct."""
    n = len(xs)
    if n == 0:
        raise ValueError("need at least one point")
    if len(set(xs)) != n:
        raise ValueError("duplicate x-coordinate in interpolation points")
    # master = prod (x - x_i)
    master = [1]
    for xi in xs:
        master = p_mul(F, master, [F.neg(xi), 1])
    out = [0] * n
    for xi, yi in zip(xs, ys):
        if yi == 0:
            continue
        basis, _ = p_divmod(F, master, [F.neg(xi), 1])
        w = F.div(yi, p_eval(F, basis, xi))
        for j, v in enumerate(basis):
            if v:
                out[j] = F.add(out[j], F.mul(w, v))
    return trim(out)


class UniPoly:
    """Immutable polynomial ``c0 + c1 x + ... ``; ``coeffs`` holds raw integers."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int | FieldElement] = ()):
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise FieldMismatchError(f"{c.field!r} vs {field!r}")
                c = c.value
            vals.append(field.check(int(c)))
        trim(vals)
        if len(vals) - 1 > MAX_DENSE_DEGREE:
            raise ValueError(f"degree exceeds dense limit {MAX_DENSE_DEGREE}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def _raw(cls, field: Field, coeffs: list[int]) -> "UniPoly":
        p = cls.__new__(cls)
        object.__setattr__(p, "field", field)
        object.__setattr__(p, "coeffs", tuple(trim(list(coeffs))))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(c, self.field) for c in self.coeffs)

    def padded(self, length: int) -> tuple[int, ...]:
        """Coefficient vector padded with zeros to ``length``."""
        if len(self.coeffs) > length:
            raise ValueError(f"degree {self.degree} does not fit in {length} coefficients")
        return self.coeffs + (0,) * (length - len(self.coeffs))

    def _other(self, other) -> tuple[int, ...]:
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.coeffs
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return (other.value,) if other.value else ()
        if isinstance(other, int):
            v = self.field.check(other)
            return (v,) if v else ()
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return UniPoly._raw(self.field, p_add(self.field, self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return UniPoly._raw(self.field, p_sub(self.field, self.coeffs, o))

    def __neg__(self):
        return UniPoly._raw(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return UniPoly._raw(self.field, p_mul(self.field, self.coeffs, o))

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        q, r = p_divmod(self.field, self.coeffs, o)
        return UniPoly._raw(self.field, q), UniPoly._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int | FieldElement) -> FieldElement:
        return poly_eval(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"UniPoly(0 over {self.field!r})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}x^{i}" if i > 1 else f"{c}x")
        return f"UniPoly({' + '.join(terms)} over {self.field!r})"


def poly_eval(p: UniPoly, x: int | FieldElement) -> FieldElement:
    """Horner evaluation of ``p`` at ``x``."""
    if isinstance(x, FieldElement):
        if x.field != p.field:
            raise FieldMismatchError(f"{x.field!r} vs {p.field!r}")
        x = x.value
    else:
        p.field.check(x)
    return FieldElement(p_eval(p.field, p.coeffs, x), p.field)


def poly_interpolate(points: Sequence[tuple[int | FieldElement, int | FieldElement]],
                     field: Field | None = None) -> UniPoly:
    """Unique polynomial of degree < len(points) through ``points``."""
    if not points:
        raise ValueError("need at least one point")
    if field is None:
        field = next((v.field for pt in points for v in pt if isinstance(v, FieldElement)), None)
        if field is None:
            raise ValueError("field is required when points are plain integers")
    xs, ys = [], []
    for x, y in points:
        for v in (x, y):
            if isinstance(v, FieldElement) and v.field != field:
                raise FieldMismatchError(f"{v.field!r} vs {field!r}")
        xs.append(field.check(int(x)))
        ys.append(field.check(int(y)))
    return UniPoly._raw(field, p_interpolate(field, xs, ys))
