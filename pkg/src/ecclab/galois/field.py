"""Finite fields GF(p) and GF(2^m).

Elements are stored as canonical integers in ``[0, q)``.  For GF(2^m) the
integer's bit ``i`` is the coefficient of ``x^i`` in the polynomial
representation modulo the field's irreducible polynomial.  Hot loops work on
these raw integers through the :class:`Field` methods; :class:`FieldElement`
is the operator-overloaded view for interactive use.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

# Irreducible (primitive) moduli for GF(2^m), m = 1..16, bit i = coeff of x^i.
BINARY_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _gf2_polymod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def gf2_is_irreducible(poly: int) -> bool:
    """Exhaustive trial division over GF(2)[x] by every polynomial of degree <= deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _gf2_polymod(poly, cand) == 0:
                return False
    return True


class Field:
    """GF(q) for q prime or q = 2^m with m <= 16.

    Use :func:`GF` to obtain cached instances; two fields compare equal iff
    they have the same order and modulus.
    """

    def __init__(self, order: int, modulus: int | None = None):
        if order >= 2 and is_prime(order) and modulus is None:
            self.kind = "prime"
            self.characteristic = order
            self.degree = 1
            self.modulus = order
        else:
            m = order.bit_length() - 1
            if order < 2 or order != 1 << m:
                raise ValueError(f"unsupported field order {order}: need a prime or 2^m")
            if m > 16:
                raise ValueError("binary extension fields are limited to m <= 16")
            modulus = BINARY_MODULI[m] if modulus is None else modulus
            if modulus.bit_length() - 1 != m or not gf2_is_irreducible(modulus):
                raise ValueError(f"modulus {modulus:#x} is not irreducible of degree {m}")
            self.kind = "binary"
            self.characteristic = 2
            self.degree = m
            self.modulus = modulus
        self.order = order
        self._build_tables()

    def _build_tables(self) -> None:
        q = self.order
        if self.kind == "prime" and q > 1 << 16:
            self._exp = self._log = None
            return
        gen = self._find_generator()
        exp = [0] * (2 * q)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self._exp, self._log = exp, log
        self.generator = gen

    def _slow_mul(self, a: int, b: int) -> int:
        if self.kind == "prime":
            return a * b % self.order
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.degree:
                a ^= self.modulus
        return r

    def _find_generator(self) -> int:
        q = self.order
        if q == 2:
            return 1
        for g in range(2, q):
            x, n = g, 1
            while x != 1:
                x = self._slow_mul(x, g)
                n += 1
            if n == q - 1:
                return g
        raise AssertionError("no generator found")  # pragma: no cover

    # -- raw integer arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.kind == "binary":
            return a ^ b
        s = a + b
        return s - self.order if s >= self.order else s

    def sub(self, a: int, b: int) -> int:
        if self.kind == "binary":
            return a ^ b
        s = a - b
        return s + self.order if s < 0 else s

    def neg(self, a: int) -> int:
        if self.kind == "binary" or a == 0:
            return a
        return self.order - a

    def mul(self, a: int, b: int) -> int:
        if self.kind == "prime" and self._exp is None:
            return a * b % self.order
        if a == 0 or b == 0:
            return 0
        if self.kind == "prime":
            return a * b % self.order
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self._exp is None:
            return pow(a, self.order - 2, self.order)
        return self._exp[self.order - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is None:
            return pow(a, e, self.order)
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def _np_tables(self):
        if self._exp is None:
            raise ValueError("array arithmetic needs log tables (q <= 2^16)")
        tabs = self.__dict__.get("_np")
        if tabs is None:
            tabs = (np.array(self._exp, dtype=np.int64), np.array(self._log, dtype=np.int64))
            self.__dict__["_np"] = tabs
        return tabs

    def add_array(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        return a ^ b if self.kind == "binary" else (a + b) % self.order

    def mul_array(self, a, b) -> np.ndarray:
        """Elementwise product of broadcastable integer arrays."""
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        exp, log = self._np_tables()
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(q) (reduction by the characteristic)."""
        n %= self.characteristic
        return n

    # -- conveniences -----------------------------------------------------------

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def check(self, value: int) -> int:
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not a canonical element of {self!r}")
        return value

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.order, self.modulus) == (other.order, other.modulus)

    def __hash__(self) -> int:
        return hash((self.order, self.modulus))

    def __repr__(self) -> str:
        if self.kind == "prime":
            return f"GF({self.order})"
        return f"GF(2^{self.degree}, modulus={self.modulus:#x})"

    def __reduce__(self):
        return (GF, (self.order,))


@lru_cache(maxsize=None)
def GF(order: int) -> Field:
    """Cached field of the given order with the built-in modulus."""
    return Field(order)


class FieldElement:
    """Immutable element of a :class:`Field` with arithmetic operators.

    Plain ints are coerced into the element's field; mixing two different
    fields raises :class:`FieldMismatchError`.
    """

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: Field):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.check(int(value)))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.check(other)
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value}@{self.field!r}"


_OPS = {"add", "sub", "mul", "div", "inv", "pow"}


def field_arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Dispatch one arithmetic operation by name; ``b`` is the exponent for ``pow``."""
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)
