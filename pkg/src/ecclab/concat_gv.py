"""Code concatenation and Gilbert-Varshamov random linear codes."""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .codes import Code, CodeParams, DecodingError, ReceivedWord, child_rng, hamming_distance
from .hadamard import linear_agreements
from .bits import int_to_bits
from .reed_solomon import RSCode, brute_force_list_decode

BRUTE_FORCE_LIMIT = 10**6
CROSS_PRODUCT_LIMIT = 10**5

Decoder = Callable[[tuple[int, ...]], tuple[int, ...]]
ListDecoder = Callable[[tuple[int, ...]], list[tuple[int, ...]]]


def _symbols(y) -> tuple[int, ...]:
    return y.symbols if isinstance(y, ReceivedWord) else tuple(int(v) for v in y)


class ConcatCode(Code):
    """Outer [N, K, D]_Q code composed with an inner [n, k, d]_q code, Q = q^k.

    An outer symbol v is identified with its base-q digits, least significant
    first.  For GF(2^k) that is the coefficient vector (c_0, ..., c_{k-1}) of
    the polynomial representation.
    """

    def __init__(self, outer: Code, inner: Code):
        if outer.q != inner.q ** inner.k:
            raise ValueError(f"outer alphabet {outer.q} != inner q^k = {inner.q ** inner.k}")
        self.outer, self.inner = outer, inner
        po, pi = outer.params, inner.params
        self.params = CodeParams(pi.n * po.n, pi.k * po.k, pi.d * po.d, pi.q)

    def to_digits(self, v: int) -> tuple[int, ...]:
        q, k = self.inner.q, self.inner.k
        return tuple((v // q**i) % q for i in range(k))

    def from_digits(self, digits: Sequence[int]) -> int:
        q = self.inner.q
        return sum(int(c) * q**i for i, c in enumerate(digits))

    def split_message(self, msg: Sequence[int]) -> tuple[int, ...]:
        k = self.inner.k
        return tuple(self.from_digits(msg[i * k:(i + 1) * k]) for i in range(self.outer.k))

    def join_message(self, outer_msg: Sequence[int]) -> tuple[int, ...]:
        return tuple(d for v in outer_msg for d in self.to_digits(v))

    def blocks(self, y) -> list[tuple[int, ...]]:
        y, n = _symbols(y), self.inner.n
        if len(y) != self.n:
            raise ValueError(f"word length {len(y)} != {self.n}")
        return [y[i * n:(i + 1) * n] for i in range(self.outer.n)]

    def encode(self, msg: Sequence[int]) -> tuple[int, ...]:
        return concat_encode(self, msg)


def concat_encode(cc: ConcatCode, msg: Sequence[int]) -> tuple[int, ...]:
    """Outer-encode, then inner-encode every outer symbol."""
    if len(msg) != cc.k:
        raise ValueError(f"message length {len(msg)} != kK = {cc.k}")
    outer_word = cc.outer.encode(cc.split_message(msg))
    return tuple(s for v in outer_word for s in cc.inner.encode(cc.to_digits(v)))


def brute_force_decode(code: Code, y) -> tuple[int, ...]:
    """Nearest message by enumeration; ties go to the lexicographically first message."""
    if code.q ** code.k > BRUTE_FORCE_LIMIT:
        raise ValueError(f"q^k = {code.q ** code.k} exceeds {BRUTE_FORCE_LIMIT}")
    y = _symbols(y)
    best, best_d = None, None
    for m in code.messages():
        d = hamming_distance(code.encode(m), y)
        if best_d is None or d < best_d:
            best, best_d = m, d
    return best


def concat_decode_naive(cc: ConcatCode, y, inner_decoder: Decoder | None = None,
                        outer_decoder: Decoder | None = None) -> tuple[int, ...]:
    """Decode each block with the inner decoder, then the outer word.

    A failed inner decode contributes the zero symbol; outer failures propagate.
    """
    inner_decoder = inner_decoder or (lambda b: brute_force_decode(cc.inner, b))
    outer_decoder = outer_decoder or cc.outer.decode
    outer_word = []
    for block in cc.blocks(y):
        try:
            outer_word.append(cc.from_digits(inner_decoder(block)))
        except DecodingError:
            outer_word.append(0)
    return cc.join_message(outer_decoder(tuple(outer_word)))


def hadamard_list_decoder(k: int, eps: float) -> ListDecoder:
    """Every message with agreement >= 1/2 + eps, computed exactly.

    Messages are returned as coefficient digits (c_0 first), matching the
    concatenation embedding.
    """
    def decode(block):
        agree = linear_agreements(np.asarray(block, dtype=np.uint8))
        hits = np.flatnonzero(agree >= 0.5 + eps - 1e-12)
        return [int_to_bits(int(a), k) for a in hits]
    return decode


def rs_list_decoder(code: RSCode, t: int) -> ListDecoder:
    """Every RS message with agreement >= t (brute force, memoised per word)."""
    @lru_cache(maxsize=None)
    def decode(word):
        pts = list(dict.fromkeys(zip(code.points, word)))
        return brute_force_list_decode(pts, code.k, t, code.field)
    return lambda word: decode(tuple(int(v) for v in word))


def concat_list_decode(cc: ConcatCode, y, inner_list_decoder: ListDecoder,
                       outer_list_decoder: ListDecoder, repetitions: int = 1,
                       rng: np.random.Generator | None = None,
                       exhaustive: bool = False) -> list[tuple[int, ...]]:
    """Combine inner lists into outer words and list-decode each.

    The randomized variant picks one element per inner list, ``repetitions``
    times.  The exhaustive variant tries every combination (guarded at 1e5) and
    serves as the oracle.  Empty inner lists contribute the zero symbol.
    """
    lists = []
    for block in cc.blocks(y):
        cands = [cc.from_digits(m) for m in inner_list_decoder(block)]
        lists.append(sorted(set(cands)) or [0])
    if exhaustive:
        size = math.prod(len(c) for c in lists)
        if size > CROSS_PRODUCT_LIMIT:
            raise ValueError(f"cross product of inner lists has {size} > {CROSS_PRODUCT_LIMIT} words")
        words = product(*lists)
    else:
        if rng is None:
            raise ValueError("randomized list decoding needs an explicit generator")
        words = (tuple(c[int(rng.integers(0, len(c)))] for c in lists) for _ in range(repetitions))
    found = set()
    for w in words:
        for m in outer_list_decoder(tuple(w)):
            found.add(cc.join_message(m))
    return sorted(found)


def binary_entropy(x: float) -> float:
    """H2(x) = x log2(1/x) + (1-x) log2(1/(1-x)), with H2(0) = H2(1) = 0."""
    if not 0 <= x <= 1:
        raise ValueError("binary entropy is defined on [0, 1]")
    if x in (0, 1):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


class RandomLinearCode(Code):
    """Binary code C(x) = x G for a k x n generator matrix G."""

    def __init__(self, generator, d: int = 1, seed: int | None = None):
        G = np.asarray(generator, dtype=np.uint8) & 1
        k, n = G.shape
        self.generator, self.seed = G, seed
        self.params = CodeParams(n, k, d, 2)

    def encode(self, msg: Sequence[int]) -> tuple[int, ...]:
        if len(msg) != self.k:
            raise ValueError(f"message length {len(msg)} != k = {self.k}")
        return tuple(int(v) for v in (np.asarray(msg, dtype=np.int64) @ self.generator) % 2)

    def all_codewords(self) -> np.ndarray:
        if 2**self.k > BRUTE_FORCE_LIMIT:
            raise ValueError(f"2^k exceeds {BRUTE_FORCE_LIMIT}")
        msgs = (np.arange(2**self.k)[:, None] >> np.arange(self.k - 1, -1, -1)) & 1
        return (msgs @ self.generator.astype(np.int64)) % 2

    def min_weight(self) -> int:
        """Minimum weight of a nonzero codeword (= minimum distance)."""
        return int(self.all_codewords()[1:].sum(axis=1).min())


class GVSearchError(RuntimeError):
    def __init__(self, attempts: int):
        super().__init__(f"no code with the target distance in {attempts} attempts")
        self.attempts = attempts


def gv_feasible(n: int, k: int, d: int, slack: float = 0.0) -> bool:
    return k / n <= 1 - binary_entropy(d / n) - slack


def gv_union_bound(n: int, k: int, d: int) -> float:
    """Success-probability lower bound 1 - 2^k 2^-n 2^(n H2(d/n)) (entropy form)."""
    return 1 - 2.0 ** (k - n + n * binary_entropy(d / n))


def gv_union_bound_exact(n: int, k: int, d: int) -> float:
    """1 - (2^k - 1) Pr[Bin(n, 1/2) < d]; each nonzero codeword is uniform."""
    tail = sum(math.comb(n, w) for w in range(d)) / 2**n
    return 1 - (2**k - 1) * tail


def gv_attempt(n: int, k: int, d: int, rng: np.random.Generator) -> tuple[RandomLinearCode, bool]:
    code = RandomLinearCode(rng.integers(0, 2, size=(k, n)), d)
    return code, code.min_weight() >= d


def gv_sample(n: int, k: int, d: int, max_attempts: int = 100, seed: int = 0,
              slack: float = 0.0) -> RandomLinearCode:
    """Sample generator matrices until one has minimum distance >= d.

    Attempt i uses ``child_rng(seed, i)``.  Raises :class:`GVSearchError` after
    ``max_attempts`` failures.
    """
    if not 1 <= k <= n or not 1 <= d <= n:
        raise ValueError("need 1 <= k <= n and 1 <= d <= n")
    if not gv_feasible(n, k, d, slack):
        raise ValueError(f"rate {k}/{n} exceeds 1 - H2({d}/{n}) - {slack}")
    if 2**k > BRUTE_FORCE_LIMIT:
        raise ValueError(f"2^k exceeds the verification limit {BRUTE_FORCE_LIMIT}")
    for i in range(max_attempts):
        code, ok = gv_attempt(n, k, d, child_rng(seed, i))
        if ok:
            code.seed = seed
            code.attempts = i + 1
            return code
    raise GVSearchError(max_attempts)


__all__ = [
    "ConcatCode",
    "GVSearchError",
    "RandomLinearCode",
    "binary_entropy",
    "brute_force_decode",
    "concat_decode_naive",
    "concat_encode",
    "concat_list_decode",
    "gv_attempt",
    "gv_feasible",
    "gv_sample",
    "gv_union_bound",
    "gv_union_bound_exact",
    "hadamard_list_decoder",
    "rs_list_decoder",
]
