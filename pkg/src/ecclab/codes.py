"""Code parameters, Hamming metrics, channels and the classical bounds.

Words are tuples of canonical field integers (bits for binary codes).  All
randomness comes from a caller-owned ``numpy.random.Generator``; use
:func:`child_rng` to derive independent per-trial generators from a master
seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

import numpy as np

MIN_DISTANCE_LINEAR_LIMIT = 10**6
MIN_DISTANCE_NONLINEAR_LIMIT = 10**3


class DecodingError(Exception):
    """A decoder could not produce an answer that satisfies its contract."""


def child_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for trial ``index`` of a run with master ``seed``.

    The split rule is ``SeedSequence([seed, index])``, so trials are
    independent of each other and of execution order.
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


@dataclass(frozen=True)
class CodeParams:
    """[n, k, d]_q.  ``d`` is a lower bound on the minimum distance."""

    n: int
    k: int
    d: int
    q: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if not 1 <= self.d <= self.n:
            raise ValueError(f"need 1 <= d <= n, got d={self.d}, n={self.n}")
        if self.q < 2:
            raise ValueError("alphabet size must be at least 2")

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def relative_distance(self) -> float:
        return self.d / self.n

    def __str__(self) -> str:
        return f"[{self.n}, {self.k}, {self.d}]_{self.q}"


class Code:
    """Base class for a block code over an alphabet of size ``params.q``.

    Subclasses implement :meth:`encode`; ``linear`` tells the distance
    routines they may use the minimum-weight shortcut.
    """

    params: CodeParams
    linear = True

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def q(self) -> int:
        return self.params.q

    def encode(self, msg: Sequence[int]) -> tuple[int, ...]:  # pragma: no cover - abstract
        raise NotImplementedError

    def messages(self) -> Iterable[tuple[int, ...]]:
        return product(range(self.q), repeat=self.k)


@dataclass(frozen=True)
class ReceivedWord:
    """A channel output.  ``error_positions`` is ground truth for tests only."""

    symbols: tuple[int, ...]
    error_positions: frozenset[int] | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]


@dataclass(frozen=True)
class BSC:
    """Each symbol is replaced independently with probability ``eps`` by a uniform other symbol."""

    eps: float

    def __post_init__(self):
        if not 0 <= self.eps < 1:
            raise ValueError("BSC crossover probability must be in [0, 1)")


@dataclass(frozen=True)
class Adversarial:
    """Corrupts exactly ``min(errors, n)`` positions.

    ``positions`` fixes where (the caller's worst case); otherwise positions are
    uniformly random and distinct.  ``values`` optionally fixes the wrong symbols.
    """

    errors: int
    positions: tuple[int, ...] | None = None
    values: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.errors < 0:
            raise ValueError("error budget must be nonnegative")
        if self.positions is not None and len(set(self.positions)) != len(self.positions):
            raise ValueError("adversarial positions must be distinct")


Channel = BSC | Adversarial


def _as_tuple(word) -> tuple[int, ...]:
    if isinstance(word, ReceivedWord):
        return word.symbols
    return tuple(int(v) for v in word)


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    a, b = _as_tuple(a), _as_tuple(b)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(1 for u, v in zip(a, b) if u != v)


def weight(a: Sequence[int]) -> int:
    return sum(1 for v in _as_tuple(a) if v)


def agreement(a: Sequence[int], b: Sequence[int]) -> int:
    return len(_as_tuple(a)) - hamming_distance(a, b)


def min_distance_exhaustive(encode: Callable[[tuple[int, ...]], Sequence[int]], params: CodeParams,
                            linear: bool = True) -> int:
    """Exact minimum distance by enumerating all q^k messages.

    Linear codes use min weight of a nonzero codeword (q^k <= 1e6); otherwise
    all pairs are compared (q^k <= 1e3).
    """
    size = params.q ** params.k
    limit = MIN_DISTANCE_LINEAR_LIMIT if linear else MIN_DISTANCE_NONLINEAR_LIMIT
    if size > limit:
        raise ValueError(f"q^k = {size} exceeds the exhaustive limit {limit}")
    msgs = product(range(params.q), repeat=params.k)
    if linear:
        next(msgs)  # all-zero message
        return min(weight(encode(m)) for m in msgs)
    words = [tuple(encode(m)) for m in msgs]
    return min(hamming_distance(u, v) for u, v in combinations(words, 2))


def check_singleton(params: CodeParams) -> bool:
    return params.k <= params.n - params.d + 1


def check_plotkin(params: CodeParams) -> bool:
    """k <= n - q/(q-1) d + log_q n."""
    q = params.q
    rhs = params.n - q / (q - 1) * params.d + math.log(params.n, q)
    return params.k <= rhs + 1e-9


def transmit(channel: Channel, word: Sequence[int], q: int, rng: np.random.Generator) -> ReceivedWord:
    """Send ``word`` through ``channel``; the result records where errors landed."""
    sym = np.array(_as_tuple(word), dtype=np.int64)
    n = len(sym)
    if q < 2:
        raise ValueError("alphabet size must be at least 2")
    if isinstance(channel, BSC):
        if channel.eps == 0:
            return ReceivedWord(tuple(int(v) for v in sym), frozenset())
        pos = np.flatnonzero(rng.random(n) < channel.eps)
        offsets = rng.integers(1, q, size=len(pos))
    elif isinstance(channel, Adversarial):
        e = min(channel.errors, n)
        if channel.positions is not None:
            pos = np.array(channel.positions[:e], dtype=np.int64)
            if len(pos) < e:
                raise ValueError("fewer positions supplied than the error budget")
        else:
            pos = np.sort(rng.choice(n, size=e, replace=False))
        if channel.values is not None:
            vals = np.array(channel.values[:e], dtype=np.int64)
            if np.any(vals == sym[pos]):
                raise ValueError("adversarial value equals the transmitted symbol")
            offsets = (vals - sym[pos]) % q
        else:
            offsets = rng.integers(1, q, size=e)
    else:
        raise TypeError(f"unknown channel {channel!r}")
    out = sym.copy()
    out[pos] = (sym[pos] + offsets) % q
    return ReceivedWord(tuple(int(v) for v in out), frozenset(int(p) for p in pos))


@dataclass(frozen=True)
class LocalDecoderSpec:
    """(queries, delta, p)-local decodability, optionally with a smoothness bound c."""

    queries: int
    delta: float
    success: float
    smoothness: float | None = None

    def __post_init__(self):
        if self.queries < 1:
            raise ValueError("query complexity must be positive")
        if not 0 < self.delta < 1:
            raise ValueError("delta must be in (0, 1)")
        if not 0 < self.success <= 1:
            raise ValueError("success probability must be in (0, 1]")

    @property
    def meaningful(self) -> bool:
        return self.success > 0.5


@dataclass(frozen=True)
class LTCSpec:
    """(queries, delta, soundness) local testability."""

    queries: int
    delta: float
    soundness: float

    def __post_init__(self):
        if self.queries < 1:
            raise ValueError("query complexity must be positive")
        if not 0 < self.delta < 1:
            raise ValueError("delta must be in (0, 1)")


class RepetitionCode(Code):
    """Each of the k symbols repeated ``reps`` times.  Mostly a test fixture."""

    def __init__(self, q: int, k: int, reps: int):
        self.reps = reps
        self.params = CodeParams(k * reps, k, reps, q)

    def encode(self, msg):
        if len(msg) != self.k:
            raise ValueError("message length mismatch")
        return tuple(int(v) for v in msg for _ in range(self.reps))
