"""One-round multi-server PIR generated from a perfectly smooth local decoder.

Each server holds the codeword C(x) and answers one position per query.  The
user simulates the decoder, sends query j to server j, and finishes the
decoding on the answers.  When every single query of the decoder is uniform
over the codeword positions, no server learns anything about the index.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .bits import unit
from .galois import Field
from .galois.poly import p_interpolate
from .hadamard import HadamardCode
from .polycode import MultilinearCode, smooth_query_points

TRANSCRIPT_SCHEMA_VERSION = 1
ENUMERATION_LIMIT = 10**6


class SmoothDecoder:
    """Non-adaptive local decoder with an enumerable coin space.

    Coins are integers in ``[0, coin_count)``.  ``query_matrix(i)`` lists the
    queries for every coin (one row per coin), so query distributions can be
    computed exactly.
    """

    name = "decoder"
    perfectly_smooth = False
    answer_bits = 1

    def __init__(self, code):
        self.code = code

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def message_length(self) -> int:
        return self.code.k

    query_count: int
    coin_count: int

    def query_matrix(self, i: int) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def recover_many(self, i: int, answers: np.ndarray) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def queries(self, i: int, coin: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.query_matrix(i)[coin])

    def recover(self, i: int, answers: Sequence[int]) -> int:
        return int(self.recover_many(i, np.asarray([answers], dtype=np.int64))[0])

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.message_length:
            raise IndexError(f"index {i} out of range for {self.message_length} message symbols")


class HadamardSmoothDecoder(SmoothDecoder):
    """Queries a and a xor e_i for uniform a; output is the xor of the answers."""

    name = "hadamard"
    perfectly_smooth = True
    query_count = 2

    def __init__(self, k: int):
        super().__init__(HadamardCode(k))
        self.k = k
        self.coin_count = 1 << k

    def query_matrix(self, i: int) -> np.ndarray:
        self._check_index(i)
        a = np.arange(self.coin_count, dtype=np.int64)
        return np.stack([a, a ^ unit(i, self.k)], axis=1)

    def queries(self, i: int, coin: int) -> tuple[int, ...]:
        self._check_index(i)
        return (coin, coin ^ unit(i, self.k))

    def recover_many(self, i: int, answers: np.ndarray) -> np.ndarray:
        answers = np.asarray(answers, dtype=np.int64)
        return answers[:, 0] ^ answers[:, 1]


class DirectReadDecoder(SmoothDecoder):
    """Deliberately non-smooth Hadamard decoder: reads e_i and 0 directly.

    Correct on clean codewords, but server 0 sees the index in the clear.
    """

    name = "hadamard-direct"
    perfectly_smooth = False
    query_count = 2
    coin_count = 1

    def __init__(self, k: int):
        super().__init__(HadamardCode(k))
        self.k = k

    def query_matrix(self, i: int) -> np.ndarray:
        self._check_index(i)
        return np.array([[unit(i, self.k), 0]], dtype=np.int64)

    def recover_many(self, i: int, answers: np.ndarray) -> np.ndarray:
        answers = np.asarray(answers, dtype=np.int64)
        return answers[:, 0] ^ answers[:, 1]


class MultilinearSmoothDecoder(SmoothDecoder):
    """d+1 queries on the line e_S + z b, z = 1..d+1, for uniform b in F^m."""

    name = "multilinear"
    perfectly_smooth = True

    def __init__(self, F: Field, m: int, d: int):
        code = MultilinearCode(F, m, d)
        super().__init__(code)
        self.field, self.m, self.d = F, m, d
        self.zs = smooth_query_points(code.cfg)
        self.query_count = len(self.zs)
        self.coin_count = F.order ** m
        self.answer_bits = max(1, math.ceil(math.log2(F.order)))
        # q(0) = sum_j w_j q(z_j) for deg q <= d
        self.weights = []
        for j in range(len(self.zs)):
            basis = [1 if jj == j else 0 for jj in range(len(self.zs))]
            coeffs = p_interpolate(F, self.zs, basis)
            self.weights.append(coeffs[0] if coeffs else 0)

    def _directions(self, coins: np.ndarray) -> np.ndarray:
        q, m = self.field.order, self.m
        return np.stack([(coins // q ** (m - 1 - j)) % q for j in range(m)], axis=1)

    def query_matrix(self, i: int, coins: np.ndarray | None = None) -> np.ndarray:
        self._check_index(i)
        F, q = self.field, self.field.order
        if coins is None:
            coins = np.arange(self.coin_count, dtype=np.int64)
        b = self._directions(np.asarray(coins, dtype=np.int64))
        a = np.array(self.code.message_point(i), dtype=np.int64)
        cols = []
        for z in self.zs:
            pts = F.add_array(a[None, :], F.mul_array(z, b))
            idx = np.zeros(len(b), dtype=np.int64)
            for j in range(self.m):
                idx = idx * q + pts[:, j]
            cols.append(idx)
        return np.stack(cols, axis=1)

    def queries(self, i: int, coin: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.query_matrix(i, np.array([coin]))[0])

    def recover_many(self, i: int, answers: np.ndarray) -> np.ndarray:
        F = self.field
        answers = np.asarray(answers, dtype=np.int64)
        acc = np.zeros(answers.shape[0], dtype=np.int64)
        for j, w in enumerate(self.weights):
            acc = F.add_array(acc, F.mul_array(w, answers[:, j]))
        return acc


@dataclass
class ServerRecord:
    server: int
    query: int
    answer: int


@dataclass
class Transcript:
    index: int
    servers: list[ServerRecord]
    output: int
    scheme: str
    schema_version: int = TRANSCRIPT_SCHEMA_VERSION
    expected: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class Server:
    """Deterministic: answers position j of the stored codeword."""

    ident: int
    codeword: tuple[int, ...]

    def answer(self, j: int) -> int:
        return self.codeword[j]


@dataclass
class PIRScheme:
    decoder: SmoothDecoder
    servers_count: int
    answer_bits: int
    query_bits: int
    name: str = ""

    def setup(self, x: Sequence[int]) -> list[Server]:
        word = tuple(int(v) for v in self.decoder.code.encode(tuple(x)))
        return [Server(t, word) for t in range(self.servers_count)]

    def retrieve(self, servers: Sequence[Server], i: int, rng: np.random.Generator) -> Transcript:
        coin = int(rng.integers(0, self.decoder.coin_count))
        return self.retrieve_with_coin(servers, i, coin)

    def retrieve_with_coin(self, servers: Sequence[Server], i: int, coin: int) -> Transcript:
        qs = self.decoder.queries(i, coin)
        records = [ServerRecord(t, j, servers[t].answer(j)) for t, j in enumerate(qs)]
        out = self.decoder.recover(i, [r.answer for r in records])
        return Transcript(i, records, out, self.name)

    @property
    def communication_cost(self) -> int:
        return communication_cost(self)


def pir_from_smooth_decoder(decoder: SmoothDecoder, *, unsafe: bool = False) -> PIRScheme:
    """One server per decoder query.  Refuses decoders not marked perfectly smooth
    unless ``unsafe`` is set (used only to audit broken constructions)."""
    if not decoder.perfectly_smooth and not unsafe:
        raise ValueError(f"decoder {decoder.name!r} is not perfectly smooth")
    query_bits = math.ceil(math.log2(decoder.n))
    return PIRScheme(decoder, decoder.query_count, decoder.answer_bits, query_bits, decoder.name)


@dataclass(frozen=True)
class TrivialScheme:
    """One server sends the whole k-bit database: the baseline."""

    k: int
    servers_count: int = 1
    query_bits: int = 0
    name: str = "trivial"

    @property
    def answer_bits(self) -> int:
        return self.k


def communication_cost(scheme) -> int:
    """servers * (answer bits + query bits)."""
    return scheme.servers_count * (scheme.answer_bits + scheme.query_bits)


@dataclass
class PrivacyResult:
    distance: float
    exact: bool
    samples: int
    ci: tuple[float, float] = field(default=(0.0, 0.0))


def _query_histogram(decoder: SmoothDecoder, i: int, t: int) -> np.ndarray:
    return np.bincount(decoder.query_matrix(i)[:, t], minlength=decoder.n) / decoder.coin_count


def privacy_statistical_distance(scheme: PIRScheme, i: int, j: int, t: int,
                                 limit: int = ENUMERATION_LIMIT, samples: int = 100_000,
                                 rng: np.random.Generator | None = None) -> PrivacyResult:
    """Statistical distance between server t's query distributions for indices i and j.

    Exact by enumerating the coins when there are at most ``limit`` of them;
    otherwise a plug-in Monte Carlo estimate with a conservative interval of
    half-width sqrt(n / samples), flagged as approximate.
    """
    dec = scheme.decoder
    if not 0 <= t < scheme.servers_count:
        raise IndexError(f"server {t} out of range")
    if dec.coin_count <= limit:
        p, q = _query_histogram(dec, i, t), _query_histogram(dec, j, t)
        d = 0.5 * float(np.abs(p - q).sum())
        return PrivacyResult(d, True, dec.coin_count, (d, d))
    if rng is None:
        raise ValueError("sampling needs an explicit generator")
    coins = rng.integers(0, dec.coin_count, size=(2, samples))
    qi = np.array([dec.queries(i, int(c))[t] for c in coins[0]])
    qj = np.array([dec.queries(j, int(c))[t] for c in coins[1]])
    p = np.bincount(qi, minlength=dec.n) / samples
    q = np.bincount(qj, minlength=dec.n) / samples
    d = 0.5 * float(np.abs(p - q).sum())
    w = math.sqrt(dec.n / samples)
    return PrivacyResult(d, False, samples, (max(0.0, d - w), min(1.0, d + w)))


def recovery_rate(scheme: PIRScheme, x: Sequence[int], indices: Sequence[int] | None = None) -> float:
    """Fraction of (index, coin) pairs that return x_i, enumerating every coin."""
    dec = scheme.decoder
    word = np.array(dec.code.encode(tuple(x)), dtype=np.int64)
    indices = range(dec.message_length) if indices is None else indices
    good = total = 0
    for i in indices:
        Qm = dec.query_matrix(i)
        out = dec.recover_many(i, word[Qm])
        good += int(np.sum(out == int(x[i])))
        total += len(out)
    return good / total


__all__ = [
    "DirectReadDecoder",
    "HadamardSmoothDecoder",
    "MultilinearSmoothDecoder",
    "PIRScheme",
    "PrivacyResult",
    "Server",
    "SmoothDecoder",
    "Transcript",
    "TrivialScheme",
    "communication_cost",
    "pir_from_smooth_decoder",
    "privacy_statistical_distance",
    "recovery_rate",
]
