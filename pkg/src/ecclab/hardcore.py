"""Hard-core predicates: GL inversion reduction, one-bit PRG, multiplication codes.

Toy permutations (small RSA and EXP) are exhaustively checkable; the trapdoor
inverse exists for test oracles only, never inside the reduction.  Elements
of Z_N are embedded in ceil(log2 N) bits with the usual integer encoding
(first bit most significant), and inner products are taken over that bit
space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bits import dot, int_to_bits
from .galois import is_prime
from .hadamard import BitOracle, GLConfig, gl_list_decode

BIJECTION_CHECK_LIMIT = 10**6
MULT_CODE_LIMIT = 1 << 16


def _powmod(base, exp, mod: int) -> np.ndarray:
    """Elementwise base^exp mod m for small m (products stay below 2^63)."""
    b = np.asarray(base, dtype=np.int64) % mod
    e = np.asarray(exp, dtype=np.int64)
    b, e = np.broadcast_arrays(b, e)
    shape = b.shape
    b, e = b.ravel().copy(), e.ravel().copy()
    out = np.ones_like(b) % mod
    while np.any(e):
        odd = (e & 1).astype(bool)
        out[odd] = (out[odd] * b[odd]) % mod
        b = (b * b) % mod
        e >>= 1
    return out.reshape(shape)


class ToyPermutation:
    """Injective map on Z_domain with forward evaluation and a trapdoor inverse."""

    name = "toy"
    domain_size: int
    modulus: int

    @property
    def bits(self) -> int:
        return max(1, math.ceil(math.log2(self.domain_size)))

    def forward(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def inverse(self, y):  # pragma: no cover - abstract
        """Trapdoor inverse; for test oracles only."""
        raise NotImplementedError

    def access(self, y, j):  # pragma: no cover - abstract
        """f(x j mod domain) computed from y = f(x) and j alone."""
        raise NotImplementedError

    def codomain_index(self, y):
        """Position of y in the codomain listed in increasing order."""
        return y

    def __call__(self, x):
        out = self.forward(np.asarray(x, dtype=np.int64))
        return int(out) if np.ndim(out) == 0 else out

    def domain(self) -> np.ndarray:
        return np.arange(self.domain_size, dtype=np.int64)

    def is_bijection(self) -> bool:
        """Exhaustive: forward maps the domain one-to-one onto the codomain."""
        if self.domain_size > BIJECTION_CHECK_LIMIT:
            raise ValueError(f"domain size {self.domain_size} exceeds {BIJECTION_CHECK_LIMIT}")
        idx = self.codomain_index(self.forward(self.domain()))
        return bool(np.array_equal(np.sort(idx), self.domain()))


class RSA(ToyPermutation):
    """x -> x^e mod N on Z_N, N = p q with gcd(e, phi(N)) = 1."""

    name = "rsa"

    def __init__(self, p: int, q: int, e: int):
        if not (is_prime(p) and is_prime(q)) or p == q:
            raise ValueError("RSA needs two distinct primes")
        phi = (p - 1) * (q - 1)
        if math.gcd(e, phi) != 1:
            raise ValueError(f"e={e} is not coprime to phi(N)={phi}")
        self.p, self.q, self.e = p, q, e
        self.N = self.modulus = self.domain_size = p * q
        self._d = pow(e, -1, math.lcm(p - 1, q - 1))

    def forward(self, x):
        return _powmod(x, self.e, self.N)

    def inverse(self, y):
        return _powmod(y, self._d, self.N)

    def access(self, y, j):
        return (np.asarray(y, dtype=np.int64) * _powmod(j, self.e, self.N)) % self.N

    def __repr__(self) -> str:
        return f"RSA(N={self.N}, e={self.e})"


class EXP(ToyPermutation):
    """x -> g^x mod p from Z_{p-1} onto Z_p^*, g a generator."""

    name = "exp"

    def __init__(self, p: int, g: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p, self.g = p, g
        self.modulus = p
        self.domain_size = p - 1
        if p - 1 > BIJECTION_CHECK_LIMIT:
            raise ValueError("toy EXP is limited to small primes")
        table = _powmod(g, np.arange(p - 1), p)
        if len(np.unique(table)) != p - 1:
            raise ValueError(f"{g} does not generate Z_{p}^*")
        self._log = np.zeros(p, dtype=np.int64)
        self._log[table] = np.arange(p - 1)

    def forward(self, x):
        return _powmod(self.g, x, self.p)

    def inverse(self, y):
        return self._log[np.asarray(y, dtype=np.int64)]

    def access(self, y, j):
        return _powmod(y, j, self.p)

    def codomain_index(self, y):
        return np.asarray(y) - 1

    def __repr__(self) -> str:
        return f"EXP(p={self.p}, g={self.g})"


class PaddedPermutation(ToyPermutation):
    """A permutation of all k-bit strings: codomain_index(f(x)) on the base
    domain, identity on the remaining strings."""

    def __init__(self, base: ToyPermutation):
        self.base = base
        self.k = base.bits
        self.domain_size = self.modulus = 1 << self.k
        self.name = f"padded-{base.name}"

    def forward(self, x):
        x = np.asarray(x, dtype=np.int64)
        inside = x < self.base.domain_size
        safe = np.where(inside, x, 0)
        return np.where(inside, self.base.codomain_index(self.base.forward(safe)), x)

    def inverse(self, y):
        y = np.asarray(y, dtype=np.int64)
        inside = y < self.base.domain_size
        safe = np.where(inside, y, 0)
        # codomain_index is y or y - 1; undo it before the base trapdoor
        shift = int(self.base.codomain_index(np.int64(1))) - 1
        return np.where(inside, self.base.inverse(safe - shift), y)


def prg_stretch_one(f: ToyPermutation, x: int, r: int) -> tuple[int, ...]:
    """(f(x), r, x.r) as 2k+1 bits; f must permute the k-bit strings."""
    k = f.bits
    if f.domain_size != 1 << k:
        raise ValueError("f must be a permutation of {0,1}^k; wrap it in PaddedPermutation")
    if not (0 <= x < 1 << k and 0 <= r < 1 << k):
        raise ValueError(f"x and r must be {k}-bit values")
    return int_to_bits(int(f(x)), k) + int_to_bits(r, k) + (int(dot(x, r)),)


Predictor = Callable[[np.ndarray, np.ndarray], np.ndarray]


class PlantedPredictor:
    """Guesses x.r from (f(x), r); wrong on exactly floor((1/2 - eps) D 2^k) pairs.

    Built from the trapdoor, so it is a test fixture, not an attack.
    """

    def __init__(self, f: ToyPermutation, eps: float, rng: np.random.Generator):
        if not 0 <= eps <= 0.5:
            raise ValueError("eps must lie in [0, 1/2]")
        D, k = f.domain_size, f.bits
        x = f.domain()
        rows = dot(x[:, None], np.arange(1 << k)[None, :]).astype(np.uint8)
        total = rows.size
        wrong = math.floor((0.5 - eps) * total)
        flat = rows.reshape(-1)
        flat[rng.choice(total, size=wrong, replace=False)] ^= 1
        self.f, self.eps, self.wrong = f, eps, wrong
        self.table = np.zeros((f.modulus, 1 << k), dtype=np.uint8)
        self.table[f.forward(x)] = rows
        self.agreement = 1 - wrong / total

    def __call__(self, y, r):
        return self.table[np.asarray(y, dtype=np.int64), np.asarray(r, dtype=np.int64)]


class CoinFlipPredictor:
    """No advantage: an independent uniform bit for every (y, r)."""

    def __init__(self, f: ToyPermutation, rng: np.random.Generator):
        self.table = rng.integers(0, 2, size=(f.modulus, 1 << f.bits), dtype=np.uint8)

    def __call__(self, y, r):
        return self.table[np.asarray(y, dtype=np.int64), np.asarray(r, dtype=np.int64)]


@dataclass
class Inverter:
    """A'(y): run GL on r -> P(y, r), output a candidate x' with f(x') = y."""

    predictor: Predictor
    f: ToyPermutation
    eps: float
    rng: np.random.Generator
    calls: int = 0
    successes: int = 0
    cfg: GLConfig = field(init=False)

    def __post_init__(self):
        # Good x have advantage >= eps/2, so GL is run at eps/2.  The GL
        # agreement filter stays on: at toy sizes the unfiltered list can cover
        # most of {0,1}^k, and checking f on all of it is brute force.
        self.cfg = GLConfig(self.eps / 2)

    def __call__(self, y: int) -> int | None:
        self.calls += 1
        k = self.f.bits
        oracle = BitOracle(lambda r: self.predictor(np.full(r.shape, y), r), k)
        for cand in gl_list_decode(oracle, self.cfg.eps, self.cfg, self.rng):
            if cand < self.f.domain_size and int(self.f(cand)) == y:
                self.successes += 1
                return cand
        return None


def hardcore_invert(predictor: Predictor, f: ToyPermutation, eps: float,
                    rng: np.random.Generator) -> Inverter:
    if not 0 < eps <= 0.5:
        raise ValueError("eps must lie in (0, 1/2]")
    return Inverter(predictor, f, eps, rng)


@dataclass
class InversionReport:
    attempts: int
    inverted: int
    false_inversions: int

    @property
    def fraction(self) -> float:
        return self.inverted / self.attempts if self.attempts else 0.0


def inversion_trial(inverter: Inverter, xs) -> InversionReport:
    """Invert f(x) for each x; any output x' != x counts as a false inversion."""
    f = inverter.f
    inverted = false = 0
    for x in xs:
        out = inverter(int(f(int(x))))
        if out is None:
            continue
        if out == int(x):
            inverted += 1
        else:
            false += 1
    return InversionReport(len(xs), inverted, false)


@dataclass(frozen=True, eq=False)
class ModPredicate:
    """B: Z_N -> {0,1} as a table."""

    N: int
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.uint8)
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if t.shape != (self.N,) or np.any(t > 1):
            raise ValueError("table must hold N bits")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __call__(self, x):
        out = self.table[np.asarray(x, dtype=np.int64) % self.N]
        return int(out) if np.ndim(out) == 0 else out

    def __eq__(self, other) -> bool:
        return isinstance(other, ModPredicate) and self.N == other.N and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.N, self.table.tobytes()))

    def scaled(self, c: int) -> "ModPredicate":
        """x -> B(c x mod N)."""
        return ModPredicate(self.N, self(np.arange(self.N) * c))

    def imbalance(self) -> int:
        ones = int(self.table.sum())
        return abs((self.N - ones) - ones)

    def is_balanced(self, bound: int = 2) -> bool:
        return self.imbalance() <= bound


def msb(N: int) -> ModPredicate:
    """1 iff x >= ceil(N/2)."""
    return ModPredicate(N, (np.arange(N) >= -(-N // 2)).astype(np.uint8))


def lsb(N: int) -> ModPredicate:
    return ModPredicate(N, (np.arange(N) & 1).astype(np.uint8))


def segment_count(B: ModPredicate) -> int:
    """Value changes in the cyclic sequence B(0), ..., B(N-1), B(0)."""
    return int(np.sum(B.table != np.roll(B.table, -1)))


def mult_code_encode(B: ModPredicate, x: int) -> np.ndarray:
    """Position j holds B(x j mod N)."""
    return B(np.arange(B.N, dtype=np.int64) * int(x))


def mult_code_agreements(g, B: ModPredicate, chunk: int = 1024) -> np.ndarray:
    """Exact agreement count of g with C^B(x) for every x in Z_N."""
    g = np.asarray(g, dtype=np.uint8)
    N = B.N
    j = np.arange(N, dtype=np.int64)
    out = np.empty(N, dtype=np.int64)
    for s in range(0, N, chunk):
        xs = np.arange(s, min(N, s + chunk), dtype=np.int64)
        out[s:s + len(xs)] = (B.table[(xs[:, None] * j[None, :]) % N] == g[None, :]).sum(axis=1)
    return out


def dft_correlations(g, B: ModPredicate, chunk: int = 256) -> np.ndarray:
    """sum_j G(j) B(x j) in the +-1 view for all x, through the DFTs of g and B.

    With hat(h)(b) = sum_y h(y) w^(-b y) this is
    (1/N) sum_a hat(B)(a) hat(G)(-a x mod N).
    """
    N = B.N
    G = np.fft.fft(1.0 - 2.0 * np.asarray(g, dtype=np.float64))
    Bh = np.fft.fft(1.0 - 2.0 * B.table.astype(np.float64))
    a = np.arange(N, dtype=np.int64)
    out = np.empty(N)
    for s in range(0, N, chunk):
        xs = np.arange(s, min(N, s + chunk), dtype=np.int64)
        idx = (-(xs[:, None] * a[None, :])) % N
        out[s:s + len(xs)] = (G[idx] @ Bh).real / N
    return out


def mult_code_list_decode_bf(g, B: ModPredicate, eps: float,
                             balance_bound: int = 2) -> list[int]:
    """Every x whose codeword agrees with g on >= (1/2 + eps) N positions.

    Stands in for the sublinear finder: the exact DFT correlations prune x
    (with a safety margin), and survivors are confirmed by direct counting,
    so the output equals the exhaustive enumeration.
    """
    N = B.N
    if N > MULT_CODE_LIMIT:
        raise ValueError(f"N={N} exceeds {MULT_CODE_LIMIT}")
    if not B.is_balanced(balance_bound):
        raise ValueError(f"predicate imbalance {B.imbalance()} exceeds {balance_bound}")
    g = np.asarray(g, dtype=np.uint8)
    if g.shape != (N,):
        raise ValueError(f"received word must have {N} bits")
    need = (0.5 + eps) * N - 1e-9
    approx = (N + dft_correlations(g, B)) / 2
    survivors = np.flatnonzero(approx >= need - 0.5)
    out = []
    j = np.arange(N, dtype=np.int64)
    for x in survivors:
        if int(np.sum(B.table[(int(x) * j) % N] == g)) >= need:
            out.append(int(x))
    return out


def accessibility_map(f: ToyPermutation, y, j):
    """f(x j mod domain) from y = f(x): y j^e mod N for RSA, y^j mod p for EXP."""
    out = f.access(y, j)
    return int(out) if np.ndim(out) == 0 else out


def accessibility_distance(f: ToyPermutation) -> float:
    """Exact statistical distance from uniform of f(x j) for uniform x, j."""
    D = f.domain_size
    x = f.domain()
    vals = f.codomain_index(f.access(f.forward(x)[:, None], x[None, :])).ravel()
    p = np.bincount(vals, minlength=D) / vals.size
    return 0.5 * float(np.abs(p - 1 / D).sum())


__all__ = [
    "EXP",
    "RSA",
    "CoinFlipPredictor",
    "InversionReport",
    "Inverter",
    "ModPredicate",
    "PaddedPermutation",
    "PlantedPredictor",
    "ToyPermutation",
    "accessibility_distance",
    "accessibility_map",
    "dft_correlations",
    "hardcore_invert",
    "inversion_trial",
    "lsb",
    "msb",
    "mult_code_agreements",
    "mult_code_encode",
    "mult_code_list_decode_bf",
    "prg_stretch_one",
    "segment_count",
]
