import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecclab.bits import bits_to_int, int_to_bits, wht
from ecclab.codes import child_rng
from ecclab.hadamard import (
    BitOracle,
    GLConfig,
    HadamardCode,
    blr_linearity_test,
    blr_local_decode,
    blr_query_pairs,
    blr_rejection_probability,
    count_close_linear,
    full_decode_repetitions,
    gl_list_decode,
    had_encode,
    had_full_decode,
    linear_agreements,
    list_size_bound,
    pairwise_majority_bound_check,
    planted_oracle,
    subset_points,
)


def corrupt(table, delta, rng):
    t = table.copy()
    pos = rng.choice(len(t), size=int(round(delta * len(t))), replace=False)
    t[pos] ^= 1
    return t


def test_encode_examples():
    assert not had_encode((0, 0, 0)).any()
    assert had_encode((1, 0)).tolist() == [0, 0, 1, 1]
    for x in itertools.product(range(2), repeat=5):
        if any(x):
            assert had_encode(x).sum() == 16
    with pytest.raises(ValueError):
        had_encode(0, 25)


def test_encode_linear_exhaustive():
    for k in range(1, 9):
        words = [had_encode(x, k) for x in range(1 << k)]
        rng = np.random.default_rng(k)
        for x, y in rng.integers(0, 1 << k, size=(64, 2)):
            assert np.array_equal(words[x ^ y], words[x] ^ words[y])


def test_bit_helpers():
    assert bits_to_int((1, 0, 1)) == 5
    assert int_to_bits(5, 4) == (0, 1, 0, 1)
    assert np.array_equal(wht(np.array([1, 1, 1, 1])), [4, 0, 0, 0])


def test_oracle_counts_queries():
    y = BitOracle(had_encode(3, 4))
    y(0)
    y.query_many([1, 2, 3])
    assert y.queries == 4
    with pytest.raises(ValueError):
        BitOracle(np.zeros(6))
    f = BitOracle(lambda p: p & 1, 3)
    assert f(5) == 1 and f.queries == 1
    assert f.complement()(5) == 0


def test_local_decode_exact():
    rng = np.random.default_rng(0)
    x = (1, 0, 1, 1, 0, 0, 1, 0)
    y = BitOracle(had_encode(x))
    for i in range(8):
        for _ in range(10):
            assert blr_local_decode(y, i, rng) == x[i]
    assert y.queries == 2 * 80


def test_local_decode_marginals_uniform():
    for k in range(1, 7):
        for i in range(k):
            pairs = blr_query_pairs(k, i)
            for col in range(2):
                assert np.array_equal(np.bincount(pairs[:, col], minlength=1 << k), np.ones(1 << k))


def test_local_decode_noisy_rate():
    k, delta, trials = 10, 0.1, 4000
    rng = np.random.default_rng(11)
    x = int(rng.integers(0, 1 << k))
    y = BitOracle(corrupt(had_encode(x, k), delta, rng))
    bits = int_to_bits(x, k)
    hits = 0
    for _ in range(trials):
        i = int(rng.integers(0, k))
        hits += blr_local_decode(y, i, rng) == bits[i]
    p = 1 - 2 * delta
    assert hits / trials >= p - 3 * math.sqrt(p * (1 - p) / trials)


def test_full_decode():
    assert full_decode_repetitions(0.1, 10) == math.ceil(math.log(40) / 0.08)
    x = (1, 1, 0, 1, 0, 0, 0, 1, 1, 0)
    y = BitOracle(had_encode(x))
    assert had_full_decode(y, 0.1, np.random.default_rng(0)) == x
    assert y.queries == 2 * full_decode_repetitions(0.1, 10) * 10
    wins = 0
    for run in range(200):
        rng = child_rng(5, run)
        xv = int(rng.integers(0, 1024))
        yv = BitOracle(corrupt(had_encode(xv, 10), 0.15, rng))
        wins += had_full_decode(yv, 0.1, rng) == int_to_bits(xv, 10)
    assert wins >= 150


def test_linearity_test_examples():
    rng = np.random.default_rng(2)
    for a in range(16):
        assert blr_linearity_test(BitOracle(had_encode(a, 4)), 50, rng)
        assert blr_rejection_probability(had_encode(a, 4)) == 0.0
    # constant 1: f(a)+f(b) = 0 != 1 = f(a+b) for every pair
    assert blr_rejection_probability(np.ones(8, dtype=np.uint8)) == 1.0
    assert not blr_linearity_test(BitOracle(np.ones(8, dtype=np.uint8)), 1, rng)


def test_linearity_rejection_matches_enumeration():
    rng = np.random.default_rng(3)
    table = np.array([0, 1, 1, 1, 0, 0, 1, 0], dtype=np.uint8)
    bad = sum(
        (table[a] ^ table[b]) != table[a ^ b] for a in range(8) for b in range(8)
    )
    assert blr_rejection_probability(table) == bad / 64
    f = BitOracle(table)
    runs = 20000
    rejects = sum(not blr_linearity_test(f, 1, rng) for _ in range(runs))
    p = bad / 64
    assert abs(rejects / runs - p) < 4 * math.sqrt(p * (1 - p) / runs)
    assert f.queries == 3 * runs


def test_gl_exact_oracle():
    rng = np.random.default_rng(4)
    for a in (0, 1, 77, 255):
        assert a in gl_list_decode(BitOracle(had_encode(a, 8)), 0.2, rng=rng)


def test_gl_planted_recovery_and_list_length():
    hits = 0
    for run in range(40):
        rng = child_rng(17, run)
        a = int(rng.integers(0, 256))
        g = planted_oracle(a, 8, 0.65, rng)
        cfg = GLConfig(0.15)
        out = gl_list_decode(g, 0.15, cfg, rng)
        hits += a in out
        assert len(out) <= 1 << cfg.l
        true = linear_agreements(g.table)
        # nothing far below the filter threshold survives
        assert all(true[c] > 0.5 + 0.15 / 4 for c in out)
    assert hits >= 30


def test_gl_config():
    cfg = GLConfig(0.15)
    assert cfg.l == math.ceil(2 * math.log2(1 / 0.15)) + 2
    assert cfg.t_est == 2**cfg.l - 1
    assert cfg.filter_samples(10) == math.ceil(48 / 0.15**2 * math.log(80))
    for bad in (0.0, 0.5, 0.7):
        with pytest.raises(ValueError):
            GLConfig(bad)


def test_subset_points_pairwise_independent():
    # k=3, l=2: (x_S, x_T) uniform on pairs for every S != T
    k, l = 3, 2
    n = 1 << k
    counts = {}
    for xs in itertools.product(range(n), repeat=l):
        pts = subset_points(xs)
        for s, t in itertools.permutations(range(len(pts)), 2):
            counts.setdefault((s, t), np.zeros((n, n), dtype=int))[pts[s], pts[t]] += 1
    for table in counts.values():
        assert (table == 1).all()


def test_list_size_count_bound_exhaustive_k3():
    for code in range(256):
        table = np.array([(code >> x) & 1 for x in range(8)], dtype=np.uint8)
        bias = np.sort(linear_agreements(table) - 0.5)[::-1]
        for c, eps in enumerate(bias, start=1):
            if eps <= 0:
                break
            assert c <= list_size_bound(eps) + 1e-9


def test_count_close_linear():
    t = had_encode(5, 4)
    assert count_close_linear(t, 0.5) == 1
    assert count_close_linear(t, 0.01) == 1


def test_pairwise_majority_bound():
    assert pairwise_majority_bound_check(4, 0.5) >= 0.75
    assert pairwise_majority_bound_check(10**9, 0.1) > 0.999
    with pytest.raises(ValueError):
        pairwise_majority_bound_check(0, 0.1)
    # pairwise-independent bits: x_S in T for |T| = (1/2 + eps) 2^m
    m, l, eps = 10, 6, 0.1
    good = np.zeros(1 << m, dtype=bool)
    good[: int((0.5 + eps) * (1 << m))] = True
    rng = np.random.default_rng(6)
    t = 2**l - 1
    fails = 0
    runs = 4000
    for _ in range(runs):
        pts = subset_points(rng.integers(0, 1 << m, size=l))
        fails += 2 * good[pts].sum() <= t
    assert fails / runs <= 1 - pairwise_majority_bound_check(t, eps)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.data())
def test_code_params(k, data):
    code = HadamardCode(k)
    assert (code.n, code.k, code.params.d) == (2**k, k, 2 ** (k - 1))
    x = data.draw(st.lists(st.integers(0, 1), min_size=k, max_size=k))
    assert sum(code.encode(x)) == (2 ** (k - 1) if any(x) else 0)
