import itertools
import math

import numpy as np
import pytest

from ecclab.codes import DecodingError, RepetitionCode, child_rng, hamming_distance, min_distance_exhaustive
from ecclab.concat_gv import (
    ConcatCode,
    GVSearchError,
    RandomLinearCode,
    binary_entropy,
    brute_force_decode,
    concat_decode_naive,
    concat_encode,
    concat_list_decode,
    gv_attempt,
    gv_feasible,
    gv_sample,
    gv_union_bound,
    gv_union_bound_exact,
    hadamard_list_decoder,
    rs_list_decoder,
)
from ecclab.galois import GF
from ecclab.hadamard import HadamardCode
from ecclab.reed_solomon import RSCode


def tiny():
    return ConcatCode(RSCode(GF(4), range(4), 2), HadamardCode(2))


def test_params_and_validation():
    cc = tiny()
    assert (cc.n, cc.k, cc.params.d, cc.q) == (16, 4, 6, 2)
    with pytest.raises(ValueError):
        ConcatCode(RSCode(GF(8), range(4), 2), HadamardCode(2))


def test_encode_by_hand():
    cc = tiny()
    # outer message 1 + x X over GF(4) evaluates to (1, 3, 2, 0) on 0, 1, x, x+1
    assert cc.outer.encode((1, 2)) == (1, 3, 2, 0)
    word = concat_encode(cc, (1, 0, 0, 1))
    assert word == (0, 0, 1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0)
    assert concat_encode(cc, (0, 0, 0, 0)) == (0,) * 16
    with pytest.raises(ValueError):
        concat_encode(cc, (1, 0))


def test_min_distance_at_least_dD():
    cc = tiny()
    assert min_distance_exhaustive(cc.encode, cc.params) >= 6
    cc2 = ConcatCode(RSCode(GF(8), range(5), 2), HadamardCode(3))
    assert min_distance_exhaustive(cc2.encode, cc2.params) >= cc2.params.d


def test_naive_decode_planted():
    cc = ConcatCode(RSCode(GF(8), range(7), 3), HadamardCode(3))
    # inner [8,3,4] corrects e=1; outer [7,3,5] corrects E=2
    for trial in range(40):
        rng = child_rng(1, trial)
        msg = tuple(int(v) for v in rng.integers(0, 2, cc.k))
        y = list(concat_encode(cc, msg))
        bad = rng.choice(7, size=2, replace=False)
        for b in range(7):
            hits = rng.choice(8, size=3 if b in bad else 1, replace=False)
            for h in hits:
                y[b * 8 + h] ^= 1
        assert concat_decode_naive(cc, y) == msg
    msg = (1,) * cc.k
    assert concat_decode_naive(cc, concat_encode(cc, msg)) == msg


def test_naive_decode_no_silent_errors():
    cc = ConcatCode(RSCode(GF(8), range(7), 3), HadamardCode(3))
    rng = np.random.default_rng(3)
    for _ in range(40):
        msg = tuple(int(v) for v in rng.integers(0, 2, cc.k))
        c = concat_encode(cc, msg)
        y = list(c)
        for h in range(10):  # dD/2 = 10 errors packed into the first blocks
            y[h] ^= 1
        try:
            out = concat_decode_naive(cc, y)
        except DecodingError:
            continue
        # any answer must be a message whose outer word is within E of the inner decodes
        if out != msg:
            assert hamming_distance(concat_encode(cc, out), y) >= hamming_distance(c, y) - 10


def test_inner_failure_becomes_zero_symbol():
    cc = tiny()

    def failing(_):
        raise DecodingError("inner")

    seen = []

    def outer(word):
        seen.append(word)
        return (0, 0)

    concat_decode_naive(cc, [0] * 16, failing, outer)
    assert seen == [(0, 0, 0, 0)]


def test_brute_force_decode():
    code = RepetitionCode(2, 2, 3)
    assert brute_force_decode(code, code.encode((1, 0))) == (1, 0)
    assert brute_force_decode(code, (1, 1, 0, 0, 0, 0)) == (1, 0)
    had = HadamardCode(3)
    # y at distance 2 from both H(000) and H(100): lexicographic winner is 000
    y = (0, 0, 0, 0, 1, 1, 0, 0)
    assert hamming_distance(y, had.encode((0, 0, 0))) == hamming_distance(y, had.encode((1, 0, 0))) == 2
    assert brute_force_decode(had, y) == (0, 0, 0)
    with pytest.raises(ValueError):
        brute_force_decode(RSCode.standard(64, 10, 4), (0,) * 10)


def list_instance():
    return ConcatCode(RSCode(GF(16), range(16), 2), HadamardCode(4))


def test_list_decode_noiseless_and_subset():
    cc = list_instance()
    eps = 0.15
    inner = hadamard_list_decoder(4, eps)
    rng = np.random.default_rng(4)
    msg = tuple(int(v) for v in rng.integers(0, 2, cc.k))
    c = concat_encode(cc, msg)
    outer_t = 6
    outer = rs_list_decoder(cc.outer, outer_t)
    assert msg in concat_list_decode(cc, c, inner, outer, 1, rng)
    # corrupt 10 of 16 blocks with random bits
    y = list(c)
    for b in rng.choice(16, size=10, replace=False):
        y[b * 16:(b + 1) * 16] = rng.integers(0, 2, 16).tolist()
    exhaustive = concat_list_decode(cc, y, inner, outer, exhaustive=True)
    rand = concat_list_decode(cc, y, inner, outer, 30, rng)
    assert set(rand) <= set(exhaustive)
    assert msg in exhaustive and msg in rand


def test_list_decode_binary_variant_planted():
    # inner lists hold every symbol whose block agrees on >= 1/2 + eps; a message
    # at overall agreement >= 1/2 + 2 eps then has >= eps/(1/2 - eps) good blocks
    cc = list_instance()
    eps = 0.15
    inner = hadamard_list_decoder(4, eps)
    N = cc.outer.n
    outer = rs_list_decoder(cc.outer, math.ceil(eps / (0.5 - eps) * N))
    found = 0
    for trial in range(20):
        rng = child_rng(8, trial)
        msg = tuple(int(v) for v in rng.integers(0, 2, cc.k))
        y = list(concat_encode(cc, msg))
        for b in rng.choice(N, size=6, replace=False):
            other = tuple(int(v) for v in rng.integers(0, 2, 4))
            y[b * 16:(b + 1) * 16] = HadamardCode(4).encode(other)
        exhaustive = concat_list_decode(cc, y, inner, outer, exhaustive=True)
        for m in itertools.product(range(2), repeat=cc.k):
            if cc.n - hamming_distance(concat_encode(cc, m), y) >= (0.5 + 2 * eps) * cc.n:
                assert m in exhaustive
        out = concat_list_decode(cc, y, inner, outer, 8, rng)
        assert set(out) <= set(exhaustive)
        found += msg in out
    assert found >= 15


def test_list_decode_qary_contract():
    # outer RS[5,2] over GF(16), inner RS[4,2] over GF(4): inner lists at agreement
    # >= eps n (size <= l = 6), outer at >= (eps/l) N; every message at agreement
    # >= 2 eps nN must appear
    F4 = GF(4)
    cc = ConcatCode(RSCode(GF(16), range(5), 2), RSCode(F4, range(4), 2))
    eps, l = 0.375, 6
    inner = rs_list_decoder(cc.inner, math.ceil(eps * 4))
    outer = rs_list_decoder(cc.outer, math.ceil(eps / l * 5))
    rng = np.random.default_rng(12)
    hits = 0
    for trial in range(10):
        msg = tuple(int(v) for v in rng.integers(0, 4, cc.k))
        y = list(concat_encode(cc, msg))
        for p in rng.choice(cc.n, size=5, replace=False):
            y[p] = (y[p] + int(rng.integers(1, 4))) % 4
        exhaustive = concat_list_decode(cc, y, inner, outer, exhaustive=True)
        for m in itertools.product(range(4), repeat=cc.k):
            if cc.n - hamming_distance(concat_encode(cc, m), y) >= 2 * eps * cc.n:
                assert m in exhaustive
        out = concat_list_decode(cc, y, inner, outer, 4, rng)
        assert set(out) <= set(exhaustive)
        hits += msg in out
    assert hits >= 8


def test_list_decode_tiny_hadamard_instance():
    cc = tiny()
    eps = 0.125
    inner = hadamard_list_decoder(2, eps)
    outer = rs_list_decoder(cc.outer, math.ceil(eps / (0.5 - eps) * 4))
    rng = np.random.default_rng(13)
    for _ in range(20):
        y = [int(v) for v in rng.integers(0, 2, 16)]
        exhaustive = concat_list_decode(cc, y, inner, outer, exhaustive=True)
        for m in itertools.product(range(2), repeat=4):
            if 16 - hamming_distance(concat_encode(cc, m), y) >= (0.5 + 2 * eps) * 16:
                assert m in exhaustive
        assert set(concat_list_decode(cc, y, inner, outer, 5, rng)) <= set(exhaustive)


def test_binary_entropy():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0) == 0 and binary_entropy(1) == 0
    expected = -0.11 * math.log2(0.11) - 0.89 * math.log2(0.89)
    assert abs(binary_entropy(0.11) - expected) < 1e-9
    assert abs(binary_entropy(0.11) - 0.499916) < 1e-4
    with pytest.raises(ValueError):
        binary_entropy(1.5)


def test_random_linear_code():
    G = [[1, 0, 1, 1], [0, 1, 1, 0]]
    code = RandomLinearCode(G)
    assert code.encode((1, 1)) == (1, 1, 0, 1)
    assert code.min_weight() == min_distance_exhaustive(code.encode, code.params) == 2


def test_gv_k1_matches_binomial_tail():
    n, d = 10, 4
    tail = sum(math.comb(n, w) for w in range(d, n + 1)) / 2**n
    wins = sum(gv_attempt(n, 1, d, child_rng(9, i))[1] for i in range(4000))
    assert abs(wins / 4000 - tail) < 4 * math.sqrt(tail * (1 - tail) / 4000)


def test_gv_sample_verifies():
    code = gv_sample(14, 3, 2, seed=1, slack=0.1)
    assert min_distance_exhaustive(code.encode, code.params) >= 2
    code = gv_sample(16, 3, 4, max_attempts=200, seed=2)
    assert code.min_weight() >= 4
    with pytest.raises(ValueError):
        gv_sample(14, 3, 3, slack=0.1)
    with pytest.raises(GVSearchError):
        gv_sample(14, 3, 2, max_attempts=0, seed=0)


def test_gv_failure_rate_against_bounds():
    n, k, d = 14, 3, 2
    assert gv_feasible(n, k, d, 0.1)
    runs = 5000
    wins = sum(gv_attempt(n, k, d, child_rng(10, i))[1] for i in range(runs))
    rate = wins / runs
    assert rate >= gv_union_bound(n, k, d)
    exact = gv_union_bound_exact(n, k, d)
    assert rate >= exact - 3 * math.sqrt(exact * (1 - exact) / runs)
