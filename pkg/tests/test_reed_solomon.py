import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecclab.codes import Adversarial, DecodingError, child_rng, hamming_distance, transmit
from ecclab.galois import GF, UniPoly
from ecclab.reed_solomon import (
    RSCode,
    brute_force_list_decode,
    bw_decode,
    rectangular_degrees,
    rs_encode,
    sudan_list_decode,
    sudan_list_decode_weighted,
    weighted_support,
)


def test_encode_examples():
    code = RSCode.standard(7, 7, 2)
    assert rs_encode(code, (1, 2)) == (1, 3, 5, 0, 2, 4, 6)
    assert rs_encode(code, (0, 0)) == (0,) * 7
    assert code.params.d == 6
    with pytest.raises(ValueError):
        rs_encode(code, (1, 2, 3))


def test_constant_message():
    code = RSCode(GF(11), [1, 4, 9, 3], 1)
    assert code.encode((7,)) == (7, 7, 7, 7)


def test_code_validation():
    with pytest.raises(ValueError):
        RSCode(GF(7), [1, 1, 2], 1)
    with pytest.raises(ValueError):
        RSCode(GF(7), [1, 2, 3], 3)
    with pytest.raises(ValueError):
        RSCode.standard(7, 8, 2)


def test_bw_examples():
    code = RSCode.standard(7, 7, 2)
    c = list(code.encode((1, 2)))
    assert bw_decode(code, c) == (1, 2)
    c[0], c[5] = (c[0] + 1) % 7, (c[5] + 3) % 7
    assert bw_decode(code, c, e=2) == (1, 2)
    with pytest.raises(ValueError):
        bw_decode(code, c, e=3)


def test_bw_exhaustive_small_field():
    code = RSCode.standard(5, 5, 2)
    for msg in itertools.product(range(5), repeat=2):
        c = code.encode(msg)
        for pos in range(5):
            for delta in range(1, 5):
                y = list(c)
                y[pos] = (y[pos] + delta) % 5
                assert bw_decode(code, y) == msg


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(16, 15, 5), (13, 12, 4), (8, 8, 3), (64, 20, 8)]), st.integers(0, 2**32 - 1))
def test_bw_round_trip(shape, seed):
    q, n, k = shape
    code = RSCode.standard(q, n, k)
    rng = np.random.default_rng(seed)
    msg = tuple(int(v) for v in rng.integers(0, q, k))
    e = int(rng.integers(0, code.max_errors + 1))
    y = transmit(Adversarial(e), code.encode(msg), q, rng)
    assert bw_decode(code, y) == msg


def test_bw_over_budget_never_violates_contract():
    code = RSCode.standard(16, 15, 5)
    for trial in range(300):
        rng = child_rng(99, trial)
        msg = tuple(int(v) for v in rng.integers(0, 16, 5))
        y = transmit(Adversarial(6), code.encode(msg), 16, rng)
        try:
            out = bw_decode(code, y, e=5)
        except DecodingError:
            continue
        assert hamming_distance(code.encode(out), y) <= 5


def _planted(F, xs, poly, agree, rng):
    pts = []
    for idx, x in enumerate(xs):
        y = poly(x).value
        if idx >= agree:
            y = (y + 1 + rng.randrange(F.order - 1)) % F.order if F.kind == "prime" else y ^ (1 + rng.randrange(F.order - 1))
        pts.append((x, y))
    return pts


def test_sudan_noiseless():
    F = GF(11)
    p = UniPoly(F, [3, 5])
    pts = [(x, p(x).value) for x in range(10)]
    res = sudan_list_decode(pts, 2, 10, F)
    assert res.messages == [(3, 5)]
    assert res.candidates[0].agreement == 10
    assert sudan_list_decode_weighted(pts, 2, 10, F).messages == [(3, 5)]


def test_sudan_gf11_nine_agreements():
    F = GF(11)
    rng = random.Random(3)
    p = UniPoly(F, [4, 7])
    pts = _planted(F, range(10), p, 9, rng)
    res = sudan_list_decode(pts, 2, 9, F)
    assert (4, 7) in res.messages
    assert sorted(res.messages) == brute_force_list_decode(pts, 2, 9, F)


def test_sudan_threshold_errors():
    F = GF(11)
    pts = [(x, 0) for x in range(10)]
    with pytest.raises(ValueError):
        sudan_list_decode(pts, 2, 8, F)  # 64 <= 80
    with pytest.raises(ValueError):
        sudan_list_decode_weighted(pts, 2, 6, F)  # 36 <= 40
    with pytest.raises(ValueError):
        sudan_list_decode([(1, 2), (1, 2)], 1, 2, F)


def two_line_instance(F):
    """Lines 1+2x and 5+3x (meeting at x=7), each through 8 of 15 points."""
    p1, p2 = UniPoly(F, [1, 2]), UniPoly(F, [5, 3])
    pts = {(x, p1(x).value) for x in range(8)}
    pts |= {(x, p2(x).value) for x in [7, 0, 1, 2, 8, 9, 10, 3]}
    return sorted(pts)


def test_weighted_two_candidates():
    F = GF(11)
    pts = two_line_instance(F)
    assert len(pts) == 15
    res = sudan_list_decode_weighted(pts, 2, 8, F)
    bf = brute_force_list_decode(pts, 2, 8, F)
    assert bf == [(1, 2), (5, 3)]
    assert sorted(res.messages) == bf
    with pytest.raises(ValueError):
        sudan_list_decode(pts, 2, 8, F)


def test_weighted_t7_where_rectangular_refuses():
    F = GF(11)
    p = UniPoly(F, [6, 9])
    pts = _planted(F, range(10), p, 7, random.Random(8))
    assert (6, 9) in sudan_list_decode_weighted(pts, 2, 7, F).messages
    with pytest.raises(ValueError):
        sudan_list_decode(pts, 2, 7, F)


def test_rectangular_degrees_and_support():
    dx, dy = rectangular_degrees(10, 2)
    assert dx * dy > 10 and dy == math.ceil(math.sqrt(10 / 2))
    for n, k, t in [(10, 2, 7), (20, 3, 12), (30, 2, 11)]:
        sup = weighted_support(n, k, t)
        assert all(i + k * j < t and j * j * k <= 2 * n for i, j in sup)
        assert len(sup) > n


def test_weighted_range_contains_rectangular():
    for n, k in [(10, 2), (30, 3), (50, 1), (100, 4)]:
        rect = [t for t in range(1, n + 1) if t * t > 4 * n * k]
        wtd = [t for t in range(1, n + 1) if t * t > 2 * n * k]
        assert set(rect) < set(wtd) or not rect


@pytest.mark.parametrize("q", [11, 13])
def test_list_decoders_match_brute_force(q):
    F = GF(q)
    rng = random.Random(q)
    n, k = 10, 2
    for _ in range(40):
        xs = rng.sample(range(q), n)
        planted = [UniPoly(F, [rng.randrange(q) for _ in range(k)]) for _ in range(2)]
        pts = []
        for idx, x in enumerate(xs):
            src = planted[idx % 3 == 0]
            pts.append((x, src(x).value if rng.random() < 0.85 else rng.randrange(q)))
        pts = list(dict.fromkeys(pts))
        for t in (9, 10):
            if t * t > 4 * len(pts) * k:
                res = sudan_list_decode(pts, k, t, F)
                assert sorted(res.messages) == brute_force_list_decode(pts, k, t, F)
                assert len(res) <= math.ceil(math.sqrt(len(pts) / k))
        for t in (7, 8):
            res = sudan_list_decode_weighted(pts, k, t, F)
            assert sorted(res.messages) == brute_force_list_decode(pts, k, t, F)
            assert len(res) <= math.ceil(math.sqrt(2 * len(pts) / k))
            assert all(c.agreement >= t for c in res)


def test_binary_field_list_decode():
    F = GF(16)
    rng = random.Random(4)
    p = UniPoly(F, [rng.randrange(16) for _ in range(2)])
    pts = _planted(F, range(16), p, 12, rng)
    res = sudan_list_decode_weighted(pts, 2, 12, F)
    assert tuple(p.padded(2)) in res.messages
    assert sorted(res.messages) == brute_force_list_decode(pts, 2, 12, F)
