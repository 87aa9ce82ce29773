import gc
import math
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from augsparse.plcover import (CCBParams, CoverError, KCGParams, Line, PLCover, ccb_evaluate, clique_cover,
                               cover_to_ccb, cover_to_kcg, find_best_cover, find_next, gscb_cover,
                               kcg_evaluate, lower_envelope)
from augsparse.splitting import GSCBFunction, SplittingSpec, materialize_scb, scb_from_values

SQRT4 = [0, 1, math.sqrt(2), math.sqrt(3), 2]


def brute_widest_line(w, eps, ell):
    """Enumerate two-point lines (raised point, data point) and chords; keep the
    upper-bounding ones covering ell and return max reach, then min slope."""
    w = np.asarray(w, float)
    r = len(w) - 1
    cands = [(w[j + 1] - w[j], j) for j in range(r)]
    cands += [((w[j] - (1 + eps) * w[l]) / (j - l), j) for l in range(r + 1) for j in range(r + 1) if j != l]
    best = None
    x = np.arange(r + 1)
    for m, j in cands:
        g = w[j] + m * (x - j)
        if np.any(g < w - 1e-12):
            continue
        ok = g <= (1 + eps) * w + 1e-12
        if not ok[ell]:
            continue
        p = ell
        while p + 1 <= r and ok[p + 1]:
            p += 1
        key = (-p, m)
        if best is None or key < best[0]:
            best = (key, m, p)
    return best[1], best[2]


def test_find_next_examples():
    g, p = find_next([0, 3, 4], 0.0, 2)
    assert (g.slope, g.intercept, p) == (0.0, 4.0, 3)
    g, p = find_next([0, 1, 2, 3, 4], 0.0, 1)
    assert (g.slope, g.intercept, p) == (1.0, 0.0, 4)
    g, p = find_next(SQRT4, 0.05, 2)
    m, q = brute_widest_line(SQRT4, 0.05, 2)
    assert p == q == 4
    assert g.slope == pytest.approx(m, rel=1e-12)
    # frozen from the enumeration above
    assert g.slope == pytest.approx(0.257537879754125, rel=1e-12)
    assert g.intercept == pytest.approx(0.9698484809835, rel=1e-12)


def test_find_next_domain():
    with pytest.raises(ValueError):
        find_next([0, 3, 4], 0.0, 0)
    with pytest.raises(ValueError):
        find_next([0, 3, 4], 0.0, 3)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=2, max_size=12), st.sampled_from([0.0, 0.05, 0.3, 1.0]), st.data())
def test_find_next_matches_enumeration(incs, eps, data):
    incs = sorted(incs, reverse=True)
    w = scb_from_values([0.0] + list(np.cumsum(incs)))
    if w.is_zero:
        return
    ell = data.draw(st.integers(1, w.r))
    g, p = find_next(w, eps, ell)
    if p == w.r + 1:
        assert w.w[-1] <= (1 + eps) * w.w[ell] * (1 + 1e-12)
        return
    _, q = brute_widest_line(w.w, eps, ell)
    assert p == q


def test_clique_k4_exact_cover():
    c = find_best_cover([0, 3, 4], 0.0)
    # min(3x, 4) already hits (1,3) and (2,4): one sloped piece is enough
    assert c.lines == (Line(3.0, 0.0), Line(0.0, 4.0))
    assert c.pieces == 1
    assert list(c.envelope(np.array([0, 1, 2]))) == [0, 3, 4]


def test_linear_needs_one_piece():
    for r in (1, 5, 40):
        for eps in (0.0, 0.1, 2.0):
            c = find_best_cover(list(range(r + 1)), eps)
            assert c.pieces == 1 and len(c.lines) == 2


def test_sqrt_log_bound():
    w = materialize_scb(SplittingSpec("sqrt"), 10_000)
    assert find_best_cover(w, 0.1).pieces <= 1 + math.ceil(math.log(5000, 1.1))


def test_zero_and_trivial_covers():
    assert find_best_cover([0], 0.1).lines == ()
    assert find_best_cover([0, 0, 0], 0.1).lines == ()


def _sandwich(c: PLCover, w, eps):
    x = np.arange(len(w))
    f = c.envelope(x)
    w = np.asarray(w, float)
    return np.all(f >= w * (1 - 1e-9) - 1e-12) and np.all(f <= (1 + eps) * w * (1 + 1e-9) + 1e-12)


def scb_vectors():
    return st.lists(st.floats(0, 10), min_size=1, max_size=30).map(
        lambda inc: [0.0] + list(np.cumsum(sorted(inc, reverse=True))))


@settings(max_examples=200, deadline=None)
@given(scb_vectors(), st.sampled_from([0.0, 0.01, 0.1, 0.5, 1.0, 3.0]))
def test_symmetric_cover_properties(w, eps):
    c = find_best_cover(w, eps)
    assert _sandwich(c, w, eps)
    if c.lines:
        assert sum(1 for g in c.lines if g.slope == 0) == 1
        bps = c.breakpoints()
        assert all(0 < b <= c.domain_end + 1e-9 for b in bps)
        p = cover_to_ccb(c)
        for i in range(len(w)):
            assert ccb_evaluate(p, i) == pytest.approx(c.envelope(i), rel=1e-9, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(scb_vectors())
def test_piece_count_monotone_in_eps(w):
    counts = [find_best_cover(w, e).pieces for e in (0.0, 0.01, 0.1, 0.5, 1.0, 5.0)]
    assert counts == sorted(counts, reverse=True)


def test_linear_time_scaling():
    sizes = (100_000, 200_000, 400_000)
    inputs = [scb_from_values(np.sqrt(np.arange(r + 1))) for r in sizes]
    times = [math.inf] * len(sizes)
    gc.disable()
    try:
        # interleave sizes so a transient slowdown hits all of them alike
        for _ in range(30):
            for j, w in enumerate(inputs):
                t0 = time.perf_counter()
                find_best_cover(w, 0.1)
                times[j] = min(times[j], time.perf_counter() - t0)
    finally:
        gc.enable()
    assert times[1] / times[0] <= 2.0 and times[2] / times[1] <= 2.0, times


def recurrence_pieces(k, eps):
    """Count tangent points of the clique recurrence directly."""
    count, z = 1, 1.0
    while True:
        t = z + math.sqrt(z * (k - z) * eps)
        if t >= k / 2:
            return count
        count += 1
        z = (t + k * eps / 2 + math.sqrt(k * k * eps * eps + 4 * eps * t * (k - t)) / 2) / (1 + eps)
        if z >= k / 2:
            return count


@pytest.mark.parametrize("k,eps", [(100, 0.1), (10**6, 0.01), (10**6, 0.001), (1000, 0.5), (10**4, 0.2)])
def test_clique_cover_matches_recurrence(k, eps):
    c = clique_cover(k, eps)
    assert c.pieces == recurrence_pieces(k, eps)


def test_clique_cover_tiny_k_never_exceeds_recurrence():
    # for tiny k the capping constant can hide the last tangent entirely
    for k in range(2, 40):
        for eps in (0.05, 0.3, 1.0):
            assert clique_cover(k, eps).pieces <= recurrence_pieces(k, eps)


def test_clique_cover_sandwich_on_grid():
    for k, eps in ((100, 0.1), (10**4, 0.01), (10**6, 0.01), (5, 0.3)):
        c = clique_cover(k, eps)
        x = np.arange(0, k // 2 + 1, dtype=float)
        assert _sandwich(c, x * (k - x), eps)


def test_clique_cover_coarse_eps():
    for k in (2, 3, 10, 1001, 10**6):
        for eps in (1.0, 2.0, 10.0):
            assert clique_cover(k, eps).pieces <= 2
    with pytest.raises(ValueError):
        clique_cover(1, 0.1)
    assert clique_cover(4, 0.0).pieces == find_best_cover([0, 3, 4], 0.0).pieces


def test_cover_to_ccb_examples():
    c = PLCover((Line(3, 0), Line(1, 2), Line(0, 4)), 2)
    p = cover_to_ccb(c)
    assert p.a == (2, 1) and p.b == (1, 2)
    assert [ccb_evaluate(p, i) for i in range(3)] == [0, 3, 4]
    p = cover_to_ccb(PLCover((Line(2.5, 0), Line(0, 2.5 * 7)), 7))
    assert p == CCBParams((2.5,), (7.0,))
    star = find_best_cover(materialize_scb(SplittingSpec("linear"), 9), 0.0)
    assert cover_to_ccb(star) == CCBParams((1.0,), (4.0,))
    with pytest.raises(CoverError):
        cover_to_ccb(PLCover((Line(1, 0), Line(2, 1)), 3))


def test_ccb_evaluate_examples():
    assert ccb_evaluate(CCBParams((2, 1), (1, 2)), 2) == 4
    assert ccb_evaluate(CCBParams((2, 1), (1, 2)), 0) == 0
    assert ccb_evaluate(CCBParams((1,), (3,)), 5) == 3


def test_gscb_cover_examples():
    c = gscb_cover([0, 3, 4, 3, 0], 0.0)
    assert list(c.envelope(np.arange(5))) == [0, 3, 4, 3, 0]
    assert len(c.lines) == 3
    c = gscb_cover([2.5] * 6, 0.4)
    assert c.lines == (Line(0.0, 2.5),)
    c = gscb_cover([2, 3, 3, 2], 0.5)
    assert _sandwich(c, [2, 3, 3, 2], 0.5)


def test_cover_to_kcg_examples():
    assert cover_to_kcg(gscb_cover([0, 3, 4, 3, 0], 0.0)).z0 == 0
    p = cover_to_kcg(PLCover((Line(0.0, 3.0),), 4, False))
    assert p == KCGParams(0.75, 0.75, (), ())
    p = cover_to_kcg(gscb_cover([2, 3, 3, 2], 0.0))
    assert [kcg_evaluate(p, i, 3) for i in range(4)] == pytest.approx([2, 3, 3, 2], rel=1e-12)
    with pytest.raises(CoverError):
        cover_to_kcg(PLCover((Line(1, 0), Line(-1, 8)), 4, False))


def test_kcg_evaluate_examples():
    assert kcg_evaluate(KCGParams(0, 0, (1,), (1,)), 2, 4) == 2
    assert kcg_evaluate(KCGParams(0.5, 0, (), ()), 0, 4) == 2
    p = cover_to_kcg(gscb_cover([0, 3, 4, 3, 0], 0.0))
    assert kcg_evaluate(p, 1, 4) == pytest.approx(3, rel=1e-12)


@st.composite
def gscb_vectors(draw):
    k = draw(st.integers(1, 25))
    inc = sorted(draw(st.lists(st.floats(-5, 5), min_size=k, max_size=k)), reverse=True)
    w = draw(st.floats(0, 5)) + np.concatenate([[0.0], np.cumsum(inc)])
    return list(w - min(w.min(), 0.0))


@settings(max_examples=200, deadline=None)
@given(gscb_vectors(), st.sampled_from([0.0, 0.05, 0.3, 1.0]))
def test_gscb_cover_properties(w, eps):
    c = gscb_cover(w, eps)
    assert _sandwich(c, w, eps)
    k = len(w) - 1
    p = cover_to_kcg(c, k)
    for i in range(k + 1):
        assert kcg_evaluate(p, i, k) == pytest.approx(c.envelope(i), rel=1e-9, abs=1e-9)


def test_lower_envelope_drops_hidden_lines():
    lines = [Line(2, 0), Line(1, 0.5), Line(1, 5), Line(1.5, 10), Line(0, 2)]
    assert lower_envelope(lines) == (Line(2, 0), Line(1, 0.5), Line(0, 2))
