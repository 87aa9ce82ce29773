"""Brute-force reference computations.

Everything here enumerates instead of reasoning, and recomputes the certified
quantity with its own arithmetic rather than calling the code under test.
Inputs are capped so the enumerations stay small.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .cooc import CoocInstance
from .dsfm import DSFMInstance
from .gadget import SINK, SOURCE, Aux, GraphFragment
from .plcover import CCBParams
from .reduce import AugmentedGraph, Hypergraph
from .splitting import GSCBFunction, SCBFunction

MAX_MIN_F_NODES = 22
MAX_SANDWICH_NODES = 16
MAX_DP_DOMAIN = 20
MAX_AUX = 20

# relative slack for "line upper-bounds w" and "line within (1+eps) of w"
DP_RTOL = 1e-10


class OracleRefusal(ValueError):
    """Input too large for exhaustive enumeration."""


def _subset_counts(n: int, members: Sequence[int], masks: np.ndarray) -> np.ndarray:
    cnt = np.zeros(masks.shape, dtype=np.int64)
    for v in members:
        cnt += (masks >> v) & 1
    return cnt


def brute_min_f(inst: DSFMInstance) -> tuple[frozenset[int], float]:
    """Exact minimum over all 2^n sets; ties broken by the lexicographically smallest sorted member list."""
    n = inst.n
    if n > MAX_MIN_F_NODES:
        raise OracleRefusal(f"brute_min_f handles n <= {MAX_MIN_F_NODES}, got {n}")
    masks = np.arange(1 << n, dtype=np.int64)
    vals = np.zeros(masks.shape)
    for support, f in inst.components:
        vals += np.asarray(f.w)[_subset_counts(n, support, masks)]
    best = vals.min()
    tol = 1e-12 * max(1.0, float(np.abs(vals).max()))
    ties = np.flatnonzero(vals <= best + tol)
    sets = [tuple(v for v in range(n) if (int(m) >> v) & 1) for m in ties]
    S = min(sets)
    return frozenset(S), float(vals[ties[sets.index(S)]])


@dataclass
class SandwichReport:
    ok: bool
    max_ratio: float
    worst_set: frozenset[int]
    violation: tuple[frozenset[int], float, float] | None = None  # (S, cut_H, augmented)


def brute_cut_sandwich(H: Hypergraph | CoocInstance, G: AugmentedGraph, eps: float,
                       rtol: float = 1e-9) -> SandwichReport:
    """Check cut_H(S) <= cut_G(S) <= (1+eps) cut_H(S) over every S."""
    n = H.n
    if n > MAX_SANDWICH_NODES:
        raise OracleRefusal(f"brute_cut_sandwich handles n <= {MAX_SANDWICH_NODES}, got {n}")
    masks = np.arange(1 << n, dtype=np.int64)
    cut = np.zeros(masks.shape)
    if isinstance(H, CoocInstance):
        for members, w in H.sets:
            i = _subset_counts(n, members, masks)
            cut += w * i * (len(members) - i)
    else:
        for e in H.edges:
            table = np.array([e.penalty(i) for i in range(len(e.members) + 1)])
            cut += table[_subset_counts(n, e.members, masks)]
    aug = np.zeros(masks.shape)
    for members, p in G.gadgets:
        k = len(members)
        i = _subset_counts(n, members, masks).astype(float)
        if isinstance(p, CCBParams):
            small = np.minimum(i, k - i)
            for a, b in zip(p.a, p.b):
                aug += a * np.minimum(small, b)
        else:
            aug += p.z0 * (k - i) + p.zk * i
            for a, b in zip(p.a, p.b):
                aug += a * np.minimum(i * (k - b), (k - i) * b)
    floor = 1e-12 * max(1.0, float(cut.max()))
    low = aug < cut * (1 - rtol) - floor
    high = aug > (1 + eps) * cut * (1 + rtol) + floor
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(cut > floor, aug / np.where(cut > floor, cut, 1.0), 1.0)
    worst = int(np.argmax(ratio))
    as_set = lambda m: frozenset(v for v in range(n) if (int(m) >> v) & 1)
    bad = np.flatnonzero(low | high)
    violation = None
    if bad.size:
        m = int(bad[0])
        violation = (as_set(m), float(cut[m]), float(aug[m]))
    return SandwichReport(not bad.size, float(ratio[worst]), as_set(worst), violation)


def _candidate_lines(w: np.ndarray, eps: float, lo: int, hi: int) -> set[tuple[float, float]]:
    """Lines through at least one point of w on [lo, hi]: chords of neighbours and
    two-point lines joining a raised point (l, (1+eps) w_l) to a point (j, w_j)."""
    lines = set()
    for j in range(lo, hi):
        m = w[j + 1] - w[j]
        lines.add((m, w[j] - m * j))
    for l in range(lo, hi + 1):
        for j in range(lo, hi + 1):
            if j != l:
                m = (w[j] - (1 + eps) * w[l]) / (j - l)
                lines.add((m, w[j] - m * j))
    return lines


def _coverage(w: np.ndarray, eps: float, line: tuple[float, float], lo: int, hi: int):
    """Covered index interval of an upper-bounding line, or None if it dips below w."""
    m, c = line
    x = np.arange(lo, hi + 1)
    g = m * x + c
    ww = w[lo:hi + 1]
    slack = DP_RTOL * max(1.0, float(np.abs(w).max()))
    if np.any(g < ww - slack):
        return None
    hit = np.flatnonzero(g <= (1 + eps) * ww + slack)
    if hit.size == 0:
        return None
    return lo + int(hit[0]), lo + int(hit[-1])


def _interval_cover(intervals: Iterable[tuple[int, int]], lo: int, hi: int) -> float:
    """Fewest intervals covering every integer in [lo, hi]."""
    if lo > hi:
        return 0
    best = [np.inf] * (hi - lo + 2)  # best[x - lo + 1]: cover of [lo, x]
    best[0] = 0
    ivs = sorted(intervals)
    for x in range(lo, hi + 1):
        for a, b in ivs:
            if a <= x <= b:
                prev = best[max(a, lo) - lo]  # cover of [lo, a-1]
                for y in range(max(a, lo) - 1, x):
                    prev = min(prev, best[y - lo + 1])
                best[x - lo + 1] = min(best[x - lo + 1], prev + 1)
    return best[-1]


def min_cover_size_dp(w: SCBFunction | GSCBFunction, eps: float) -> int:
    """Smallest cover size by interval-chain DP over a finite candidate line family.

    Symmetric penalties: counts positive-slope lines, with the origin line of
    slope w(1) mandatory and the constant w(r) free.  Generalized penalties:
    counts every line needed to cover 0..k.
    """
    vals = np.asarray(w.w, dtype=float)
    end = len(vals) - 1
    if end > MAX_DP_DOMAIN:
        raise OracleRefusal(f"min_cover_size_dp handles domains up to {MAX_DP_DOMAIN}, got {end}")
    slack = DP_RTOL * max(1.0, float(np.abs(vals).max()))
    if isinstance(w, GSCBFunction):
        if vals.max() <= slack:
            return 1
        ivs = [iv for g in _candidate_lines(vals, eps, 0, end)
               if (iv := _coverage(vals, eps, g, 0, end)) is not None]
        return int(_interval_cover(ivs, 0, end))
    if end == 0 or vals[1] <= slack:
        return 0
    x = np.arange(end + 1)
    # origin line with slope w(1) covers a prefix
    origin = np.flatnonzero(vals[1] * x[1:] > (1 + eps) * vals[1:] + slack)
    first_gap = 1 + int(origin[0]) if origin.size else end + 1
    # the constant w(r) covers a suffix
    flat = np.flatnonzero(vals[end] <= (1 + eps) * vals + slack)
    flat = flat[flat >= 1]
    last_gap = int(flat[0]) - 1 if flat.size else end
    if first_gap > last_gap:
        return 1
    ivs = []
    for g in _candidate_lines(vals, eps, 0, end):
        if g[0] > 0 and (iv := _coverage(vals, eps, g, 0, end)) is not None:
            ivs.append(iv)
    return 1 + int(_interval_cover(ivs, first_gap, last_gap))


def _fragment_cut(frag: GraphFragment, side: dict) -> float:
    def on_source(ref):
        if ref == SOURCE:
            return True
        if ref == SINK:
            return False
        return side[ref]

    return sum(c for u, v, c in frag.arcs if on_source(u) and not on_source(v))


def brute_aux_mincut(frag: GraphFragment, S: Iterable[int], members: Sequence[int] | None = None) -> float:
    """Min directed cut of a fragment over all placements of its auxiliaries,
    with originals in S on the source side and the rest on the sink side."""
    if frag.aux_count > MAX_AUX:
        raise OracleRefusal(f"brute_aux_mincut handles up to {MAX_AUX} auxiliaries, got {frag.aux_count}")
    S = set(S)
    originals = set(members or ())
    for u, v, _ in frag.arcs:
        originals.update(x for x in (u, v) if not isinstance(x, (Aux, str)))
    side = {v: v in S for v in originals}
    best = np.inf
    for placement in product((False, True), repeat=frag.aux_count):
        side.update({Aux(j): placement[j] for j in range(frag.aux_count)})
        best = min(best, _fragment_cut(frag, side))
    return float(best)

