"""Co-occurrence graphs: cut values, implicit sparsification, power-law instances.

A co-occurrence graph puts weight w_c on every pair of nodes that appear
together in a set c.  Its cut is sum_c w_c |S cap c| |c minus S|, which is a
clique splitting penalty per set, so each set can be replaced by a handful of
CB-gadgets without ever listing its pairs.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .gadget import expand_ccb
from .plcover import CCBParams, clique_cover, cover_to_ccb
from .reduce import AugmentedGraph, _parallel_map, assemble


@dataclass
class CoocInstance:
    n: int
    sets: list[tuple[tuple[int, ...], float]] = field(default_factory=list)

    def __post_init__(self):
        clean = []
        for idx, (members, w) in enumerate(self.sets):
            members = tuple(int(v) for v in members)
            if len(set(members)) != len(members):
                raise ValueError(f"set {idx} repeats a node")
            if any(not 0 <= v < self.n for v in members):
                raise ValueError(f"set {idx} references a node outside [0, {self.n})")
            if not w > 0:
                raise ValueError(f"set {idx} needs a positive weight, got {w}")
            clean.append((members, float(w)))
        self.sets = clean

    def sizes(self) -> np.ndarray:
        return np.array([len(c) for c, _ in self.sets], dtype=np.int64)


def cooc_cut_value(inst: CoocInstance, S: Iterable[int]) -> float:
    S = set(S)
    total = 0.0
    for members, w in inst.sets:
        i = sum(1 for v in members if v in S)
        total += w * i * (len(members) - i)
    return total


def sparsify_cooc(inst: CoocInstance, eps: float, threads: int = 1,
                  cache: dict | None = None) -> AugmentedGraph:
    """Replace every set by the tangent-line clique cover of its size.

    Sets of size < 2 never contribute to a cut and get no gadgets.
    """
    if not eps > 0:
        raise ValueError("co-occurrence sparsification needs eps > 0")
    cache = {} if cache is None else cache
    t0 = time.perf_counter()
    ks = sorted({len(c) for c, _ in inst.sets if len(c) >= 2} - set(cache))

    def unit(k):
        return k, cover_to_ccb(clique_cover(k, eps))

    cache.update(_parallel_map(unit, ks, threads))
    t1 = time.perf_counter()
    fragments = []
    for members, w in inst.sets:
        params = cache[len(members)].scaled(w) if len(members) >= 2 else CCBParams((), ())
        fragments.append((members, params, expand_ccb(members, params)))
    G = assemble(inst.n, fragments, True)
    G.stats.update(cover_ms=1e3 * (t1 - t0), build_ms=1e3 * (time.perf_counter() - t1), eps=eps)
    return G


def sparsify_complete(n: int, eps: float) -> AugmentedGraph:
    """Sparsifier of the unit-weight complete graph on n nodes."""
    return sparsify_cooc(CoocInstance(n, [(tuple(range(n)), 1.0)]), eps)


def powerlaw_pmf(n: int, gamma: float) -> np.ndarray:
    k = np.arange(1, n + 1, dtype=float)
    p = k ** -gamma
    return p / p.sum()


def gen_powerlaw(n: int, m: int, gamma: float, seed: int = 42) -> CoocInstance:
    """m sets with P[|c| = k] proportional to k^-gamma on [1, n], members uniform."""
    if not gamma > 1:
        raise ValueError("gamma must exceed 1")
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(powerlaw_pmf(n, gamma))
    cdf[-1] = 1.0
    sizes = np.searchsorted(cdf, rng.random(m), side="right") + 1
    sizes = np.minimum(sizes, n)
    sets = [(tuple(int(v) for v in rng.choice(n, size=int(k), replace=False)), 1.0) for k in sizes]
    return CoocInstance(n, sets)
