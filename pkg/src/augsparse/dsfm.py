"""Approximate minimization of sums of concave-cardinality submodular terms.

Each component f_e(S) = w_e(|S cap support_e|) is covered by a sparse
combination of asymmetric gadgets plus terminal arcs; one min s-t cut of the
combined network then gives a set within (1+eps) of the optimum.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .flownet import max_flow_min_cut
from .gadget import SINK, SOURCE
from .reduce import AugmentedGraph, HyperEdge, Hypergraph, build_st_network
from .splitting import GSCBFunction, SplittingSpec, materialize_gscb, mirror_gscb

# seed arcs get this multiple of the total penalty mass
SEED_CAPACITY_FACTOR = 1e6


@dataclass
class DSFMInstance:
    n: int
    components: list[tuple[tuple[int, ...], GSCBFunction]] = field(default_factory=list)

    def __post_init__(self):
        clean = []
        for idx, (support, f) in enumerate(self.components):
            support = tuple(int(v) for v in support)
            if isinstance(f, SplittingSpec):
                f = mirror_gscb(f, len(support))
            elif not isinstance(f, GSCBFunction):
                f = materialize_gscb(f)
            if f.k != len(support):
                raise ValueError(f"component {idx}: penalty covers 0..{f.k} but support has {len(support)} nodes")
            if len(set(support)) != len(support):
                raise ValueError(f"component {idx} repeats a node")
            if any(not 0 <= v < self.n for v in support):
                raise ValueError(f"component {idx} references a node outside [0, {self.n})")
            clean.append((support, f))
        self.components = clean

    @classmethod
    def from_hypergraph(cls, H: Hypergraph) -> "DSFMInstance":
        comps = [(e.members, e.gscb if e.gscb is not None else e.spec) for e in H.edges]
        return cls(H.n, comps)

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, [HyperEdge(s, gscb=f) for s, f in self.components])

    @property
    def mass(self) -> float:
        return sum(max(f.w) for _, f in self.components)


@dataclass(frozen=True)
class Solution:
    S: frozenset[int]
    value: float
    a_priori_bound: float
    epsilon: float
    cut_value: float
    nodes: int = 0
    arcs: int = 0
    pieces: int = 0
    timings: dict = field(default_factory=dict, compare=False)


def evaluate_f(inst: DSFMInstance, S: Iterable[int]) -> float:
    S = set(S)
    return sum(f.w[sum(1 for v in support if v in S)] for support, f in inst.components)


def reduce_instance(inst: DSFMInstance, eps: float, seeds: tuple[Sequence[int], Sequence[int]] | None = None,
                    threads: int = 1, cache: dict | None = None) -> AugmentedGraph:
    """Network whose min cut solves the instance, seeds pinned by heavy terminal arcs."""
    extra = []
    if seeds is not None:
        inside, outside = set(seeds[0]), set(seeds[1])
        clash = inside & outside
        if clash:
            raise ValueError(f"seed sets overlap at nodes {sorted(clash)}")
        for v in inside | outside:
            if not 0 <= v < inst.n:
                raise ValueError(f"seed node {v} outside [0, {inst.n})")
        big = SEED_CAPACITY_FACTOR * max(inst.mass, 1.0)
        extra = [(SOURCE, v, big) for v in sorted(inside)] + [(v, SINK, big) for v in sorted(outside)]
    return build_st_network(inst.to_hypergraph(), eps, threads, cache, extra)


def sparse_card(inst: DSFMInstance, eps: float, seeds: tuple[Sequence[int], Sequence[int]] | None = None,
                threads: int = 1, cache: dict | None = None) -> Solution:
    """One min cut on the sparse reduction; S is the source side restricted to ground nodes."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    G = reduce_instance(inst, eps, seeds, threads, cache)
    t0 = time.perf_counter()
    res = max_flow_min_cut(G.net)
    solve_ms = 1e3 * (time.perf_counter() - t0)
    S = frozenset(v for v in res.source_side if v < inst.n)
    timings = {k: G.stats[k] for k in ("cover_ms", "build_ms")}
    timings["solve_ms"] = solve_ms
    return Solution(S, evaluate_f(inst, S), (1 + eps) * res.flow_value, eps, res.flow_value,
                    G.net.node_count, G.net.arc_count, sum(G.pieces), timings)


def a_posteriori_ratio(inst: DSFMInstance, sol: Solution, opt_value: float) -> float:
    """sol.value / opt_value.

    With a zero optimum the ratio is 1.0 when the solution is also zero
    (exact) and +inf otherwise.
    """
    if opt_value < 0:
        raise ValueError("optimum must be nonnegative")
    if opt_value == 0:
        return 1.0 if abs(sol.value) <= 1e-12 * max(1.0, inst.mass) else math.inf
    return sol.value / opt_value
