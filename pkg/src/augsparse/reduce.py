"""Hypergraph to directed graph reductions built from sparse gadget covers."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .flownet import FlowNetwork, max_flow_min_cut
from .gadget import SINK, SOURCE, Aux, GraphFragment, augmented_cut_acb, augmented_cut_cb, expand_ccb, expand_kcg
from .plcover import CCBParams, KCGParams, cover_to_ccb, cover_to_kcg, find_best_cover, gscb_cover
from .splitting import GSCBFunction, SplittingSpec, evaluate, materialize_scb, mirror_gscb


@dataclass(frozen=True)
class HyperEdge:
    members: tuple[int, ...]
    spec: SplittingSpec | None = None
    gscb: GSCBFunction | None = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(int(v) for v in self.members))
        if (self.spec is None) == (self.gscb is None):
            raise ValueError("a hyperedge needs exactly one of a symmetric spec or a generalized penalty")
        if self.gscb is not None and self.gscb.k != len(self.members):
            raise ValueError(f"penalty covers 0..{self.gscb.k} but the hyperedge has {len(self.members)} members")

    def penalty(self, i: int) -> float:
        if self.spec is not None:
            return evaluate(self.spec, len(self.members), i)
        return self.gscb.w[i]


@dataclass
class Hypergraph:
    n: int
    edges: list[HyperEdge] = field(default_factory=list)

    def __post_init__(self):
        for idx, e in enumerate(self.edges):
            if len(e.members) < 1:
                raise ValueError(f"hyperedge {idx} is empty")
            if len(set(e.members)) != len(e.members):
                raise ValueError(f"hyperedge {idx} repeats a node")
            if any(not 0 <= v < self.n for v in e.members):
                raise ValueError(f"hyperedge {idx} references a node outside [0, {self.n})")

    @property
    def symmetric(self) -> bool:
        return all(e.spec is not None for e in self.edges)

    @property
    def volume(self) -> int:
        return sum(len(e.members) for e in self.edges)


def hypergraph_cut(H: Hypergraph, S: Iterable[int]) -> float:
    S = set(S)
    return sum(e.penalty(sum(1 for v in e.members if v in S)) for e in H.edges)


Params = Union[CCBParams, KCGParams]


@dataclass
class AugmentedGraph:
    """Reduced network plus what is needed to evaluate its cut analytically.

    Node ids: originals 0..n-1, auxiliaries in hyperedge order, then source
    and sink.  ``gadgets[e]`` holds hyperedge e's member tuple and its
    (weight-scaled) gadget parameters.
    """

    net: FlowNetwork
    n: int
    symmetric: bool
    gadgets: list[tuple[tuple[int, ...], Params]]
    aux_owner: list[tuple[int, int]]
    arc_insertions: int
    stats: dict = field(default_factory=dict)

    @property
    def aux_count(self) -> int:
        return len(self.aux_owner)

    @property
    def pieces(self) -> list[int]:
        return [len(p) for _, p in self.gadgets]

    def role(self, node: int) -> tuple:
        if node < self.n:
            return ("original", node)
        if node == self.net.source:
            return ("source",)
        if node == self.net.sink:
            return ("sink",)
        return ("auxiliary", *self.aux_owner[node - self.n])

    def roles_json(self) -> dict:
        return {
            "n_original": self.n,
            "source": self.net.source,
            "sink": self.net.sink,
            "auxiliary": [{"id": self.n + i, "hyperedge": e, "local": j}
                          for i, (e, j) in enumerate(self.aux_owner)],
        }


def assemble(n: int, fragments: Sequence[tuple[tuple[int, ...], Params, GraphFragment]],
             symmetric: bool, extra_arcs: Iterable[tuple[object, object, float]] = ()) -> AugmentedGraph:
    """Number auxiliaries in hyperedge order and merge fragments into one network."""
    aux_owner: list[tuple[int, int]] = []
    offsets = []
    for e, (_, _, frag) in enumerate(fragments):
        offsets.append(n + len(aux_owner))
        aux_owner.extend((e, j) for j in range(frag.aux_count))
    source = n + len(aux_owner)
    sink = source + 1

    def gid(ref, off):
        if isinstance(ref, Aux):
            return off + ref.index
        if ref == SOURCE:
            return source
        if ref == SINK:
            return sink
        return ref

    arcs = []
    for (_, _, frag), off in zip(fragments, offsets):
        arcs.extend((gid(u, off), gid(v, off), c) for u, v, c in frag.arcs)
    arcs.extend((gid(u, 0), gid(v, 0), c) for u, v, c in extra_arcs)
    net = FlowNetwork.from_arcs(sink + 1, arcs, source, sink)
    gadgets = [(members, params) for members, params, _ in fragments]
    return AugmentedGraph(net, n, symmetric, gadgets, aux_owner, len(arcs))


def _parallel_map(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def build_sparsifier(H: Hypergraph, eps: float, threads: int = 1,
                     cache: dict | None = None) -> AugmentedGraph:
    """Augmented cut sparsifier for a hypergraph with symmetric splitting functions."""
    if not H.symmetric:
        raise ValueError("build_sparsifier needs symmetric splitting specs; use build_st_network")
    cache = {} if cache is None else cache
    t0 = time.perf_counter()

    def unit_params(key):
        shape, k = key
        if key not in cache:
            spec = SplittingSpec(shape[0], shape[1], 1.0, shape[2])
            cache[key] = cover_to_ccb(find_best_cover(materialize_scb(spec, k), eps))
        return cache[key]

    keys = [(e.spec.shape_key(), len(e.members)) for e in H.edges]
    _parallel_map(unit_params, list(dict.fromkeys(k for k in keys if k[1] >= 2)), threads)
    t1 = time.perf_counter()
    fragments = []
    for e, key in zip(H.edges, keys):
        if key[1] < 2 or e.spec.weight == 0:
            params = CCBParams((), ())
        else:
            params = cache[key].scaled(e.spec.weight)
        fragments.append((e.members, params, expand_ccb(e.members, params)))
    G = assemble(H.n, fragments, True)
    G.stats.update(cover_ms=1e3 * (t1 - t0), build_ms=1e3 * (time.perf_counter() - t1), eps=eps)
    return G


def kcg_for(w: GSCBFunction, eps: float, cache: dict | None = None) -> KCGParams:
    key = (w.w, eps)
    if cache is not None and key in cache:
        return cache[key]
    params = cover_to_kcg(gscb_cover(w, eps), w.k)
    if cache is not None:
        cache[key] = params
    return params


def build_st_network(H: Hypergraph, eps: float, threads: int = 1,
                     cache: dict | None = None,
                     extra_arcs: Iterable[tuple[object, object, float]] = ()) -> AugmentedGraph:
    """s-t network whose min cut over auxiliaries is the covered k-CG sum.

    Symmetric edges are mirrored to full 0..k penalty sequences first.
    """
    cache = {} if cache is None else cache
    t0 = time.perf_counter()
    comps = [(e.members, e.gscb if e.gscb is not None else mirror_gscb(e.spec, len(e.members)))
             for e in H.edges]
    uniq = list(dict.fromkeys(w for _, w in comps))
    _parallel_map(lambda w: kcg_for(w, eps, cache), uniq, threads)
    t1 = time.perf_counter()
    fragments = []
    for members, w in comps:
        params = cache[(w.w, eps)]
        fragments.append((members, params, expand_kcg(members, params)))
    G = assemble(H.n, fragments, False, extra_arcs)
    G.stats.update(cover_ms=1e3 * (t1 - t0), build_ms=1e3 * (time.perf_counter() - t1), eps=eps)
    return G


def augmented_cut(G: AugmentedGraph, S: Iterable[int]) -> float:
    """Min over auxiliary placements of the directed cut, evaluated from gadget formulas."""
    S = set(S)
    if any(not (isinstance(v, int) and 0 <= v < G.n) for v in S):
        raise ValueError("cut set may only contain original node ids")
    total = 0.0
    for members, params in G.gadgets:
        k = len(members)
        i = sum(1 for v in members if v in S)
        if G.symmetric:
            total += augmented_cut_cb(params, k, i)
        else:
            total += augmented_cut_acb(params, k, i)
    return total


def forced_cut_value(G: AugmentedGraph, S: Iterable[int]) -> float:
    """Directed min cut with S pinned to the source side and V\\S to the sink side."""
    S = set(S)
    net = G.net
    big = 1.0 + 2.0 * sum(net.caps)
    pins = [(net.source, v, big) if v in S else (v, net.sink, big) for v in range(G.n)]
    pinned = FlowNetwork.from_arcs(net.node_count, list(net.arcs()) + pins, net.source, net.sink)
    return max_flow_min_cut(pinned).flow_value
