"""Directed graph fragments for CB- and ACB-gadget combinations."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

from .plcover import CCBParams, KCGParams, kcg_evaluate

SOURCE = "SOURCE"
SINK = "SINK"


class Aux(NamedTuple):
    """Fragment-local auxiliary node."""

    index: int


NodeRef = Union[int, Aux, str]


@dataclass
class GraphFragment:
    aux_count: int = 0
    arcs: list[tuple[NodeRef, NodeRef, float]] = field(default_factory=list)

    def add(self, tail: NodeRef, head: NodeRef, cap: float) -> None:
        if cap > 0:
            self.arcs.append((tail, head, cap))


def expand_ccb(members: Sequence[int], p: CCBParams) -> GraphFragment:
    """Two auxiliaries per gadget: v -> e' (a), e' -> e'' (a*b), e'' -> v (a)."""
    frag = GraphFragment()
    if len(members) < 2:
        return frag
    for a, b in zip(p.a, p.b):
        e1, e2 = Aux(frag.aux_count), Aux(frag.aux_count + 1)
        frag.aux_count += 2
        for v in members:
            frag.add(v, e1, a)
        frag.add(e1, e2, a * b)
        for v in members:
            frag.add(e2, v, a)
    return frag


def expand_kcg(members: Sequence[int], p: KCGParams) -> GraphFragment:
    """One auxiliary per gadget plus SOURCE -> v (z0) and v -> SINK (zk) arcs."""
    frag = GraphFragment()
    k = len(members)
    for a, b in zip(p.a, p.b):
        ve = Aux(frag.aux_count)
        frag.aux_count += 1
        for v in members:
            frag.add(v, ve, a * (k - b))
        for v in members:
            frag.add(ve, v, a * b)
    for v in members:
        frag.add(SOURCE, v, p.z0)
    for v in members:
        frag.add(v, SINK, p.zk)
    return frag


def augmented_cut_cb(p: CCBParams, k: int, i: int) -> float:
    m = min(i, k - i)
    return sum(a * min(m, b) for a, b in zip(p.a, p.b))


def augmented_cut_acb(p: KCGParams, k: int, i: int) -> float:
    return kcg_evaluate(p, i, k)
