"""Directed flow networks and an exact blocking-flow max-flow solver."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

# residual capacity below RESIDUAL_RTOL * max capacity counts as saturated
RESIDUAL_RTOL = 1e-12


@dataclass(frozen=True)
class FlowNetwork:
    node_count: int
    tails: tuple[int, ...]
    heads: tuple[int, ...]
    caps: tuple[float, ...]
    source: int
    sink: int

    @classmethod
    def from_arcs(cls, node_count: int, arcs: Iterable[tuple[int, int, float]],
                  source: int, sink: int) -> "FlowNetwork":
        """Build a network, summing parallel arcs and dropping self-loops and zero arcs."""
        if source == sink:
            raise ValueError("source and sink must differ")
        for x in (source, sink):
            if not 0 <= x < node_count:
                raise ValueError(f"terminal {x} outside [0, {node_count})")
        merged: dict[tuple[int, int], float] = {}
        for u, v, c in arcs:
            if c < 0:
                raise ValueError(f"negative capacity {c} on arc {u}->{v}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"arc {u}->{v} references a node outside [0, {node_count})")
            if u == v or c == 0:
                continue
            merged[u, v] = merged.get((u, v), 0.0) + c
        keys = list(merged)
        return cls(node_count, tuple(u for u, _ in keys), tuple(v for _, v in keys),
                   tuple(merged[e] for e in keys), source, sink)

    @property
    def arc_count(self) -> int:
        return len(self.caps)

    def arcs(self):
        return zip(self.tails, self.heads, self.caps)

    def scaled(self, c: float) -> "FlowNetwork":
        return FlowNetwork(self.node_count, self.tails, self.heads,
                           tuple(c * x for x in self.caps), self.source, self.sink)


@dataclass(frozen=True)
class MinCutResult:
    flow_value: float
    source_side: frozenset[int]
    arc_flows: tuple[float, ...]


def directed_cut_value(net: FlowNetwork, S) -> float:
    S = set(S)
    if net.source not in S or net.sink in S:
        raise ValueError("cut set must contain the source and exclude the sink")
    return sum(c for u, v, c in net.arcs() if u in S and v not in S)


def max_flow_min_cut(net: FlowNetwork) -> MinCutResult:
    """Dinic's algorithm: BFS level graph, then blocking flow by DFS with arc pointers."""
    n, m = net.node_count, net.arc_count
    s, t = net.source, net.sink
    head = [0] * (2 * m)
    cap = [0.0] * (2 * m)
    adj: list[list[int]] = [[] for _ in range(n)]
    for e, (u, v, c) in enumerate(net.arcs()):
        head[2 * e], cap[2 * e] = v, c
        head[2 * e + 1] = u
        adj[u].append(2 * e)
        adj[v].append(2 * e + 1)
    tol = RESIDUAL_RTOL * max(net.caps, default=0.0)
    flow = 0.0

    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            lu = level[u] + 1
            for e in adj[u]:
                v = head[e]
                if level[v] < 0 and cap[e] > tol:
                    level[v] = lu
                    queue.append(v)
        if level[t] < 0:
            break

        ptr = [0] * n
        path: list[int] = []
        u = s
        while True:
            if u == t:
                f = min(cap[e] for e in path)
                for e in path:
                    cap[e] -= f
                    cap[e ^ 1] += f
                flow += f
                for i, e in enumerate(path):
                    if cap[e] <= tol:
                        del path[i:]
                        break
                u = head[path[-1]] if path else s
                continue
            edges = adj[u]
            lu = level[u] + 1
            i = ptr[u]
            while i < len(edges):
                e = edges[i]
                if cap[e] > tol and level[head[e]] == lu:
                    break
                i += 1
            ptr[u] = i
            if i < len(edges):
                path.append(edges[i])
                u = head[edges[i]]
            else:
                level[u] = -1
                if u == s:
                    break
                e = path.pop()
                u = head[e ^ 1]
                ptr[u] += 1

    seen = [False] * n
    seen[s] = True
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for e in adj[u]:
            v = head[e]
            if not seen[v] and cap[e] > tol:
                seen[v] = True
                queue.append(v)
    side = frozenset(i for i in range(n) if seen[i])
    arc_flows = tuple(c - cap[2 * e] for e, c in enumerate(net.caps))
    return MinCutResult(flow, side, arc_flows)
