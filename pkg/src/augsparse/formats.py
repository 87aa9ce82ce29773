"""Plain-text readers and writers for hypergraphs, flow networks and co-occurrence sets.

Blank lines and lines starting with ``#`` are ignored.  Malformed input
raises ParseError carrying the 1-based line number.
"""
from __future__ import annotations

import sys
from typing import TextIO

from .cooc import CoocInstance
from .flownet import FlowNetwork
from .reduce import HyperEdge, Hypergraph
from .splitting import materialize_gscb, parse_spec


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _rows(text: str):
    for num, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            yield num, s


def _header(rows, names: tuple[str, ...]):
    try:
        num, line = next(rows)
    except StopIteration:
        raise ParseError("empty file", 1) from None
    toks = line.split()
    if len(toks) != len(names):
        raise ParseError(f"header must be '{' '.join(names)}'", num)
    try:
        return num, [int(t) for t in toks]
    except ValueError:
        raise ParseError(f"header must be '{' '.join(names)}' with integers", num) from None


def _body(rows, count: int, header_line: int, what: str):
    got = list(rows)
    if len(got) != count:
        last = got[-1][0] if got else header_line
        raise ParseError(f"expected {count} {what}, found {len(got)}", last)
    return got


def _check_members(members: list[int], n: int, num: int) -> None:
    if len(set(members)) != len(members):
        raise ParseError("a node is listed twice", num)
    bad = [v for v in members if not 0 <= v < n]
    if bad:
        raise ParseError(f"node {bad[0]} outside [0, {n})", num)


def parse_hypergraph(text: str) -> Hypergraph:
    rows = _rows(text)
    hnum, (n, R) = _header(rows, ("n", "R"))
    edges = []
    for num, line in _body(rows, R, hnum, "hyperedges"):
        if ":" not in line:
            raise ParseError("hyperedge line needs '<spec> : <members>'", num)
        left, right = line.split(":", 1)
        toks = left.split()
        try:
            members = [int(t) for t in right.split()]
            _check_members(members, n, num)
            if not members:
                raise ParseError("hyperedge has no members", num)
            if toks and toks[0] == "gscb":
                e = HyperEdge(members, gscb=materialize_gscb([float(t) for t in toks[1:]]))
            else:
                e = HyperEdge(members, spec=parse_spec(toks))
                e.penalty(0)  # surfaces custom-length mismatches here
            edges.append(e)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), num) from None
    try:
        return Hypergraph(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_hypergraph(H: Hypergraph) -> str:
    out = [f"{H.n} {len(H.edges)}"]
    for e in H.edges:
        left = str(e.spec) if e.spec is not None else "gscb " + " ".join(repr(x) for x in e.gscb.w)
        out.append(f"{left} : {' '.join(str(v) for v in e.members)}")
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> FlowNetwork:
    rows = _rows(text)
    hnum, (N, M, s, t) = _header(rows, ("N", "M", "source", "sink"))
    arcs = []
    for num, line in _body(rows, M, hnum, "arcs"):
        toks = line.split()
        if len(toks) != 3:
            raise ParseError("arc line must be 'tail head capacity'", num)
        try:
            u, v, c = int(toks[0]), int(toks[1]), float(toks[2])
        except ValueError:
            raise ParseError("arc line must be 'tail head capacity'", num) from None
        if not (0 <= u < N and 0 <= v < N):
            raise ParseError(f"arc {u}->{v} references a node outside [0, {N})", num)
        if c < 0:
            raise ParseError(f"negative capacity {c}", num)
        arcs.append((u, v, c))
    try:
        return FlowNetwork.from_arcs(N, arcs, s, t)
    except ValueError as exc:
        raise ParseError(str(exc), hnum) from None


def format_graph(net: FlowNetwork) -> str:
    out = [f"{net.node_count} {net.arc_count} {net.source} {net.sink}"]
    out.extend(f"{u} {v} {c!r}" for u, v, c in net.arcs())
    return "\n".join(out) + "\n"


def parse_cooc(text: str) -> CoocInstance:
    rows = _rows(text)
    hnum, (n, m) = _header(rows, ("n", "m"))
    sets = []
    for num, line in _body(rows, m, hnum, "sets"):
        toks = line.split()
        try:
            w, k = float(toks[0]), int(toks[1])
            members = [int(t) for t in toks[2:]]
        except (ValueError, IndexError):
            raise ParseError("set line must be 'w_c k v1 ... vk'", num) from None
        if len(members) != k:
            raise ParseError(f"declared {k} members but listed {len(members)}", num)
        _check_members(members, n, num)
        if not w > 0:
            raise ParseError(f"set weight must be positive, got {w}", num)
        sets.append((members, w))
    try:
        return CoocInstance(n, sets)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_cooc(inst: CoocInstance) -> str:
    out = [f"{inst.n} {len(inst.sets)}"]
    out.extend(f"{w!r} {len(c)} {' '.join(str(v) for v in c)}".rstrip() for c, w in inst.sets)
    return "\n".join(out) + "\n"


def parse_node_set(text: str) -> list[int]:
    out = []
    for num, line in _rows(text):
        for tok in line.split():
            try:
                out.append(int(tok))
            except ValueError:
                raise ParseError(f"node id expected, got {tok!r}", num) from None
    return out


def read(path: str, parser):
    with open(path) as fh:
        return parser(fh.read())


def write(path: str | None, text: str, stream: TextIO | None = None) -> None:
    if path is None or path == "-":
        (stream or sys.stdout).write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)
