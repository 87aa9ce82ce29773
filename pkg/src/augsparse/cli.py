"""Command-line front end.

Subcommands: cover, reduce, mincut, dsfm, cooc-sparsify, gen-cooc, verify, bench.
JSON reports go to stdout unless --out is given; malformed input files exit
with status 2 and a line-numbered message.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from . import formats
from .bench import eps_sweep, grid_instance
from .cooc import cooc_cut_value, gen_powerlaw, sparsify_cooc
from .dsfm import DSFMInstance, sparse_card
from .flownet import max_flow_min_cut
from .formats import ParseError
from .plcover import clique_cover, cover_to_ccb, cover_to_kcg, find_best_cover, gscb_cover
from .reduce import augmented_cut, build_sparsifier, build_st_network
from .splitting import SplittingSpec, materialize_gscb, materialize_scb


@dataclass
class RunReport:
    command: str
    parameters: dict = field(default_factory=dict)
    instance: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    result: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _emit(report: RunReport, out: str | None) -> None:
    formats.write(out, report.to_json() + "\n")


def _graph_stats(G) -> dict:
    hist = Counter(G.pieces)
    return {"nodes": G.net.node_count, "arcs": G.net.arc_count, "aux": G.aux_count,
            "arc_insertions": G.arc_insertions,
            "pieces_per_edge": {str(k): v for k, v in sorted(hist.items())}}


def cmd_cover(args) -> int:
    t0 = time.perf_counter()
    if args.gscb:
        w = materialize_gscb(args.gscb)
        cover = gscb_cover(w, args.eps)
        params = cover_to_kcg(cover, w.k)
        gadgets = [(a, b) for a, b in zip(params.a, params.b)]
        extra = {"z0": params.z0, "zk": params.zk, "k": w.k}
        family = "gscb"
    else:
        if args.k is None:
            raise SystemExit("cover needs --k (or --gscb values)")
        spec = SplittingSpec(args.family, args.param, 1.0,
                             tuple(args.penalties) if args.penalties else None)
        tangent = args.method == "tangent" or (args.method == "auto" and spec.family == "clique" and args.eps > 0)
        cover = clique_cover(args.k, args.eps) if tangent else find_best_cover(materialize_scb(spec, args.k), args.eps)
        params = cover_to_ccb(cover)
        gadgets = list(zip(params.a, params.b))
        extra = {"r": args.k // 2, "k": args.k, "method": "tangent" if tangent else "greedy"}
        family = spec.family
    ms = 1e3 * (time.perf_counter() - t0)
    if args.text:
        rows = [f"{g.slope!r} {g.intercept!r}" for g in cover.lines]
        rows += [f"{a!r} {b!r}" for a, b in gadgets]
        formats.write(args.text, "\n".join(rows) + "\n")
    report = RunReport("cover", {"eps": args.eps, "family": family}, {},
                       {"pieces": cover.pieces, "lines": [[g.slope, g.intercept] for g in cover.lines],
                        "gadgets": [[a, b] for a, b in gadgets], **extra},
                       {"cover_ms": ms})
    report.result = {"pieces": cover.pieces, "eps": args.eps, "family": family, **extra}
    _emit(report, args.out)
    return 0


def cmd_reduce(args) -> int:
    H = formats.read(args.input, formats.parse_hypergraph)
    if H.symmetric and not args.st:
        G = build_sparsifier(H, args.eps, args.threads)
    else:
        G = build_st_network(H, args.eps, args.threads)
    formats.write(args.graph, formats.format_graph(G.net))
    roles = args.roles or (args.graph + ".roles.json" if args.graph not in (None, "-") else None)
    if roles:
        formats.write(roles, json.dumps(G.roles_json()) + "\n")
    report = RunReport("reduce", {"eps": args.eps, "threads": args.threads, "input": args.input},
                       {"n": H.n, "R": len(H.edges), "volume": H.volume},
                       _graph_stats(G), {k: G.stats[k] for k in ("cover_ms", "build_ms")})
    report.result = {"graph": args.graph, "roles": roles, "symmetric": G.symmetric}
    if args.graph not in (None, "-"):
        _emit(report, args.out)
    return 0


def cmd_mincut(args) -> int:
    net = formats.read(args.input, formats.parse_graph)
    t0 = time.perf_counter()
    res = max_flow_min_cut(net)
    ms = 1e3 * (time.perf_counter() - t0)
    report = RunReport("mincut", {"input": args.input}, {"nodes": net.node_count, "arcs": net.arc_count},
                       {}, {"solve_ms": ms},
                       {"flow_value": res.flow_value, "source_side": sorted(res.source_side)})
    _emit(report, args.out)
    return 0


def cmd_dsfm(args) -> int:
    H = formats.read(args.input, formats.parse_hypergraph)
    inst = DSFMInstance.from_hypergraph(H)
    seeds = None
    if args.seed_in or args.seed_out:
        inside = formats.read(args.seed_in, formats.parse_node_set) if args.seed_in else []
        outside = formats.read(args.seed_out, formats.parse_node_set) if args.seed_out else []
        seeds = (inside, outside)
    sol = sparse_card(inst, args.eps, seeds, args.threads)
    report = RunReport("dsfm", {"eps": args.eps, "input": args.input, "threads": args.threads},
                       {"n": H.n, "R": len(H.edges), "volume": H.volume},
                       {"nodes": sol.nodes, "arcs": sol.arcs, "pieces": sol.pieces}, sol.timings)
    report.result = {"value": sol.value, "bound": sol.a_priori_bound, "eps": args.eps,
                     "nodes": sol.nodes, "arcs": sol.arcs, "solve_ms": sol.timings["solve_ms"],
                     "cut_value": sol.cut_value, "size": len(sol.S)}
    _emit(report, args.out)
    formats.write(args.members, "".join(f"{v}\n" for v in sorted(sol.S)))
    return 0


def cmd_cooc_sparsify(args) -> int:
    inst = formats.read(args.input, formats.parse_cooc)
    G = sparsify_cooc(inst, args.eps, args.threads)
    if args.graph:
        formats.write(args.graph, formats.format_graph(G.net))
    sizes = inst.sizes()
    report = RunReport("cooc-sparsify", {"eps": args.eps, "input": args.input, "threads": args.threads},
                       {"n": inst.n, "m": len(inst.sets), "volume": int(sizes.sum()),
                        "sum_sq_sizes": int((sizes ** 2).sum())},
                       _graph_stats(G), {k: G.stats[k] for k in ("cover_ms", "build_ms")})
    if args.check:
        rng = np.random.default_rng(args.seed)
        worst = 1.0
        ok = True
        for _ in range(args.check):
            S = np.flatnonzero(rng.random(inst.n) < 0.5)
            c, a = cooc_cut_value(inst, S), augmented_cut(G, S.tolist())
            ok &= c * (1 - 1e-9) <= a <= (1 + args.eps) * c * (1 + 1e-9) + 1e-12
            if c > 0:
                worst = max(worst, a / c)
        report.result = {"checked_cuts": args.check, "sandwich_ok": bool(ok), "max_ratio": worst}
    _emit(report, args.out)
    return 0


def cmd_gen_cooc(args) -> int:
    inst = gen_powerlaw(args.n, args.m, args.gamma, args.seed)
    formats.write(args.out, formats.format_cooc(inst))
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suite

    results = run_suite(args.seed, args.trials)
    ok = all(r["ok"] for r in results)
    formats.write(args.out, json.dumps({"ok": ok, "checks": results}, indent=2) + "\n")
    return 0 if ok else 1


def cmd_bench(args) -> int:
    inst = grid_instance(args.grid, args.block, args.seed)
    exact = sparse_card(inst, 0.0).value
    rows = eps_sweep(inst, args.eps_sweep, exact)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["eps", "pieces", "arcs", "ratio", "ms"])
    for r in rows:
        writer.writerow([r.eps, r.pieces, r.arcs, repr(r.ratio), f"{r.ms:.1f}"])
    formats.write(args.out, buf.getvalue())
    return 0


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="augsparse", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, eps=True, threads=True):
        if eps:
            sp.add_argument("--eps", type=float, default=0.0, help="approximation tolerance (default 0)")
        if threads:
            sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")

    sp = sub.add_parser("cover", help="cover one splitting function with lines and gadgets")
    common(sp, threads=False)
    sp.add_argument("--family", default="clique", choices=["clique", "linear", "dlinear", "sqrt", "power",
                                                            "aon", "custom"])
    sp.add_argument("--param", type=float, default=None, help="delta for dlinear, exponent for power")
    sp.add_argument("--penalties", type=float, nargs="+", help="w(0..r) for the custom family")
    sp.add_argument("--k", type=int, help="hyperedge size")
    sp.add_argument("--gscb", type=float, nargs="+", help="generalized penalties w(0..k)")
    sp.add_argument("--method", choices=["auto", "greedy", "tangent"], default="auto",
                    help="auto uses tangent lines for clique with eps > 0")
    sp.add_argument("--text", help="also write 'slope intercept' rows then 'a b' rows here")
    sp.set_defaults(fn=cmd_cover)

    sp = sub.add_parser("reduce", help="hypergraph file -> flow network file")
    common(sp)
    sp.add_argument("input")
    sp.add_argument("--graph", default="-", help="flow network output (default stdout)")
    sp.add_argument("--roles", help="node role JSON (default <graph>.roles.json)")
    sp.add_argument("--st", action="store_true", help="use the s-t construction even for symmetric input")
    sp.set_defaults(fn=cmd_reduce)

    sp = sub.add_parser("mincut", help="max flow / min cut of a flow network file")
    common(sp, eps=False, threads=False)
    sp.add_argument("input")
    sp.set_defaults(fn=cmd_mincut)

    sp = sub.add_parser("dsfm", help="minimize a sum of cardinality-based submodular terms")
    common(sp)
    sp.add_argument("input")
    sp.add_argument("--seed-in", help="file of node ids forced into the solution")
    sp.add_argument("--seed-out", help="file of node ids forced out of the solution")
    sp.add_argument("--members", default=None, help="write the solution set here, one id per line")
    sp.set_defaults(fn=cmd_dsfm)

    sp = sub.add_parser("cooc-sparsify", help="sparsify a co-occurrence set file")
    common(sp)
    sp.add_argument("input")
    sp.add_argument("--graph", help="write the flow network here")
    sp.add_argument("--check", type=int, default=0, help="verify the sandwich on this many random cuts")
    sp.set_defaults(fn=cmd_cooc_sparsify)

    sp = sub.add_parser("gen-cooc", help="generate a power-law co-occurrence instance")
    common(sp, eps=False, threads=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--gamma", type=float, default=2.5)
    sp.set_defaults(fn=cmd_gen_cooc)

    sp = sub.add_parser("verify", help="run the brute-force oracle suite on generated instances")
    common(sp, eps=False, threads=False)
    sp.add_argument("--trials", type=int, default=10)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("bench", help="eps sweep on the synthetic grid benchmark, CSV output")
    common(sp, eps=False, threads=False)
    sp.add_argument("--grid", type=int, default=50)
    sp.add_argument("--block", type=int, default=10)
    sp.add_argument("--eps-sweep", type=_floats, default=[1.0, 0.1, 0.01])
    sp.set_defaults(fn=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
