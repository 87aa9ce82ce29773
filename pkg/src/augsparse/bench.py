"""Synthetic segmentation-style benchmark on a W x W pixel grid.

Three kinds of terms, as in higher-order segmentation energies:
unary labelling costs on single pixels, a smoothness term on every pair of
4-neighbours, and a region term |A| |e minus A| on each square block that
rewards labelling whole blocks consistently.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .dsfm import DSFMInstance, a_posteriori_ratio, sparse_card
from .oracle import brute_min_f
from .splitting import GSCBFunction


def grid_instance(W: int, block: int = 10, seed: int = 42, pairwise: float = 0.5,
                  region: float = 0.002) -> DSFMInstance:
    rng = np.random.default_rng(seed)
    comps = []
    # smooth foreground blob plus noise so the optimum is neither empty nor full
    yy, xx = np.mgrid[0:W, 0:W]
    blob = np.hypot(yy - W / 2, xx - W / 2) < W / 3
    u = np.where(blob, 1.0, -1.0) + rng.normal(0.0, 1.2, size=(W, W))
    for r in range(W):
        for c in range(W):
            # w(0): cost of leaving the pixel out, w(1): cost of taking it
            x = float(u[r, c])
            comps.append(((r * W + c,), GSCBFunction(1, (max(x, 0.0), max(-x, 0.0)))))
    edge = GSCBFunction(2, (0.0, pairwise, 0.0))
    for r in range(W):
        for c in range(W):
            if c + 1 < W:
                comps.append(((r * W + c, r * W + c + 1), edge))
            if r + 1 < W:
                comps.append(((r * W + c, (r + 1) * W + c), edge))
    for r0 in range(0, W - block + 1, block):
        for c0 in range(0, W - block + 1, block):
            members = tuple((r0 + i) * W + c0 + j for i in range(block) for j in range(block))
            k = len(members)
            comps.append((members, GSCBFunction(k, tuple(region * i * (k - i) for i in range(k + 1)))))
    return DSFMInstance(W * W, comps)


@dataclass
class BenchRow:
    eps: float
    pieces: int
    arcs: int
    value: float
    ratio: float
    bound: float
    ms: float


def eps_sweep(inst: DSFMInstance, eps_values, exact_value: float | None = None) -> list[BenchRow]:
    """Solve at each eps; ratios are against the exact (eps=0) optimum."""
    if exact_value is None:
        exact_value = brute_min_f(inst)[1] if inst.n <= 16 else sparse_card(inst, 0.0).value
    rows = []
    for eps in eps_values:
        t0 = time.perf_counter()
        sol = sparse_card(inst, eps)
        ms = 1e3 * (time.perf_counter() - t0)
        rows.append(BenchRow(eps, sol.pieces, sol.arcs, sol.value,
                             a_posteriori_ratio(inst, sol, exact_value), 1 + eps, ms))
    return rows
