"""Random instance generators shared by tests, the verify command and benchmarks."""
from __future__ import annotations

import numpy as np

from .dsfm import DSFMInstance
from .reduce import HyperEdge, Hypergraph
from .splitting import GSCBFunction, SplittingSpec


def random_scb_values(rng: np.random.Generator, r: int, strict: bool = False) -> list[float]:
    """Nondecreasing concave w(0..r) with w(0)=0 from sorted random increments."""
    inc = np.sort(rng.random(r))[::-1]
    if strict:
        # distinct and bounded away from each other so concavity is strict
        inc = np.sort(rng.choice(np.arange(1, 10 * r + 1), size=r, replace=False))[::-1] / (10.0 * r)
    elif r and rng.random() < 0.3:
        inc[rng.integers(0, r):] = 0.0
    return [0.0] + np.cumsum(inc).tolist()


def random_gscb(rng: np.random.Generator, k: int) -> GSCBFunction:
    """Nonnegative concave w(0..k) with random endpoints."""
    inc = np.sort(rng.uniform(-1.0, 1.0, size=k))[::-1]
    w = rng.uniform(0.0, 1.0) + np.concatenate([[0.0], np.cumsum(inc)])
    w -= min(w.min(), 0.0)
    if rng.random() < 0.3:
        w -= w.min()
    return GSCBFunction(k, tuple(float(x) for x in w))


def random_spec(rng: np.random.Generator, k: int) -> SplittingSpec:
    weight = float(rng.choice([1.0, 0.5, 2.0, rng.uniform(0.1, 3.0)]))
    fam = rng.choice(["clique", "linear", "dlinear", "sqrt", "power", "aon", "custom"])
    if fam == "dlinear":
        return SplittingSpec("dlinear", float(rng.integers(1, 4)), weight)
    if fam == "power":
        return SplittingSpec("power", float(rng.uniform(0.1, 1.0)), weight)
    if fam == "custom":
        return SplittingSpec("custom", weight=weight, penalties=tuple(random_scb_values(rng, k // 2)))
    return SplittingSpec(str(fam), weight=weight)


def random_hypergraph(rng: np.random.Generator, n: int, edges: int, kmin: int = 2, kmax: int = 6) -> Hypergraph:
    out = []
    for _ in range(edges):
        k = int(rng.integers(kmin, min(kmax, n) + 1))
        members = rng.choice(n, size=k, replace=False)
        out.append(HyperEdge(members, spec=random_spec(rng, k)))
    return Hypergraph(n, out)


def random_dsfm(rng: np.random.Generator, n: int, components: int, kmax: int = 6) -> DSFMInstance:
    comps = []
    for _ in range(components):
        k = int(rng.integers(1, min(kmax, n) + 1))
        support = tuple(int(v) for v in rng.choice(n, size=k, replace=False))
        comps.append((support, random_gscb(rng, k)))
    return DSFMInstance(n, comps)
