import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from augsparse.cooc import sparsify_complete
from augsparse.instances import random_hypergraph
from augsparse.oracle import brute_cut_sandwich
from augsparse.plcover import clique_cover
from augsparse.reduce import (HyperEdge, Hypergraph, augmented_cut, build_sparsifier, build_st_network,
                              forced_cut_value, hypergraph_cut)
from augsparse.splitting import GSCBFunction, SplittingSpec, ValidationError


def clique4():
    return Hypergraph(4, [HyperEdge([0, 1, 2, 3], spec=SplittingSpec("clique"))])


def test_clique_hyperedge_exact():
    G = build_sparsifier(clique4(), 0.0)
    # min(3x, 4) reproduces the 4-clique exactly: one CB-gadget
    assert G.aux_count == 2 and G.net.arc_count == 9
    assert G.net.node_count == 4 + 2 + 2
    assert augmented_cut(G, set()) == 0
    assert augmented_cut(G, {0}) == 3
    assert augmented_cut(G, {0, 1}) == 4


def test_linear_is_one_gadget():
    for k in (2, 5, 11):
        for eps in (0.0, 0.3):
            H = Hypergraph(k, [HyperEdge(range(k), spec=SplittingSpec("linear"))])
            G = build_sparsifier(H, eps)
            assert G.pieces == [1] and G.aux_count == 2 and G.net.arc_count == 2 * k + 1


def test_complete_graph_size():
    J = clique_cover(1000, 0.1).pieces
    G = sparsify_complete(1000, 0.1)
    assert J <= 40
    assert G.net.arc_count == (2 * 1000 + 1) * J and G.aux_count == 2 * J


def test_node_numbering_and_roles():
    H = Hypergraph(5, [HyperEdge([0, 1, 2], spec=SplittingSpec("linear")),
                       HyperEdge([4], spec=SplittingSpec("clique")),
                       HyperEdge([2, 3, 4], spec=SplittingSpec("aon"))])
    G = build_sparsifier(H, 0.0)
    assert [G.role(v) for v in range(5, 9)] == [("auxiliary", 0, 0), ("auxiliary", 0, 1),
                                               ("auxiliary", 2, 0), ("auxiliary", 2, 1)]
    assert G.role(G.net.source) == ("source",) and G.role(2) == ("original", 2)
    assert G.roles_json()["auxiliary"][2] == {"id": 7, "hyperedge": 2, "local": 0}


def test_st_network_examples():
    H = Hypergraph(3, [HyperEdge([0, 1, 2], gscb=GSCBFunction(3, (2.0, 3.0, 3.0, 2.0)))])
    G = build_st_network(H, 0.0)
    assert forced_cut_value(G, set()) == pytest.approx(2, rel=1e-12)
    H = Hypergraph(2, [HyperEdge([1], gscb=GSCBFunction(1, (4.0, 0.0)))])
    G = build_st_network(H, 0.3)
    assert list(G.net.arcs()) == [(G.net.source, 1, 4.0)]
    H = Hypergraph(3, [HyperEdge([0, 1], gscb=GSCBFunction(2, (2.0, 2.0, 2.0))),
                       HyperEdge([1, 2], gscb=GSCBFunction(2, (4.0, 4.0, 4.0)))])
    G = build_st_network(H, 0.0)
    src = {v: c for u, v, c in G.net.arcs() if u == G.net.source}
    assert src == {0: 1.0, 1: 3.0, 2: 2.0}
    H = Hypergraph(2, [HyperEdge([0], gscb=GSCBFunction(1, (1.0, 0.0))),
                       HyperEdge([1], gscb=GSCBFunction(1, (2.5, 0.0)))])
    assert augmented_cut(build_st_network(H, 0.0), {0, 1}) == 0


def test_errors():
    with pytest.raises(ValueError):
        Hypergraph(3, [HyperEdge([0, 3], spec=SplittingSpec("clique"))])
    with pytest.raises(ValueError):
        Hypergraph(3, [HyperEdge([0, 0], spec=SplittingSpec("clique"))])
    with pytest.raises(ValidationError):
        build_sparsifier(Hypergraph(4, [HyperEdge(range(4), spec=SplittingSpec("custom", penalties=(0, 2, 5)))]), 0.1)
    G = build_sparsifier(clique4(), 0.1)
    with pytest.raises(ValueError):
        augmented_cut(G, {G.net.source})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0.0, 0.1, 0.5, 1.0]))
def test_sandwich_and_exactness(seed, eps):
    rng = np.random.default_rng(seed)
    H = random_hypergraph(rng, int(rng.integers(2, 11)), int(rng.integers(1, 7)))
    G = build_sparsifier(H, eps)
    rep = brute_cut_sandwich(H, G, eps)
    assert rep.ok, rep.violation
    if eps == 0:
        assert rep.max_ratio == pytest.approx(1.0, rel=1e-9)
    # size ledger
    J = G.pieces
    assert G.aux_count == 2 * sum(J)
    assert G.arc_insertions == sum(j * (2 * len(m) + 1) for j, (m, _) in zip(J, G.gadgets) if len(m) >= 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0.0, 0.5]))
def test_analytic_matches_flow(seed, eps):
    rng = np.random.default_rng(seed)
    H = random_hypergraph(rng, int(rng.integers(2, 8)), int(rng.integers(1, 4)), kmax=5)
    for G in (build_sparsifier(H, eps), build_st_network(H, eps)):
        if G.aux_count > 30:
            continue
        for _ in range(4):
            S = set(np.flatnonzero(rng.random(H.n) < 0.5).tolist())
            assert forced_cut_value(G, S) == pytest.approx(augmented_cut(G, S), rel=1e-9, abs=1e-9)
        assert augmented_cut(G, set()) >= 0


def test_weight_scaling_and_cache():
    H = Hypergraph(6, [HyperEdge(range(6), spec=SplittingSpec("sqrt", weight=3.0)),
                       HyperEdge(range(6), spec=SplittingSpec("sqrt"))])
    cache = {}
    G = build_sparsifier(H, 0.1, cache=cache)
    assert len(cache) == 1
    a3, a1 = G.gadgets[0][1].a, G.gadgets[1][1].a
    assert a3 == pytest.approx([3 * x for x in a1])
    for S in ({0}, {0, 1, 2}, {1, 5}):
        assert augmented_cut(G, S) >= hypergraph_cut(H, S) * (1 - 1e-12)


def test_threads_do_not_change_output():
    rng = np.random.default_rng(3)
    H = random_hypergraph(rng, 30, 40, kmax=12)
    a, b = build_sparsifier(H, 0.2), build_sparsifier(H, 0.2, threads=4)
    assert a.net == b.net
    a, b = build_st_network(H, 0.2), build_st_network(H, 0.2, threads=4)
    assert a.net == b.net
