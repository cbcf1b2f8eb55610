import itertools
import math

import pytest
from fixtures import C4, K3, L_S2, LOOP_PAIR, O2, S2, SR2
from hypothesis import given, settings
from hypothesis import strategies as st

from xmgraph.errors import NotSymmetricTheory
from xmgraph.graphcore import check_morphism, hom_count, iter_homs, make_graph
from xmgraph.bridge import (
    HyperMorphism,
    bipartite_rep,
    counit,
    dualize,
    fixed_point_check,
    from_bipartite,
    hyper_hom_count,
    hyper_homs,
    hyper_is_injective,
    hyper_iso,
    hyper_product,
    hypergraph,
    is_hyper_morphism,
    kneser_hypergraph,
    line_graph,
    nerve,
    nerve_map,
    realization,
    realization_map,
    uniform_check,
)


def brute_hyper_homs(h, k):
    out = []
    for fv in itertools.product(range(k.nv), repeat=h.nv):
        for fe in itertools.product(range(k.ne), repeat=h.ne):
            if is_hyper_morphism(HyperMorphism(h, k, fv, fe)):
                out.append((fv, fe))
    return out


def surjections(n: int, k: int) -> int:
    return sum((-1) ** i * math.comb(k, i) * (k - i) ** n for i in range(k + 1))


def edge_lists(nv: int):
    return st.lists(
        st.lists(st.integers(0, nv - 1), max_size=3).map(sorted), min_size=0, max_size=3
    )


small_hypergraphs = st.integers(1, 3).flatmap(
    lambda n: edge_lists(n).map(lambda es: hypergraph(n, es))
)


def test_hypergraph_construction():
    h = hypergraph(["a", "b"], [[0, 1], [1]], names=["x", "y"])
    assert h.edges == ("x", "y") and h.edge_sizes() == [2, 1]
    with pytest.raises(ValueError):
        hypergraph(2, [[0, 5]])
    with pytest.raises(ValueError):
        hypergraph(2, [[0]], names=["x", "y"])


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs, small_hypergraphs)
def test_hyper_homs_match_brute_force(h, k):
    found = sorted((f.fv, f.fe) for f in hyper_homs(h, k))
    assert found == sorted(brute_hyper_homs(h, k))
    assert hyper_hom_count(h, k) == len(found)


@settings(max_examples=40, deadline=None)
@given(small_hypergraphs, small_hypergraphs, small_hypergraphs)
def test_hyper_product_is_a_product(h, k, x):
    prod, p1, p2 = hyper_product(h, k)
    assert is_hyper_morphism(p1) and is_hyper_morphism(p2)
    assert hyper_hom_count(x, prod) == hyper_hom_count(x, h) * hyper_hom_count(x, k)


def test_nerve_names_and_counts():
    h = hypergraph(2, [[0, 1]])
    n = nerve(h, 2)
    assert n.anames == ("e0:0,1", "e0:1,0")
    assert n.vnames == ("0", "1")
    big = hypergraph(4, [[0, 1, 2], [3], [], [0, 1, 2, 3], [1, 2]])
    for xsize in (1, 2, 3):
        expected = sum(surjections(xsize, len(s)) for s in big.phi if len(s) <= xsize)
        assert nerve(big, xsize).na == expected


def test_empty_edges_vanish_from_the_nerve():
    h = hypergraph(3, [[0, 1], []])
    r, _ = realization(nerve(h, 2))
    assert r.ne == 1
    assert not fixed_point_check(h, 2)


def test_realization_needs_a_symmetric_theory():
    realization(K3)
    with pytest.raises(NotSymmetricTheory):
        realization(make_graph(O2, 1, [[0, 0]], [[0]]))
    with pytest.raises(NotSymmetricTheory):
        realization(make_graph(SR2, 1, [[0, 0]] * 2, [[0] * 4, [0, 1, 1, 0]], loop=[0]))


def test_realization_of_a_symmetric_graph():
    r, edge_of = realization(K3)
    assert r.ne == 3
    assert sorted(sorted(s) for s in r.phi) == [[0, 1], [0, 2], [1, 2]]
    assert len(edge_of) == K3.na


def test_uniform_hypergraphs_are_fixed_points():
    h = hypergraph(4, [[0, 1], [1, 2], [2, 3], [0, 3]])
    assert uniform_check(h, 2) and fixed_point_check(h, 2)
    assert counit(h, 2).is_iso()
    # edges that are too big are dropped by the nerve
    assert not fixed_point_check(hypergraph(3, [[0, 1, 2]]), 2)


def test_singleton_edges_are_also_fixed():
    # a singleton edge has exactly one arc orbit in every nerve, so the
    # counit is invertible even though the hypergraph is not uniform
    h = hypergraph(3, [[0, 1, 2], [0, 1, 2], [1]])
    assert fixed_point_check(h, 3)
    assert not uniform_check(h, 3)


@settings(max_examples=40, deadline=None)
@given(small_hypergraphs, small_hypergraphs, st.integers(1, 3))
def test_realization_nerve_adjunction(h, k, xsize):
    g = nerve(k, xsize)
    rg, _ = realization(g)
    assert hyper_hom_count(rg, h) == hom_count(g, nerve(h, xsize))


@pytest.mark.parametrize("g", [K3, L_S2, LOOP_PAIR, C4])
def test_realization_nerve_adjunction_on_graphs(g):
    rg, _ = realization(g)
    for h in (hypergraph(1, [[0]]), hypergraph(2, [[0, 1], [0]]), hypergraph(3, [[0, 1], [1, 2], [0, 2]])):
        assert hyper_hom_count(rg, h) == hom_count(g, nerve(h, 2))


def test_nerve_and_realization_maps():
    h = hypergraph(3, [[0, 1], [1, 2]])
    k = hypergraph(2, [[0, 1]])
    for f in hyper_homs(h, k):
        nf = nerve_map(f, 2)
        assert check_morphism(nf)
        rf = realization_map(nf)
        assert is_hyper_morphism(rf)
    for f in iter_homs(nerve(h, 2), nerve(k, 2)):
        assert is_hyper_morphism(realization_map(f))


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs)
def test_dualize_is_an_involution(h):
    assert hyper_iso(dualize(dualize(h)), h) is not None
    b = bipartite_rep(h)
    assert from_bipartite(b) == h


def test_dual_swaps_counts():
    h = hypergraph(3, [[0, 1, 2], [0]])
    d = dualize(h)
    assert (d.nv, d.ne) == (2, 3)
    assert sorted(d.edge_sizes()) == [1, 1, 2]


def test_hyper_injectivity():
    assert not hyper_is_injective(hypergraph(0, []))
    full = hypergraph(2, [[], [0], [1], [0, 1]])
    assert hyper_is_injective(full)
    # without the empty edge there is nowhere to send an empty edge
    assert not hyper_is_injective(hypergraph(2, [[0], [1], [0, 1]]))


def test_line_graphs():
    path = hypergraph(3, [[0, 1], [1, 2]])
    lg = line_graph(path, 2)
    assert (lg.nv, lg.na) == (2, 4)
    apart = hypergraph(4, [[0, 1], [2, 3]])
    lg = line_graph(apart, 2)
    assert (lg.nv, lg.na) == (2, 2)
    assert lg.theory == S2


def test_kneser_of_pairs_in_four_points_is_a_matching():
    pairs = list(itertools.combinations(range(4), 2))
    k = kneser_hypergraph(hypergraph(4, [list(p) for p in pairs]), 2, trim=True)
    assert sorted(sorted(s) for s in k.phi) == [[0, 5], [1, 4], [2, 3]]


def test_kneser_of_pairs_in_five_points_is_petersen():
    pairs = list(itertools.combinations(range(5), 2))
    k = kneser_hypergraph(hypergraph(5, [list(p) for p in pairs]), 2, trim=True)
    expected = {
        frozenset({i, j})
        for i, j in itertools.combinations(range(10), 2)
        if not set(pairs[i]) & set(pairs[j])
    }
    assert set(k.phi) == expected
    assert k.ne == 15
