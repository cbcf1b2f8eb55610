import random

import pytest
from fixtures import (
    K2,
    K3,
    L_S2,
    O2,
    P3,
    R2,
    RANDOM_THEORIES,
    S2,
    S3,
    SR2,
    catalogue,
    random_graph,
)
from hypothesis import given, settings
from hypothesis import strategies as st

from xmgraph.errors import ReflexiveUnsupported, SizeBound, TheoryMismatch
from xmgraph.graphcore import (
    check_morphism,
    compose,
    hom_count,
    hom_enumerate,
    is_simple,
    iso_check,
    iter_homs,
    make_graph,
    representable,
    sub_enumerate,
    terminal,
)
from xmgraph.toposops import (
    classify,
    coequalizer,
    colimit,
    complete_graph,
    coproduct,
    equalizer,
    exponential,
    limit,
    omega,
    product,
    pullback,
    pullback_top,
    pushout,
    quotient,
    sheafify,
    simplify,
)

same_theory_pairs = st.builds(
    lambda name, s1, s2, s3: tuple(
        random_graph(RANDOM_THEORIES[name], random.Random(s), pieces=2) for s in (s1, s2, s3)
    ),
    st.sampled_from(["o2", "s2", "r2"]),
    st.integers(0, 9999),
    st.integers(0, 9999),
    st.integers(0, 9999),
)


@settings(max_examples=40, deadline=None)
@given(same_theory_pairs)
def test_product_and_coproduct_universal_counts(triple):
    g, h, k = triple
    p = product([g, h])
    for leg in p.legs:
        assert check_morphism(leg)
    assert hom_count(k, p.apex) == hom_count(k, g) * hom_count(k, h)
    c = coproduct([g, h])
    assert hom_count(c.apex, k) == hom_count(g, k) * hom_count(h, k)


def test_empty_products_and_coproducts():
    with pytest.raises(TheoryMismatch):
        coproduct([])
    assert coproduct([], theory=S2).apex.nv == 0
    with pytest.raises(TheoryMismatch):
        product([K2, representable(O2, "A")])


def _parallel_pairs(src, dst, limit_=6):
    homs = hom_enumerate(src, dst)[:limit_]
    return [(f, g) for f in homs for g in homs]


@pytest.mark.parametrize("src, dst", [(representable(S2, "A"), K3), (P3, K3), (K2, L_S2)])
def test_equalizer_and_coequalizer_counts(src, dst):
    probe = [K2, P3, representable(S2, "V"), terminal(S2), L_S2]
    for f, g in _parallel_pairs(src, dst):
        eq = equalizer(f, g)
        (e,) = eq.legs
        assert compose(e, f).key() == compose(e, g).key()
        for k in probe:
            expected = sum(
                1 for u in iter_homs(k, src) if compose(u, f).key() == compose(u, g).key()
            )
            assert hom_count(k, eq.apex) == expected
        co = coequalizer(f, g)
        (q,) = co.legs
        assert compose(f, q).key() == compose(g, q).key()
        for k in probe:
            expected = sum(
                1 for u in iter_homs(dst, k) if compose(f, u).key() == compose(g, u).key()
            )
            assert hom_count(co.apex, k) == expected


def test_pullback_and_pushout_counts():
    a = representable(S2, "A")
    f = hom_enumerate(a, K3)[0]
    g = hom_enumerate(P3, K3)[0]
    pb = pullback(f, g)
    p1, p2 = pb.legs
    assert compose(p1, f).key() == compose(p2, g).key()
    for k in (terminal(S2), a, K2):
        expected = sum(
            1
            for u in iter_homs(k, a)
            for w in iter_homs(k, P3)
            if compose(u, f).key() == compose(w, g).key()
        )
        assert hom_count(k, pb.apex) == expected
    # glue two copies of A along a vertex
    v = representable(S2, "V")
    i = hom_enumerate(v, a)[0]
    po = pushout(i, i)
    assert (po.apex.nv, po.apex.na) == (3, 4)
    for k in (K3, L_S2):
        expected = sum(
            1
            for u in iter_homs(a, k)
            for w in iter_homs(a, k)
            if compose(i, u).key() == compose(i, w).key()
        )
        assert hom_count(po.apex, k) == expected


def test_limit_and_colimit_dispatch():
    assert limit("product", [K2, K2]).apex.na == 4
    assert colimit("coproduct", [K2, K2]).apex.nv == 4
    with pytest.raises(ValueError):
        limit("cone")
    with pytest.raises(ValueError):
        colimit("cocone")


def test_quotient_is_an_epimorphism():
    q, m = quotient(P3, [(0, 2)])
    assert check_morphism(m) and m.is_epi()
    # merging the ends of P3 leaves a doubled edge until simplified
    assert (q.nv, q.na) == (2, 4)
    assert iso_check(simplify(q)[0], K2) is not None


@pytest.mark.parametrize(
    "theory, arcs", [(O2, 5), (S2, 5), (R2, 10), (S3, 9), (SR2, 5)]
)
def test_omega_sizes(theory, arcs):
    om = omega(theory)
    assert om.graph.nv == 2 and om.graph.na == arcs
    assert om.graph.vnames == ("bot", "top")
    assert check_morphism(om.top)


def test_omega_arc_names_encode_masks():
    names = omega(S2).graph.anames
    assert names == ("V00|A00", "V01|A00", "V10|A00", "V11|A00", "V11|A11")


@pytest.mark.parametrize("name, g", catalogue())
def test_classify_round_trip(name, g):
    om = omega(g.theory)
    for s in sub_enumerate(g):
        chi = classify(s, om)
        assert check_morphism(chi)
        assert pullback_top(chi, om) == s


def test_exponential_frozen_values():
    e = exponential(L_S2, representable(S2, "A"))
    assert (e.graph.nv, e.graph.na) == (1, 4)
    assert check_morphism(e.ev)
    er = exponential(representable(SR2, "A"), terminal(SR2))
    assert iso_check(er.graph, representable(SR2, "A")) is not None


@pytest.mark.parametrize("name, g", [(n, g) for n, g in catalogue() if g.na <= 4])
def test_exponential_unit_laws(name, g):
    one = terminal(g.theory)
    # G^1 = G, 1^G = 1, and the points of G^A are the arcs of G
    assert iso_check(exponential(g, one).graph, g) is not None
    assert iso_check(exponential(one, g).graph, one) is not None
    assert hom_count(one, exponential(g, representable(g.theory, "A")).graph) == g.na


def test_exponential_components_reflect_vertex_functions():
    e = exponential(L_S2, representable(S2, "A"))
    for arc in range(e.graph.na):
        fx, garc = e.arc_components(arc)
        assert len(fx) == 2 and len(garc) == 2


def test_exponential_size_cap():
    with pytest.raises(SizeBound):
        exponential(K3, K3, max_cells=2)


def test_simplify_collapses_parallel_arcs():
    double = make_graph(S2, 2, [[0, 1], [1, 0], [0, 1], [1, 0]], [[0, 1], [1, 0], [2, 3], [3, 2]])
    q, unit = simplify(double)
    assert is_simple(q) and (q.nv, q.na) == (2, 2)
    assert unit.is_epi()
    assert iso_check(q, K2) is not None


def test_sheafify_is_the_complete_graph():
    k, unit = sheafify(P3)
    assert (k.nv, k.na) == (3, 9)
    assert check_morphism(unit) and unit.is_mono()
    k2, unit2 = sheafify(k)
    assert unit2.is_iso()
    with pytest.raises(ReflexiveUnsupported):
        sheafify(terminal(SR2))


def test_complete_graph_cap_and_reflexive_loops():
    with pytest.raises(SizeBound):
        complete_graph(S3, 5, max_cells=100)
    kr = complete_graph(SR2, 2)
    assert kr.loop == (0, 3)
    assert kr.anames[1] == "(v0,v1)"
