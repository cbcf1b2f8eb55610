"""The twelve acceptance criteria, one test each.

Every test records a PASS or FAIL line; ``conftest.py`` prints them after
the run, and ``python tests/test_acceptance.py`` runs them on its own.
"""

from __future__ import annotations

import functools
import itertools
import random
import sys
from collections.abc import Callable
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from fixtures import (  # noqa: E402
    C4,
    K2,
    K3,
    L_S2,
    L_SR2,
    LOOP_O2,
    LOOP_PAIR,
    O2,
    P3,
    PATH_O2,
    R2,
    RANDOM_THEORIES,
    S2,
    S3,
    SR2,
    catalogue,
    complete,
    random_graph,
    sym,
)

from xmgraph.algebra import regular_action  # noqa: E402
from xmgraph.bridge import (  # noqa: E402
    fixed_point_check,
    hypergraph,
    nerve,
    realization,
    uniform_check,
)
from xmgraph.constructions import (  # noqa: E402
    chromatic,
    cover_generators,
    cover_map,
    graph_product,
    injective_hull,
    is_injective,
    is_projective,
    projective_cover,
)
from xmgraph.functors import (  # noqa: E402
    action_inclusion,
    coextension,
    coextension_map,
    coextension_unit,
    extend_by_identity,
    extension,
    extension_counit,
    extension_map,
    iota,
    orbit_stabilizer,
    point_theory,
    reflexivization,
    restriction,
    restriction_map,
)
from xmgraph.graphcore import (  # noqa: E402
    GraphMorphism,
    XMGraph,
    arc_orbits,
    compose,
    extensions,
    hom_count,
    hom_enumerate,
    identity,
    image,
    iso_check,
    is_simple,
    iter_homs,
    make_graph,
    representable,
    sub_enumerate,
    terminal,
)
from xmgraph.logic import neg, subtract  # noqa: E402
from xmgraph.toposops import (  # noqa: E402
    classify,
    exponential,
    omega,
    product2,
    pullback_top,
    simplify,
)

RESULTS: dict[int, tuple[str, bool]] = {}


def criterion(n: int, title: str) -> Callable[[Callable[[], None]], Callable[[], None]]:
    def wrap(fn: Callable[[], None]) -> Callable[[], None]:
        @functools.wraps(fn)
        def run() -> None:
            ok = False
            try:
                fn()
                ok = True
            finally:
                RESULTS[n] = (title, ok)
                print(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title}")

        return run

    return wrap


def report_lines() -> list[str]:
    return [
        f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title}"
        for n, (title, ok) in sorted(RESULTS.items())
    ]


# ---------------------------------------------------------------------------
# 1 and 2: exponential fixtures


@criterion(1, "exponential L^A over s(2): 1 vertex, 4 arcs, 2 fixed loops, 1 unfixed pair")
def test_criterion_01_exponential_nonreflexive():
    g = exponential(L_S2, representable(S2, "A")).graph
    fixed = [a for a in range(g.na) if g.is_fixed(a)]
    unfixed = [a for a in range(g.na) if not g.is_fixed(a)]
    assert (g.nv, g.na) == (1, 4)
    assert len(fixed) == 2 and all(g.is_loop(a) for a in fixed)
    assert len(unfixed) == 2
    assert len({g.orbit(a) for a in unfixed}) == 1


@criterion(2, "exponential L^A over sr(2): 2 vertices, 64 arcs split 16/8 pairs/16 pairs, 2 loops")
def test_criterion_02_exponential_reflexive():
    g = exponential(L_SR2, representable(SR2, "A")).graph
    fixed = {a for a in range(g.na) if g.is_fixed(a)}
    loops = {a for a in range(g.na) if g.is_loop(a)}
    unfixed_loops = loops - fixed
    nonloops = set(range(g.na)) - loops
    assert (g.nv, g.na) == (2, 64)
    assert len(fixed) == 16 and fixed <= loops
    assert len(unfixed_loops) == 16
    assert len({g.orbit(a) - fixed for a in unfixed_loops}) == 8
    assert len(nonloops) == 32
    assert len({g.orbit(a) - loops for a in nonloops}) == 16
    assert len(g.distinguished()) == 2 and g.distinguished() <= fixed


# ---------------------------------------------------------------------------
# 3: exponential adjunction


def _triple_sizes(name: str) -> int:
    # S_3 on three points has a six-arc representable; one piece per graph
    # keeps G^H within desk scale
    return 1 if name == "s3" else 2


@criterion(3, "hom(F x H, G) = hom(F, G^H) on 200 random triples over o(2), s(2), S_3, r(2)")
def test_criterion_03_exponential_adjunction():
    triples = 0
    for seed, (name, t) in enumerate(RANDOM_THEORIES.items()):
        rng = random.Random(seed)
        for _ in range(50):
            f, h, g = (random_graph(t, rng, pieces=_triple_sizes(name)) for _ in range(3))
            e = exponential(g, h)
            fh = product2(f, h).apex
            homs = hom_enumerate(fh, g)
            curried = [e.transpose(k, f) for k in homs]
            assert len({c.key() for c in curried}) == len(homs)
            assert hom_count(f, e.graph) == len(homs)
            for k, c in zip(homs, curried):
                assert e.uncurry(c, fh).key() == k.key()
            triples += 1
    assert triples >= 200


# ---------------------------------------------------------------------------
# 4: subobject classifier


@criterion(4, "|Omega(A)| = 5 over s(2); classify and pullback of top are inverse")
def test_criterion_04_subobject_classifier():
    assert omega(S2).graph.na == 5
    checked = 0
    for _, g in catalogue():
        subs = sub_enumerate(g)
        if len(subs) > 200:
            continue
        om = omega(g.theory)
        for s in subs:
            assert pullback_top(classify(s, om), om) == s
        chis = hom_enumerate(g, om.graph)
        assert len(chis) == len(subs)
        for chi in chis:
            assert classify(pullback_top(chi, om), om).key() == chi.key()
        checked += 1
    assert checked == len(catalogue())


# ---------------------------------------------------------------------------
# 5: adjoint triples


def _bare(nv: int, na: int) -> XMGraph:
    return make_graph(point_theory(), nv, [[] for _ in range(na)], [[a] for a in range(na)])


def _over(theory) -> list[XMGraph]:
    return [g for _, g in catalogue() if g.theory == theory]


def _triangles(j, g: XMGraph, h: XMGraph) -> None:
    ext = extension(j, g)
    co = coextension(j, g)
    rh = restriction(j, h)
    assert hom_count(ext.graph, h) == hom_count(g, rh)
    assert hom_count(rh, g) == hom_count(h, co.graph)
    # extension -| restriction
    erh = extension(j, rh)
    eps = extension_counit(j, h, erh)
    assert compose(erh.unit, restriction_map(j, eps, erh.unit.dst, rh)).key() == identity(rh).key()
    ee = extension(j, restriction(j, ext.graph))
    lifted = extension_map(j, ext.unit, ext, ee)
    assert compose(lifted, extension_counit(j, ext.graph, ee)).key() == identity(ext.graph).key()
    # restriction -| coextension
    crh = coextension(j, rh)
    unit = coextension_unit(j, h, crh)
    back = compose(restriction_map(j, unit, rh, restriction(j, crh.graph)), crh.counit)
    assert back.key() == identity(rh).key()
    cc = coextension(j, restriction(j, co.graph))
    loop = compose(coextension_unit(j, co.graph, cc), coextension_map(j, co.counit, cc, co))
    assert loop.key() == identity(co.graph).key()


@criterion(5, "triangle identities and hom bijections for iota, r, p and S_2 into S_3")
def test_criterion_05_adjoint_triples():
    r = reflexivization(O2)
    maps = [
        (iota(S2), [_bare(0, 0), _bare(1, 0), _bare(0, 1), _bare(2, 1), _bare(1, 2)]),
        (r, _over(O2)),
        (action_inclusion(O2, S2), _over(O2)),
        (extend_by_identity(S2, S3, (0, 1)), _over(S2)),
    ]
    for j, sources in maps:
        targets = _over(j.dst) or [representable(j.dst, "V"), representable(j.dst, "A"), terminal(j.dst)]
        for g in sources:
            for h in targets:
                _triangles(j, g, h)


# ---------------------------------------------------------------------------
# 6: nerve and realization


# no singleton edges: a one-vertex edge realizes to a single fixed orbit
# at every xsize >= 2 and is handled in the bridge tests
NERVE_FIXTURES = [
    (hypergraph(2, [[0, 1]]), 2),
    (hypergraph(2, [[0, 1]]), 3),
    (hypergraph(3, [[0, 1], [1, 2], [0, 2]]), 2),
    (hypergraph(3, [[0, 1], [1, 2], [0, 2]]), 3),
    (hypergraph(3, [[0, 1, 2]]), 3),
    (hypergraph(3, [[0, 1, 2]]), 2),
    (hypergraph(4, [[0, 1, 2], [1, 2, 3]]), 3),
    (hypergraph(4, [[0, 1, 2], [1, 2]]), 3),
    (hypergraph(4, [[0, 1, 2, 3]]), 3),
    (hypergraph(4, [[0, 1], [2, 3], [0, 1]]), 2),
    (hypergraph(3, []), 2),
    (hypergraph(3, [[0, 1], [0, 1, 2]]), 2),
]


@criterion(6, "nerve of one 2-edge at xsize 3: 6 arcs, 2 orbits, 2 edges; counit iso iff uniform")
def test_criterion_06_nerve_realization():
    h = hypergraph(2, [[0, 1]])
    n = nerve(h, 3)
    assert n.na == 6 and len(arc_orbits(n)) == 2
    assert realization(n)[0].ne == 2
    assert nerve(hypergraph(4, [[0, 1, 2, 3]]), 3).na == 0
    for hg, k in NERVE_FIXTURES:
        assert fixed_point_check(hg, k) == uniform_check(hg, k), (hg, k)


# ---------------------------------------------------------------------------
# 7: orbit-stabilizer


@criterion(7, "|M| = |Stab(x)| |Orb(x)| for S_3 on 3 points and on itself")
def test_criterion_07_orbit_stabilizer():
    for action in (S3.action, regular_action(S3.monoid)):
        for x in range(action.size):
            os_ = orbit_stabilizer(action, x)
            assert len(os_.orbit) * len(os_.stabilizer) == action.monoid.size == 6


# ---------------------------------------------------------------------------
# 8: internal logic


def _size(s) -> int:
    return len(s.verts) + len(s.arcs)


@criterion(8, "s meet not-s empty, s join supplement whole, extremality by lattice scan")
def test_criterion_08_logic_laws():
    for _, g in catalogue():
        subs = sub_enumerate(g)
        if len(subs) > 200:
            continue
        top = subs[0].parent
        full = (frozenset(range(top.nv)), frozenset(range(top.na)))
        for s in subs:
            n, c = neg(s), subtract(s)
            assert s.meet(n).is_empty()
            assert (s.join(c).verts, s.join(c).arcs) == full
            disjoint = [t for t in subs if s.meet(t).is_empty()]
            covering = [t for t in subs if (s.join(t).verts, s.join(t).arcs) == full]
            assert n in subs and c in subs
            assert all(t <= n for t in disjoint)
            assert all(c <= t for t in covering)


# ---------------------------------------------------------------------------
# 9: graph products


def _edges(g: XMGraph) -> set[frozenset[int]]:
    return {frozenset(g.inc[a]) for a in range(g.na) if not g.is_loop(a)}


def _classical(g: XMGraph, h: XMGraph, kind: str) -> XMGraph:
    ge, he = _edges(g), _edges(h)
    cells = [(a, b) for a in range(g.nv) for b in range(h.nv)]
    out = []
    for i, j in itertools.combinations(range(len(cells)), 2):
        (a, b), (c, d) = cells[i], cells[j]
        ga, ha = frozenset((a, c)) in ge, frozenset((b, d)) in he
        cart = (a == c and ha) or (b == d and ga)
        rule = {
            "cartesian": cart,
            "strong": cart or (ga and ha),
            "lex": ga or (a == c and ha),
            "conormal": ga or ha,
        }[kind]
        if rule:
            out.append((i, j))
    return sym(len(cells), out)


def _simple_part(g: XMGraph) -> XMGraph:
    return sym(g.nv, sorted(tuple(sorted(e)) for e in _edges(g)))


@criterion(9, "strong(K2,K2) ~ K4, cartesian(K2,K2) ~ C4, lex/conormal/strong/cartesian vs brute force")
def test_criterion_09_graph_products():
    strong = graph_product(K2, K2, "strong")
    assert strong.nv == 4 and strong.na == 12 + 4
    assert iso_check(_simple_part(strong), complete(4)) is not None
    assert iso_check(graph_product(K2, K2, "cartesian"), C4) is not None
    small = [K2, P3, C4]
    for kind in ("lex", "conormal", "strong", "cartesian"):
        for g, h in itertools.product(small, repeat=2):
            p = graph_product(g, h, kind)
            assert iso_check(_simple_part(p), _classical(g, h, kind)) is not None, (kind, g, h)


# ---------------------------------------------------------------------------
# 10: injective and projective objects


def _singleton(q: XMGraph) -> tuple[XMGraph, GraphMorphism]:
    """``{}: Q -> Ω^Q``, the transpose of the diagonal's characteristic map."""
    om = omega(q.theory)
    qq = product2(q, q).apex
    diag = GraphMorphism(
        q, qq, tuple(v * q.nv + v for v in range(q.nv)), tuple(a * q.na + a for a in range(q.na))
    )
    e = exponential(om.graph, q)
    return e.graph, e.transpose(classify(image(diag), om), q)


def injective_oracle(q: XMGraph) -> bool:
    """``Ω^Q`` is injective, so ``Q`` is injective iff the singleton mono splits."""
    big, s = _singleton(q)
    assert s.is_mono()
    pv = {s.fv[v]: v for v in range(q.nv)}
    pa = {s.fa[a]: a for a in range(q.na)}
    return next(extensions(big, q, pv, pa), None) is not None


def projective_oracle(p: XMGraph) -> bool:
    """The cover by one representable per cell is epi from a projective; ``p`` is projective iff it splits."""
    big, eps = cover_map(p, range(p.nv), range(p.na))
    return any(compose(s, eps).key() == identity(p).key() for s in iter_homs(p, big))


def _curated() -> list[XMGraph]:
    return [
        representable(S2, "V"),
        representable(S2, "A"),
        terminal(S2),
        L_S2,
        LOOP_PAIR,
        injective_hull(K2)[0],
        injective_hull(P3)[0],
        projective_cover(K3)[0],
        projective_cover(L_SR2)[0],
        representable(SR2, "A"),
        representable(R2, "A"),
        PATH_O2,
    ]


@criterion(10, "is_injective and is_projective agree with oracles; hull essential; cover minimal")
def test_criterion_10_injective_projective():
    curated = _curated()
    assert len(curated) >= 10
    for q in curated:
        assert is_injective(q) == injective_oracle(q), q
        assert is_projective(q) == projective_oracle(q), q
    for _, g in catalogue():
        q, eta = injective_hull(g)
        assert is_injective(q) and eta.is_mono()
        zs = [z for _, z in catalogue() if z.theory == g.theory] + [q]
        for z in zs:
            for f in iter_homs(q, z):
                if compose(eta, f).is_mono():
                    assert f.is_mono()
        s_set, t_set = cover_generators(g)
        assert projective_cover(g)[1].is_epi()
        for t in t_set:
            assert not cover_map(g, s_set, [x for x in t_set if x != t])[1].is_epi()
        for s in s_set:
            assert not cover_map(g, [x for x in s_set if x != s], t_set)[1].is_epi()


# ---------------------------------------------------------------------------
# 11: chromatic number


def _brute_chromatic(g: XMGraph, kmax: int) -> int | None:
    for k in range(1, kmax + 1):
        for colour in itertools.product(range(k), repeat=g.nv):
            if all(len({colour[v] for v in g.inc[a]}) == g.theory.nx for a in range(g.na)):
                return k
    return None


@criterion(11, "chromatic(K_n) = n for n = 2, 3, 4; overflow with a loop")
def test_criterion_11_chromatic():
    for n in (2, 3, 4):
        kn = complete(n)
        assert chromatic(kn, 6) == n == _brute_chromatic(kn, 6)
    for g in (L_S2, LOOP_PAIR, terminal(S2), LOOP_O2, terminal(O2)):
        assert chromatic(g, 6) is None


# ---------------------------------------------------------------------------
# 12: simplification


@criterion(12, "simplify is idempotent and reflects uniquely onto simple fixtures")
def test_criterion_12_simplify():
    simple_targets = [g for _, g in catalogue() if is_simple(g)]
    assert len(simple_targets) >= 5
    for _, g in catalogue():
        q, unit = simplify(g)
        assert is_simple(q)
        q2, unit2 = simplify(q)
        assert unit2.is_iso()
        for s in simple_targets:
            if s.theory != g.theory:
                continue
            for f in iter_homs(g, s):
                pv = {unit.fv[v]: f.fv[v] for v in range(g.nv)}
                pa = {unit.fa[a]: f.fa[a] for a in range(g.na)}
                assert sum(1 for _ in extensions(q, s, pv, pa)) == 1


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for t in tests:
        try:
            t()
        except Exception:  # noqa: BLE001
            pass
    sys.exit(0 if all(ok for _, ok in RESULTS.values()) else 1)
