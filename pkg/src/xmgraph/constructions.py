"""Named constructions built on the core operators.

Cayley and Schreier graphs, label classifiers and the chromatic number,
graph products of simple loopless symmetric 2-graphs, and the injective and
projective machinery (refinements, hulls, covers, and exact tests).
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

from .algebra import FiniteMonoid, Theory, standard_theory
from .errors import (
    BadKind,
    HullActionNotClosed,
    NotSimpleLoopless,
    NotSubmonoid,
    ReflexiveUnsupported,
    SizeBound,
    TheoryMismatch,
    ValidationError,
)
from .functors import (
    coextension,
    coextension_unit,
    extension,
    extension_counit,
    iota,
    reflexivization,
    restriction,
)
from .graphcore import (
    GraphMorphism,
    Subgraph,
    XMGraph,
    classifying_map,
    components,
    compose,
    generate,
    hom_exists,
    image,
    induced,
    iter_homs,
    iter_subgraphs,
    make_graph,
    representable,
    terminal,
)
from .logic import subtract
from .toposops import (
    DEFAULT_MAX_CELLS,
    complete_graph,
    coproduct,
    product2,
    product_map,
)
from .unionfind import UnionFind

# ---------------------------------------------------------------------------
# Cayley and Schreier graphs


@dataclass(frozen=True)
class LabeledDigraph:
    """Vertices with directed arcs ``(src, tgt, label)``."""

    vnames: tuple[str, ...]
    arcs: tuple[tuple[int, int, int], ...]
    labels: tuple[str, ...]

    @property
    def nv(self) -> int:
        return len(self.vnames)

    def to_xmgraph(self) -> XMGraph:
        """The underlying directed graph over ``o(2)`` (source, target)."""
        t = standard_theory("o", 2)
        inc = [[s, d] for s, d, _ in self.arcs]
        mact = [[a] for a in range(len(self.arcs))]
        anames = [f"{self.vnames[s]}-{self.labels[g]}->{self.vnames[d]}" for s, d, g in self.arcs]
        return make_graph(t, self.nv, inc, mact, vnames=self.vnames, anames=anames, check=False)

    def is_connected(self) -> bool:
        uf = UnionFind(self.nv)
        for s, d, _ in self.arcs:
            uf.union(s, d)
        return self.nv == 0 or len(uf.classes()) == 1


def cayley(m: FiniteMonoid, s: Sequence[int]) -> LabeledDigraph:
    """Arcs ``v -> v·g`` labelled ``g`` for each vertex ``v`` and generator ``g``."""
    gens = list(s)
    arcs = tuple((v, m.mul[v][g], i) for v in range(m.size) for i, g in enumerate(gens))
    return LabeledDigraph(m.names, arcs, tuple(m.names[g] for g in gens))


def check_submonoid(m: FiniteMonoid, hsub: Sequence[int]) -> frozenset[int]:
    hs = frozenset(hsub)
    if m.unit not in hs or any(m.mul[a][b] not in hs for a in hs for b in hs):
        raise NotSubmonoid("subset is not closed or misses the unit", subset=sorted(hs))
    return hs


def schreier(m: FiniteMonoid, hsub: Sequence[int], s: Sequence[int]) -> LabeledDigraph:
    """Vertices are the classes of ``v ~ h·v``; arcs ``[v] -> [v·g]`` without repeats."""
    hs = check_submonoid(m, hsub)
    uf = UnionFind(m.size)
    for v in range(m.size):
        for h in hs:
            uf.union(v, m.mul[h][v])
    classes = uf.classes()
    cls_of = {}
    for i, cls in enumerate(classes):
        for v in cls:
            cls_of[v] = i
    gens = list(s)
    seen = []
    for v in range(m.size):
        for i, g in enumerate(gens):
            arc = (cls_of[v], cls_of[m.mul[v][g]], i)
            if arc not in seen:
                seen.append(arc)
    vnames = tuple(
        m.names[cls[0]] if len(cls) == 1 else "{" + ",".join(m.names[v] for v in cls) + "}"
        for cls in classes
    )
    return LabeledDigraph(vnames, tuple(seen), tuple(m.names[g] for g in gens))


# ---------------------------------------------------------------------------
# label classifiers and the chromatic number

ClassifierKind = Literal["CV", "CA", "nonmono", "nonrainbow", "cardfix"]


def label_classifier(
    theory: Theory,
    kind: ClassifierKind,
    labels: Sequence[str] | int,
    extra: Mapping[int, int] | None = None,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> XMGraph:
    """Graphs whose morphisms into them are labelings.

    ``CV`` labels vertices freely (every function ``X -> Γ`` is an arc).
    ``nonmono``, ``nonrainbow`` and ``cardfix`` keep the functions ``f``
    such that every ``f∘m`` is non-constant, non-surjective, or has the
    prescribed fibre sizes ``extra``.  ``CA`` has one vertex and one fixed
    arc per label.
    """
    names = [str(v) for v in range(labels)] if isinstance(labels, int) else list(labels)
    n = len(names)
    if kind == "CA":
        inc = [[0] * theory.nx for _ in names]
        mact = [[a] * theory.nm for a in range(n)]
        loop = [0] if theory.reflexive else None
        if theory.reflexive and not names:
            raise BadKind("a reflexive arc classifier needs at least one label")
        return make_graph(theory, 1, inc, mact, loop, vnames=["*"], anames=names, check=False)
    if kind == "CV":
        return complete_graph(theory, n, names, max_cells)
    if kind not in ("nonmono", "nonrainbow", "cardfix"):
        raise BadKind(f"unknown classifier {kind!r}", kind=kind)
    if theory.reflexive:
        raise ReflexiveUnsupported(f"{kind} has no distinguished loops to offer")
    fibres = dict(extra or {})

    def ok(f: tuple[int, ...]) -> bool:
        if kind == "nonmono":
            return len(set(f)) >= 2
        if kind == "nonrainbow":
            return len(set(f)) < n
        return all(f.count(i) == c for i, c in fibres.items())

    k = complete_graph(theory, n, names, max_cells)
    keep = [a for a in range(k.na) if all(ok(k.inc[b]) for b in k.mact[a])]
    return induced(k, range(n), keep)[0]


def has_loop(g: XMGraph) -> bool:
    return any(g.is_loop(a) for a in range(g.na))


def chromatic(g: XMGraph, kmax: int) -> int | None:
    """Least ``k <= kmax`` with a morphism into ``nonmono(k)``; ``None`` on overflow."""
    if g.reflexive or (g.theory.nx > 0 and has_loop(g)):
        return None
    for k in range(1, kmax + 1):
        if hom_exists(g, label_classifier(g.theory, "nonmono", k)):
            return k
    return None


# ---------------------------------------------------------------------------
# graph products

ProductKind = Literal["categorical", "strong", "cartesian", "conormal", "lex", "modular"]


def _require_simple_loopless(*graphs: XMGraph) -> Theory:
    for g in graphs:
        t = g.theory
        maps = {t.action.map_of(m) for m in range(t.nm)}
        if t.reflexive or t.nx != 2 or maps != {(0, 1), (1, 0)}:
            raise NotSimpleLoopless("products need graphs over s(2)")
        if len(set(g.inc)) != g.na or any(g.is_loop(a) for a in range(g.na)):
            raise NotSimpleLoopless("graph has loops or parallel arcs")
    if graphs[0].theory != graphs[-1].theory:
        raise TheoryMismatch("graphs live over different theories")
    return graphs[0].theory


def _embed(g: XMGraph, k: XMGraph) -> GraphMorphism:
    """The incidence embedding of a simple graph into the complete graph on its vertices."""
    index = {row: i for i, row in enumerate(k.inc)}
    return GraphMorphism(g, k, tuple(range(g.nv)), tuple(index[r] for r in g.inc))


def _loopless_complete(t: Theory, n: int) -> XMGraph:
    k = complete_graph(t, n)
    return induced(k, range(n), [a for a in range(k.na) if not k.is_loop(a)])[0]


def product_subgraph(g: XMGraph, h: XMGraph, kind: ProductKind) -> Subgraph:
    """A product of simple loopless graphs as a subgraph of ``K_G × K_H``."""
    t = _require_simple_loopless(g, h)
    kg, kh = complete_graph(t, g.nv), complete_graph(t, h.nv)
    kk = product2(kg, kh).apex
    eg, eh = _embed(g, kg), _embed(h, kh)

    def img(a: XMGraph, fa: GraphMorphism, b: XMGraph, fb: GraphMorphism) -> Subgraph:
        return image(product_map(fa, fb, product2(a, b).apex, kk))

    if kind == "categorical":
        return img(g, eg, h, eh)
    if kind == "conormal":
        return img(g, eg, kh, _identity(kh)).join(img(kg, _identity(kg), h, eh))
    if kind == "lex":
        r = reflexivization(t)
        rg = restriction(r, extension(r, g).graph)
        return img(g, eg, kh, _identity(kh)).join(img(rg, _embed(rg, kg), h, eh))
    if kind == "modular":
        lg, lh = _loopless_complete(t, g.nv), _loopless_complete(t, h.nv)
        cg = subtract(image(_embed(g, lg)))
        ch = subtract(image(_embed(h, lh)))
        gc, gi = cg.to_graph()
        hc, hi = ch.to_graph()
        into_kg = compose(gi, _embed(lg, kg))
        into_kh = compose(hi, _embed(lh, kh))
        return img(g, eg, h, eh).join(img(gc, into_kg, hc, into_kh))
    if kind == "cartesian":
        return _cartesian(g, h, t, kk)
    raise BadKind(f"unknown product {kind!r}", kind=kind)


def _identity(g: XMGraph) -> GraphMorphism:
    return GraphMorphism(g, g, tuple(range(g.nv)), tuple(range(g.na)))


def strong_product(g: XMGraph, h: XMGraph) -> XMGraph:
    """``r_!G × r_!H`` in the reflexive category."""
    t = _require_simple_loopless(g, h)
    r = reflexivization(t)
    return product2(extension(r, g).graph, extension(r, h).graph).apex


def _cartesian(g: XMGraph, h: XMGraph, t: Theory, kk: XMGraph) -> Subgraph:
    """``∼ r_!(G × H)`` inside ``G ⊠ H`` with the distinguished loops dropped."""
    r = reflexivization(t)
    eg, eh = extension(r, g), extension(r, h)
    strong = product2(eg.graph, eh.graph).apex
    # r_!(G×H) is generated by the cells of G×H, so its image in the strong
    # product is the subgraph generated by the unit images of those cells
    sub_v = [
        eg.unit.fv[a] * eh.graph.nv + eh.unit.fv[b] for a in range(g.nv) for b in range(h.nv)
    ]
    sub_a = [
        eg.unit.fa[a] * eh.graph.na + eh.unit.fa[b] for a in range(g.na) for b in range(h.na)
    ]
    cart = subtract(generate(strong, sub_v, sub_a))
    # keep the non-distinguished arcs and read them through their incidence
    dist = strong.distinguished()
    kindex = {row: i for i, row in enumerate(kk.inc)}
    verts = set()
    arcs = set()
    for v in cart.verts:
        a, b = divmod(v, eh.graph.nv)
        verts.add(a * h.nv + b)
    for e in cart.arcs:
        if e in dist:
            continue
        row = tuple(
            (v // eh.graph.nv) * h.nv + v % eh.graph.nv for v in strong.inc[e]
        )
        arcs.add(kindex[row])
    return Subgraph(kk, frozenset(verts), frozenset(arcs))


def graph_product(g: XMGraph, h: XMGraph, kind: ProductKind) -> XMGraph:
    """The named product; ``strong`` is reflexive, the others sit inside ``K_G × K_H``."""
    if kind == "categorical":
        try:
            _require_simple_loopless(g, h)
        except NotSimpleLoopless:
            return product2(g, h).apex
    if kind == "strong":
        return strong_product(g, h)
    return product_subgraph(g, h, kind).to_graph()[0]


# ---------------------------------------------------------------------------
# injective and projective objects


def inj_refine(g: XMGraph, max_cells: int = DEFAULT_MAX_CELLS) -> tuple[XMGraph, GraphMorphism]:
    """``Inj(g) = ι_*ι^*g`` with the unit ``g -> Inj(g)``."""
    j = iota(g.theory)
    co = coextension(j, restriction(j, g), max_cells)
    return co.graph, coextension_unit(j, g, co)


def proj_refine(g: XMGraph) -> tuple[XMGraph, GraphMorphism]:
    """``Proj(g) = ι_!ι^*g`` with the counit ``Proj(g) -> g``."""
    j = iota(g.theory)
    ext = extension(j, restriction(j, g))
    return ext.graph, extension_counit(j, g, ext)


def _coarsest_congruence(
    y: XMGraph, s: Subgraph, f: GraphMorphism
) -> tuple[list[int], list[int]]:
    """Coarsest congruence on ``y`` for which ``s`` is saturated and ``f`` is constant on classes.

    ``f`` is a morphism from the materialized ``s``; its cells are listed in
    the sorted order of ``s``.
    """
    vpos = {v: i for i, v in enumerate(sorted(s.verts))}
    apos = {a: i for i, a in enumerate(sorted(s.arcs))}
    vlab: list = [("in", f.fv[vpos[v]]) if v in vpos else ("out",) for v in range(y.nv)]
    alab: list = [("in", f.fa[apos[a]]) if a in apos else ("out",) for a in range(y.na)]
    vlab, alab = _normalize(vlab), _normalize(alab)
    while True:
        na = _normalize(
            [
                (alab[a], tuple(alab[b] for b in y.mact[a]), tuple(vlab[v] for v in y.inc[a]))
                for a in range(y.na)
            ]
        )
        if y.reflexive:
            nv = _normalize([(vlab[v], na[y.loop[v]]) for v in range(y.nv)])
        else:
            nv = vlab
        if len(set(na)) == len(set(alab)) and len(set(nv)) == len(set(vlab)):
            return nv, na
        vlab, alab = nv, na


def _normalize(labels: list) -> list[int]:
    index: dict = {}
    return [index.setdefault(x, len(index)) for x in labels]


def _respects(fv: Sequence[int], fa: Sequence[int], vlab: list[int], alab: list[int]) -> bool:
    seen_v: dict[int, int] = {}
    for v, c in enumerate(vlab):
        if seen_v.setdefault(c, fv[v]) != fv[v]:
            return False
    seen_a: dict[int, int] = {}
    for a, c in enumerate(alab):
        if seen_a.setdefault(c, fa[a]) != fa[a]:
            return False
    return True


def injectivity_witness(q: XMGraph, cap: int = DEFAULT_MAX_CELLS) -> tuple | None:
    """A partial map that does not extend, or ``None`` when ``q`` is injective.

    For every subgraph ``S`` of a representable ``y`` and every ``f: S -> q``
    there must be a morphism ``y -> q`` extending ``f`` that is constant on
    the classes of the coarsest congruence making ``S`` saturated and ``f``
    well defined.  That condition is equivalent to extending along every
    monomorphism, because any one-cell step of an extension factors through
    a quotient of a representable by such a congruence.
    """
    t = q.theory
    if q.nv == 0:
        return ("V", (), ())
    checked = 0
    for which in ("V", "A"):
        y = representable(t, which)
        gens = range(q.nv) if which == "V" else range(q.na)
        rep_maps = [classifying_map(q, (which, c)) for c in gens]
        for s in iter_subgraphs(y):
            if len(s.verts) == y.nv and len(s.arcs) == y.na:
                continue
            sg, inc = s.to_graph()
            for f in iter_homs(sg, q):
                checked += 1
                if checked > cap:
                    raise SizeBound("injectivity test exceeds the cap", cap=cap)
                vlab, alab = _coarsest_congruence(y, s, f)
                ok = False
                for big in rep_maps:
                    if any(big.fv[inc.fv[i]] != f.fv[i] for i in range(sg.nv)):
                        continue
                    if any(big.fa[inc.fa[i]] != f.fa[i] for i in range(sg.na)):
                        continue
                    if _respects(big.fv, big.fa, vlab, alab):
                        ok = True
                        break
                if not ok:
                    return (which, s.key(), f.key())
    return None


def is_injective(q: XMGraph) -> bool:
    return injectivity_witness(q) is None


def _retract_of(c: XMGraph, y: XMGraph) -> bool:
    """Whether ``c`` is a retract of ``y``: a mono ``c -> y`` split by some ``y -> c``."""
    for s in iter_homs(c, y, injective=True):
        for r in iter_homs(y, c):
            if all(r.fv[s.fv[v]] == v for v in range(c.nv)) and all(
                r.fa[s.fa[a]] == a for a in range(c.na)
            ):
                return True
    return False


def is_projective(g: XMGraph) -> bool:
    """Every connected component is a retract of ``V̲`` or ``A̲``.

    A connected object maps into a coproduct through one summand, so a split
    epimorphism from a coproduct of representables splits componentwise.
    """
    t = g.theory
    reps = [representable(t, "V"), representable(t, "A")]
    for comp in components(g):
        c, _ = comp.to_graph()
        if not any(_retract_of(c, y) for y in reps):
            return False
    return True


def is_free(g: XMGraph) -> bool:
    """Whether ``g`` is a coproduct of copies of ``V̲`` and ``A̲``."""
    from .graphcore import iso_check

    t = g.theory
    reps = [representable(t, "V"), representable(t, "A")]
    for comp in components(g):
        c, _ = comp.to_graph()
        if not any(c.nv == y.nv and c.na == y.na and iso_check(c, y) for y in reps):
            return False
    return True


def _missing(
    g: XMGraph, k: XMGraph
) -> list[int]:
    """Arcs of the complete graph ``k`` on ``g``'s vertices with no faithful realization in ``g``.

    The arc ``f`` of ``k`` is realized by an arc ``α`` of ``g`` when
    ``∂α = f`` and ``α.m = α.m'`` whenever ``f.m = f.m'``.
    """
    by_inc: dict[tuple[int, ...], list[int]] = {}
    for a in range(g.na):
        by_inc.setdefault(g.inc[a], []).append(a)
    out = []
    for f in range(k.na):
        if _realizer(g, k, f, by_inc) is None:
            out.append(f)
    return out


def _realizer(g: XMGraph, k: XMGraph, f: int, by_inc: dict) -> int | None:
    row = k.mact[f]
    for a in by_inc.get(k.inc[f], []):
        seen: dict[int, int] = {}
        if all(seen.setdefault(row[m], g.mact[a][m]) == g.mact[a][m] for m in range(len(row))):
            return a
    return None


def injective_hull(g: XMGraph, max_cells: int = DEFAULT_MAX_CELLS) -> tuple[XMGraph, GraphMorphism]:
    """Adjoin one arc for each incidence function that ``g`` does not realize faithfully.

    The new arc for ``f`` acts by ``f.m``: onto the new arc for ``f.m`` if
    that one is new too, otherwise onto the existing realizer (the
    distinguished loop for a constant in a reflexive theory).  The initial
    graph goes to the terminal graph.  When the result fails the graph laws
    or is not injective the construction raises ``HullActionNotClosed``.
    """
    t = g.theory
    if g.nv == 0:
        one = terminal(t)
        return one, GraphMorphism(g, one, (), ())
    k = complete_graph(t, g.nv, max_cells=max_cells)
    by_inc: dict[tuple[int, ...], list[int]] = {}
    for a in range(g.na):
        by_inc.setdefault(g.inc[a], []).append(a)
    missing = _missing(g, k)
    if g.na + len(missing) > max_cells:
        raise SizeBound("hull exceeds the cap", cap=max_cells)
    new_id = {f: g.na + i for i, f in enumerate(missing)}

    def target(f: int) -> int:
        if f in new_id:
            return new_id[f]
        if t.reflexive and len(set(k.inc[f])) == 1 and t.nx > 0:
            return g.loop[k.inc[f][0]]
        r = _realizer(g, k, f, by_inc)
        assert r is not None
        return r

    inc = [list(r) for r in g.inc] + [list(k.inc[f]) for f in missing]
    mact = [list(r) for r in g.mact] + [[target(k.mact[f][m]) for m in range(t.nm)] for f in missing]
    anames = [g.aname(a) for a in range(g.na)] + [
        "(" + ",".join(g.vname(v) for v in k.inc[f]) + ")" for f in missing
    ]
    try:
        q = make_graph(
            t, g.nv, inc, mact, g.loop, vnames=[g.vname(v) for v in range(g.nv)], anames=anames
        )
    except ValidationError as err:
        raise HullActionNotClosed(
            "adjoined arcs do not carry a well-defined action", reason=str(err)
        ) from err
    if not is_injective(q):
        raise HullActionNotClosed("adjoining the missing incidences does not give an injective")
    eta = GraphMorphism(g, q, tuple(range(g.nv)), tuple(range(g.na)))
    return q, eta


def cover_generators(g: XMGraph) -> tuple[list[int], list[int]]:
    """``(S, T)``: vertices needing a copy of ``V̲`` and arcs generating the rest.

    ``T`` holds the smallest arc of each source component of the digraph
    ``a -> a.m``.  In a reflexive graph a source component made of a lone
    distinguished loop is covered by its vertex instead.
    """
    n = g.na
    # a.M is already closed under the action, so it is the reachable set
    reach = [set(g.mact[a]) for a in range(n)]
    dist = g.distinguished()
    t_set = []
    for a in range(n):
        if any(a in reach[b] and b not in reach[a] for b in range(n)):
            continue  # another component reaches this one
        if any(b < a and a in reach[b] and b in reach[a] for b in range(n)):
            continue  # not the smallest member of its component
        t_set.append(a)
    s_set = []
    touched = set()
    for a in range(n):
        touched.update(g.inc[a])
    if g.reflexive:
        keep = []
        for a in t_set:
            if a in dist and set(g.mact[a]) == {a}:
                s_set.append(g.loop.index(a))
            else:
                keep.append(a)
        t_set = keep
        covered = {v for a in t_set for b in reach[a] for v in g.inc[b]}
        s_set = sorted(set(s_set) | {v for v in range(g.nv) if v not in covered})
    else:
        s_set = [v for v in range(g.nv) if v not in touched]
    return s_set, t_set


def projective_cover(g: XMGraph) -> tuple[XMGraph, GraphMorphism]:
    """``⊔_S V̲ ⊔ ⊔_T A̲ -> g`` for the generators of :func:`cover_generators`."""
    return cover_map(g, *cover_generators(g))


def cover_map(
    g: XMGraph, s_set: Sequence[int], t_set: Sequence[int]
) -> tuple[XMGraph, GraphMorphism]:
    """``⊔_S V̲ ⊔ ⊔_T A̲ -> g`` with the classifying maps as components."""
    t = g.theory
    rv, ra = representable(t, "V"), representable(t, "A")
    cop = coproduct([rv] * len(s_set) + [ra] * len(t_set), theory=t)
    p = cop.apex
    fv = [0] * p.nv
    fa = [0] * p.na
    maps = [classifying_map(g, ("V", v)) for v in s_set] + [
        classifying_map(g, ("A", a)) for a in t_set
    ]
    for leg, chi in zip(cop.legs, maps):
        for i, v in enumerate(leg.fv):
            fv[v] = chi.fv[i]
        for i, a in enumerate(leg.fa):
            fa[a] = chi.fa[i]
    return p, GraphMorphism(p, g, tuple(fv), tuple(fa))


__all__ = [
    "LabeledDigraph",
    "cayley",
    "schreier",
    "check_submonoid",
    "label_classifier",
    "chromatic",
    "graph_product",
    "product_subgraph",
    "strong_product",
    "inj_refine",
    "proj_refine",
    "injectivity_witness",
    "is_injective",
    "is_projective",
    "is_free",
    "injective_hull",
    "cover_generators",
    "projective_cover",
    "cover_map",
]
