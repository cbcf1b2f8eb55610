"""Limits, colimits, exponentials, the subobject classifier and the
double-negation reflectors (simplification and sheafification)."""

from __future__ import annotations

import functools
import itertools
from collections.abc import Sequence
from dataclasses import dataclass

from .algebra import Theory
from .errors import ReflexiveUnsupported, SizeBound, TheoryMismatch
from .graphcore import (
    GraphMorphism,
    Subgraph,
    XMGraph,
    classifying_map,
    compose,
    identity,
    induced,
    iter_homs,
    iter_subgraphs,
    make_graph,
    representable,
    same_theory,
    terminal,
)
from .unionfind import UnionFind

DEFAULT_MAX_CELLS = 100_000


@dataclass(frozen=True)
class Cone:
    apex: XMGraph
    legs: tuple[GraphMorphism, ...]


Cocone = Cone


# ---------------------------------------------------------------------------
# limits


def product(graphs: Sequence[XMGraph]) -> Cone:
    """Pointwise product with projections; the empty product is terminal."""
    if not graphs:
        raise TheoryMismatch("an empty product needs a theory; use terminal()")
    t = same_theory(*graphs)
    vcells = list(itertools.product(*(range(g.nv) for g in graphs)))
    acells = list(itertools.product(*(range(g.na) for g in graphs)))
    vpos = {c: i for i, c in enumerate(vcells)}
    apos = {c: i for i, c in enumerate(acells)}
    inc = [
        [vpos[tuple(g.inc[a][x] for g, a in zip(graphs, cell))] for x in range(t.nx)]
        for cell in acells
    ]
    mact = [
        [apos[tuple(g.mact[a][m] for g, a in zip(graphs, cell))] for m in range(t.nm)]
        for cell in acells
    ]
    loop = (
        [apos[tuple(g.loop[v] for g, v in zip(graphs, cell))] for cell in vcells]
        if t.reflexive
        else None
    )
    apex = make_graph(
        t,
        len(vcells),
        inc,
        mact,
        loop,
        vnames=["(" + ",".join(g.vname(v) for g, v in zip(graphs, c)) + ")" for c in vcells],
        anames=["(" + ",".join(g.aname(a) for g, a in zip(graphs, c)) + ")" for c in acells],
        check=False,
    )
    legs = tuple(
        GraphMorphism(apex, g, tuple(c[i] for c in vcells), tuple(c[i] for c in acells))
        for i, g in enumerate(graphs)
    )
    return Cone(apex, legs)


def product2(g: XMGraph, h: XMGraph) -> Cone:
    return product([g, h])


def product_map(f: GraphMorphism, k: GraphMorphism, src: XMGraph, dst: XMGraph) -> GraphMorphism:
    """``f × k`` between binary products built by :func:`product2`."""
    hv, ha = k.src.nv, k.src.na
    dv, da = k.dst.nv, k.dst.na
    fv = tuple(f.fv[i // hv] * dv + k.fv[i % hv] for i in range(src.nv)) if hv else ()
    fa = tuple(f.fa[i // ha] * da + k.fa[i % ha] for i in range(src.na)) if ha else ()
    return GraphMorphism(src, dst, fv, fa)


def equalizer(f: GraphMorphism, g: GraphMorphism) -> Cone:
    if f.src != g.src or f.dst != g.dst:
        raise TheoryMismatch("equalizer needs parallel morphisms")
    src = f.src
    vs = [v for v in range(src.nv) if f.fv[v] == g.fv[v]]
    as_ = [a for a in range(src.na) if f.fa[a] == g.fa[a]]
    apex, inc = induced(src, vs, as_)
    return Cone(apex, (inc,))


def pullback(f: GraphMorphism, g: GraphMorphism) -> Cone:
    if f.dst != g.dst:
        raise TheoryMismatch("pullback needs a common codomain")
    cone = product2(f.src, g.src)
    p = cone.apex
    p1, p2 = cone.legs
    vs = [v for v in range(p.nv) if f.fv[p1.fv[v]] == g.fv[p2.fv[v]]]
    as_ = [a for a in range(p.na) if f.fa[p1.fa[a]] == g.fa[p2.fa[a]]]
    apex, inc = induced(p, vs, as_)
    return Cone(apex, (compose(inc, p1), compose(inc, p2)))


def limit(kind: str, *diagram) -> Cone:
    """Dispatch ``product`` (graphs), ``equalizer`` or ``pullback`` (two morphisms)."""
    if kind == "product":
        return product(list(diagram[0]) if len(diagram) == 1 else list(diagram))
    if kind == "equalizer":
        return equalizer(*diagram)
    if kind == "pullback":
        return pullback(*diagram)
    raise ValueError(f"unknown limit kind {kind!r}")


# ---------------------------------------------------------------------------
# colimits


def quotient(
    g: XMGraph,
    vpairs: Sequence[tuple[int, int]] = (),
    apairs: Sequence[tuple[int, int]] = (),
) -> tuple[XMGraph, GraphMorphism]:
    """Quotient by the smallest congruence containing the given pairs."""
    uv, ua = UnionFind(g.nv), UnionFind(g.na)
    uv.union_all(vpairs)
    ua.union_all(apairs)
    t = g.theory
    changed = True
    while changed:
        changed = False
        for a in range(g.na):
            r = ua.find(a)
            if r == a:
                continue
            for m in range(t.nm):
                changed |= ua.union(g.mact[a][m], g.mact[r][m])
            for x in range(t.nx):
                changed |= uv.union(g.inc[a][x], g.inc[r][x])
        if t.reflexive:
            for v in range(g.nv):
                r = uv.find(v)
                if r != v:
                    changed |= ua.union(g.loop[v], g.loop[r])
    vlab, nv = uv.labels()
    alab, na = ua.labels()
    vrep = [0] * nv
    for v in reversed(range(g.nv)):
        vrep[vlab[v]] = v
    arep = [0] * na
    for a in reversed(range(g.na)):
        arep[alab[a]] = a
    inc = [[vlab[g.inc[arep[i]][x]] for x in range(t.nx)] for i in range(na)]
    mact = [[alab[g.mact[arep[i]][m]] for m in range(t.nm)] for i in range(na)]
    loop = [alab[g.loop[vrep[i]]] for i in range(nv)] if t.reflexive else None
    q = make_graph(
        t,
        nv,
        inc,
        mact,
        loop,
        vnames=[g.vname(v) for v in vrep],
        anames=[g.aname(a) for a in arep],
        check=False,
    )
    return q, GraphMorphism(g, q, tuple(vlab), tuple(alab))


def coproduct(graphs: Sequence[XMGraph], theory: Theory | None = None) -> Cocone:
    """Disjoint union with injections; the empty coproduct is initial."""
    if not graphs:
        if theory is None:
            raise TheoryMismatch("an empty coproduct needs a theory")
        t = theory
    else:
        t = same_theory(*graphs)
    inc, mact, loop, vnames, anames = [], [], [], [], []
    legs_data = []
    voff = aoff = 0
    for i, g in enumerate(graphs):
        for a in range(g.na):
            inc.append([voff + v for v in g.inc[a]])
            mact.append([aoff + b for b in g.mact[a]])
            anames.append(f"{i}:{g.aname(a)}")
        for v in range(g.nv):
            vnames.append(f"{i}:{g.vname(v)}")
            if t.reflexive:
                loop.append(aoff + g.loop[v])
        legs_data.append((tuple(voff + v for v in range(g.nv)), tuple(aoff + a for a in range(g.na))))
        voff += g.nv
        aoff += g.na
    apex = make_graph(
        t, voff, inc, mact, loop if t.reflexive else None,
        vnames=vnames, anames=anames, check=False,
    )
    legs = tuple(GraphMorphism(g, apex, fv, fa) for g, (fv, fa) in zip(graphs, legs_data))
    return Cone(apex, legs)


def coequalizer(f: GraphMorphism, g: GraphMorphism) -> Cocone:
    if f.src != g.src or f.dst != g.dst:
        raise TheoryMismatch("coequalizer needs parallel morphisms")
    q, qm = quotient(
        f.dst,
        list(zip(f.fv, g.fv)),
        list(zip(f.fa, g.fa)),
    )
    return Cone(q, (qm,))


def pushout(f: GraphMorphism, g: GraphMorphism) -> Cocone:
    """Pushout of ``B <- C -> D`` given ``f: C -> B`` and ``g: C -> D``."""
    if f.src != g.src:
        raise TheoryMismatch("pushout needs a common domain")
    cop = coproduct([f.dst, g.dst])
    i1, i2 = cop.legs
    q, qm = quotient(
        cop.apex,
        [(i1.fv[f.fv[v]], i2.fv[g.fv[v]]) for v in range(f.src.nv)],
        [(i1.fa[f.fa[a]], i2.fa[g.fa[a]]) for a in range(f.src.na)],
    )
    return Cone(q, (compose(i1, qm), compose(i2, qm)))


def colimit(kind: str, *diagram) -> Cocone:
    if kind == "coproduct":
        return coproduct(list(diagram[0]) if len(diagram) == 1 else list(diagram))
    if kind == "coequalizer":
        return coequalizer(*diagram)
    if kind == "pushout":
        return pushout(*diagram)
    raise ValueError(f"unknown colimit kind {kind!r}")


# ---------------------------------------------------------------------------
# exponentials


@dataclass(frozen=True)
class Exponential:
    """``G^H`` with its evaluation ``G^H × H -> G``.

    A vertex is a morphism ``V̲ × H -> G`` and an arc a morphism
    ``A̲ × H -> G``; incidences and actions are precomposition with the
    Yoneda images of ``x`` and ``m`` crossed with ``H``.
    """

    graph: XMGraph
    base: XMGraph
    power: XMGraph
    vert_maps: tuple[GraphMorphism, ...]
    arc_maps: tuple[GraphMorphism, ...]
    eval_source: XMGraph
    ev: GraphMorphism

    def transpose(self, k: GraphMorphism, f_src: XMGraph) -> GraphMorphism:
        """Curry ``k: F × H -> G`` into ``F -> G^H``."""
        vindex = {m.key(): i for i, m in enumerate(self.vert_maps)}
        aindex = {m.key(): i for i, m in enumerate(self.arc_maps)}
        vcells, acells = _cell_products(f_src, k.src, self.power)
        fv = tuple(vindex[compose(c, k).key()] for c in vcells)
        fa = tuple(aindex[compose(c, k).key()] for c in acells)
        return GraphMorphism(f_src, self.graph, fv, fa)

    def uncurry(self, u: GraphMorphism, fh: XMGraph) -> GraphMorphism:
        """``F -> G^H`` back to ``F × H -> G`` through ``ev``."""
        return compose(product_map(u, identity(self.power), fh, self.eval_source), self.ev)

    def arc_components(self, arc: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        """The pair ``((f_x)_x, g)``: vertex functions at each incidence and the arc map."""
        phi = self.arc_maps[arc]
        h = self.power
        unit = h.theory.unit
        g = tuple(phi.fa[unit * h.na + b] for b in range(h.na))
        fx = tuple(
            tuple(self.vert_maps[self.graph.inc[arc][x]].fv[w] for w in range(h.nv))
            for x in range(h.theory.nx)
        )
        return fx, g


@functools.lru_cache(maxsize=64)
def _cell_products(
    f_src: XMGraph, fh: XMGraph, h: XMGraph
) -> tuple[tuple[GraphMorphism, ...], tuple[GraphMorphism, ...]]:
    """``χ_c × H: y × H -> F × H`` for every cell ``c`` of ``F``, vertices then arcs."""
    pv = product2(representable(h.theory, "V"), h).apex
    pa = product2(representable(h.theory, "A"), h).apex
    idh = identity(h)
    vcells = tuple(
        product_map(classifying_map(f_src, ("V", v)), idh, pv, fh) for v in range(f_src.nv)
    )
    acells = tuple(
        product_map(classifying_map(f_src, ("A", a)), idh, pa, fh) for a in range(f_src.na)
    )
    return vcells, acells


def exponential(g: XMGraph, h: XMGraph, max_cells: int = DEFAULT_MAX_CELLS) -> Exponential:
    t = same_theory(g, h)
    rep_v = representable(t, "V")
    rep_a = representable(t, "A")
    pv = product2(rep_v, h).apex
    pa = product2(rep_a, h).apex
    verts = _bounded_homs(pv, g, max_cells)
    arcs = _bounded_homs(pa, g, max_cells)
    vindex = {m.key(): i for i, m in enumerate(verts)}
    aindex = {m.key(): i for i, m in enumerate(arcs)}
    idh = identity(h)
    xmaps = [product_map(classifying_map(rep_a, ("V", x)), idh, pv, pa) for x in range(t.nx)]
    mmaps = [product_map(classifying_map(rep_a, ("A", m)), idh, pa, pa) for m in range(t.nm)]
    inc = [[vindex[compose(xm, phi).key()] for xm in xmaps] for phi in arcs]
    mact = [[aindex[compose(mm, phi).key()] for mm in mmaps] for phi in arcs]
    loop = None
    if t.reflexive:
        to_v = GraphMorphism(rep_a, rep_v, (0,) * rep_a.nv, (0,) * rep_a.na)
        lmap = product_map(to_v, idh, pa, pv)
        loop = [aindex[compose(lmap, psi).key()] for psi in verts]
    eg = make_graph(t, len(verts), inc, mact, loop, check=False)
    cone = product2(eg, h)
    src = cone.apex
    unit = t.unit
    ev_v = tuple(verts[i // h.nv].fv[i % h.nv] for i in range(src.nv)) if h.nv else ()
    ev_a = tuple(arcs[i // h.na].fa[unit * h.na + i % h.na] for i in range(src.na)) if h.na else ()
    ev = GraphMorphism(src, g, ev_v, ev_a)
    return Exponential(eg, g, h, tuple(verts), tuple(arcs), src, ev)


def _bounded_homs(src: XMGraph, dst: XMGraph, cap: int) -> list[GraphMorphism]:
    out = []
    for f in iter_homs(src, dst):
        out.append(f)
        if len(out) > cap:
            raise SizeBound(f"hom-set exceeds {cap} elements", cap=cap)
    return out


# ---------------------------------------------------------------------------
# subobject classifier


@dataclass(frozen=True)
class Omega:
    """The subobject classifier; arc ``i`` is the subgraph ``subs[i]`` of ``A̲``."""

    graph: XMGraph
    subs: tuple[Subgraph, ...]
    top: GraphMorphism
    full: int
    empty: int


def _mask(n: int, s: frozenset[int]) -> str:
    return "".join("1" if i in s else "0" for i in range(n))


def omega(theory: Theory) -> Omega:
    rep_a = representable(theory, "A")
    subs = tuple(iter_subgraphs(rep_a))
    index = {s.key(): i for i, s in enumerate(subs)}
    nx, nm = theory.nx, theory.nm
    act, mul = theory.act, theory.mul
    inc = [[1 if x in s.verts else 0 for x in range(nx)] for s in subs]
    mact = []
    for s in subs:
        row = []
        for m in range(nm):
            arcs = frozenset(k for k in range(nm) if mul[k][m] in s.arcs)
            verts = frozenset(x for x in range(nx) if act[x][m] in s.verts)
            row.append(index[(tuple(sorted(verts)), tuple(sorted(arcs)))])
        mact.append(row)
    full = index[(tuple(range(nx)), tuple(range(nm)))]
    empty = index[((), ())]
    loop = [empty, full] if theory.reflexive else None
    names = [f"V{_mask(nx, s.verts)}|A{_mask(nm, s.arcs)}" for s in subs]
    g = make_graph(theory, 2, inc, mact, loop, vnames=["bot", "top"], anames=names, check=False)
    one = terminal(theory)
    top = GraphMorphism(one, g, (1,), (full,))
    return Omega(g, subs, top, full, empty)


def classify(s: Subgraph, om: Omega | None = None) -> GraphMorphism:
    """The characteristic morphism of ``s``."""
    g = s.parent
    t = g.theory
    om = om or omega(t)
    index = {sub.key(): i for i, sub in enumerate(om.subs)}
    fv = tuple(1 if v in s.verts else 0 for v in range(g.nv))
    fa = []
    for a in range(g.na):
        ev = tuple(x for x in range(t.nx) if g.inc[a][x] in s.verts)
        ea = tuple(m for m in range(t.nm) if g.mact[a][m] in s.arcs)
        fa.append(index[(ev, ea)])
    return GraphMorphism(g, om.graph, fv, tuple(fa))


def pullback_top(chi: GraphMorphism, om: Omega) -> Subgraph:
    """The subgraph classified by ``chi``."""
    g = chi.src
    return Subgraph(
        g,
        frozenset(v for v in range(g.nv) if chi.fv[v] == 1),
        frozenset(a for a in range(g.na) if chi.fa[a] == om.full),
    )


# ---------------------------------------------------------------------------
# double negation reflectors


def simplify(g: XMGraph) -> tuple[XMGraph, GraphMorphism]:
    """Identify arcs with equal parametrized incidence."""
    first: dict[tuple[int, ...], int] = {}
    pairs = []
    for a in range(g.na):
        key = g.inc[a]
        if key in first:
            pairs.append((first[key], a))
        else:
            first[key] = a
    return quotient(g, (), pairs)


def complete_graph(
    theory: Theory, n: int, vnames: Sequence[str] | None = None, max_cells: int = DEFAULT_MAX_CELLS
) -> XMGraph:
    """All functions ``X -> range(n)`` as arcs, acting by precomposition."""
    nx = theory.nx
    if n**nx > max_cells:
        raise SizeBound(f"{n}^{nx} arcs exceed the cap", cap=max_cells)
    funcs = list(itertools.product(range(n), repeat=nx))
    pos = {f: i for i, f in enumerate(funcs)}
    act = theory.act
    mact = [
        [pos[tuple(f[act[x][m]] for x in range(nx))] for m in range(theory.nm)] for f in funcs
    ]
    loop = [pos[(v,) * nx] for v in range(n)] if theory.reflexive else None
    names = list(vnames) if vnames is not None else [f"v{v}" for v in range(n)]
    anames = ["(" + ",".join(names[v] for v in f) + ")" for f in funcs]
    return make_graph(
        theory, n, [list(f) for f in funcs], mact, loop, vnames=names, anames=anames, check=False
    )


def sheafify(g: XMGraph, max_cells: int = DEFAULT_MAX_CELLS) -> tuple[XMGraph, GraphMorphism]:
    """The complete graph on ``G(V)`` with the unit ``G -> K`` sending an arc to its incidence."""
    if g.reflexive:
        raise ReflexiveUnsupported("sheafification is provided for non-reflexive theories")
    k = complete_graph(g.theory, g.nv, [g.vname(v) for v in range(g.nv)], max_cells)
    index = {row: i for i, row in enumerate(k.inc)}
    unit = GraphMorphism(g, k, tuple(range(g.nv)), tuple(index[g.inc[a]] for a in range(g.na)))
    return k, unit
