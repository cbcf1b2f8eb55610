"""Adjoint triples between graph categories and the global-sections family.

A :class:`TheoryMap` ``j`` sends the theory of ``(X, M)`` to the theory of
``(X', M')``.  It induces three functors::

    extension j_!  ⊣  restriction j^*  ⊣  coextension j_*

Restriction keeps cells and reindexes structure.  Extension is a colimit of
representables over the category of elements, computed with the quotient
engine of :mod:`xmgraph.toposops`.  Coextension evaluates hom-sets out of
restricted representables.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Sequence
from dataclasses import dataclass

from .algebra import (
    ActionMorphism,
    FiniteMonoid,
    RightAction,
    Theory,
    _compose,
    _table_name,
    check_action_morphism,
    endo_submonoid,
    inclusion_morphism,
    make_theory,
    monoid_properties,
)
from .errors import BadTheory, ChaoticRequiresReflexive, NotMonoidHom, TheoryMismatch
from .graphcore import (
    GraphMorphism,
    Subgraph,
    XMGraph,
    classifying_map,
    components,
    hom_enumerate,
    make_graph,
    representable,
    terminal,
)
from .toposops import DEFAULT_MAX_CELLS, _bounded_homs, complete_graph, coproduct, quotient

# ---------------------------------------------------------------------------
# theory maps


@dataclass(frozen=True)
class TheoryMap:
    """A functor between theories: ``x -> f(x)``, ``m -> phi(m)``, ``ℓ -> ℓ``."""

    src: Theory
    dst: Theory
    f: tuple[int, ...]
    phi: tuple[int, ...]

    @property
    def action_morphism(self) -> ActionMorphism:
        return ActionMorphism(self.src.action, self.dst.action, self.f, self.phi)


def theory_map(src: Theory, dst: Theory, f: Sequence[int], phi: Sequence[int]) -> TheoryMap:
    """Validate an action morphism and its compatibility with the loops.

    A reflexive source needs a reflexive target with ``phi`` carrying each
    fixed element to the fixed element of the image point.  A
    non-reflexive source may map into a reflexive target.
    """
    j = TheoryMap(src, dst, tuple(f), tuple(phi))
    check_action_morphism(j.action_morphism)
    if src.reflexive:
        if not dst.reflexive:
            raise BadTheory("a reflexive theory only maps to a reflexive theory")
        for x in range(src.nx):
            if j.phi[src.fix_of[x]] != dst.fix_of[j.f[x]]:
                raise BadTheory("phi does not preserve the loop composites", point=x)
    return j


def identity_map(theory: Theory) -> TheoryMap:
    return TheoryMap(theory, theory, tuple(range(theory.nx)), tuple(range(theory.nm)))


def point_theory() -> Theory:
    """The theory of ``(∅, {1})``: graphs are pairs of bare sets."""
    return make_theory(endo_submonoid(0, "o"))


def iota(theory: Theory) -> TheoryMap:
    """The inclusion of ``(∅, {1})``; its triple gives Proj and Inj."""
    if theory.reflexive:
        raise BadTheory("the empty action has no reflexive structure")
    return theory_map(point_theory(), theory, (), (theory.unit,))


def action_inclusion(src: Theory, dst: Theory) -> TheoryMap:
    """Identity on points, elements matched by their maps (``o(n) -> s(n)`` and so on)."""
    am = inclusion_morphism(src.action, dst.action)
    return theory_map(src, dst, am.f, am.phi)


def reflexivization(theory: Theory) -> TheoryMap:
    """Freely add the loop: ``(X, M) -> (X, M ∪ constants)`` made reflexive.

    The action must be faithful so that elements can be read as maps.
    """
    if theory.reflexive:
        raise BadTheory("theory is already reflexive")
    n = theory.nx
    maps = [theory.action.map_of(m) for m in range(theory.nm)]
    if len(set(maps)) != len(maps):
        raise BadTheory("reflexivization needs a faithful action")
    consts = {tuple([c] * n) for c in range(n)}
    tables = sorted(set(maps) | consts)
    pos = {t: i for i, t in enumerate(tables)}
    mul = tuple(tuple(pos[_compose(a, b)] for b in tables) for a in tables)
    for a in tables:
        for b in tables:
            if _compose(a, b) not in pos:
                raise BadTheory("adding constants does not give a monoid")
    monoid = FiniteMonoid(mul, pos[tuple(range(n))], tuple(map(_table_name, tables)))
    act = tuple(tuple(t[x] for t in tables) for x in range(n))
    dst = make_theory(RightAction(monoid, act, theory.action.names), reflexive=True)
    return theory_map(theory, dst, tuple(range(n)), tuple(pos[m] for m in maps))


def extend_by_identity(src: Theory, dst: Theory, f: Sequence[int]) -> TheoryMap:
    """Point inclusion ``X' -> X`` with each element extended by the identity off ``f(X')``.

    ``S_2`` on ``{s, t}`` into ``S_3`` on three points is the typical case.
    """
    lookup = {dst.action.map_of(m): m for m in range(dst.nm)}
    phi = []
    for m in range(src.nm):
        table = list(range(dst.nx))
        for x in range(src.nx):
            table[f[x]] = f[src.act[x][m]]
        key = tuple(table)
        if key not in lookup:
            raise NotMonoidHom("extended element is missing from the target", element=m)
        phi.append(lookup[key])
    return theory_map(src, dst, f, phi)


# ---------------------------------------------------------------------------
# restriction


def _check_over(g: XMGraph, theory: Theory, role: str) -> None:
    if g.theory != theory:
        raise TheoryMismatch(f"graph is not over the {role} theory of the map")


def restriction(j: TheoryMap, g: XMGraph) -> XMGraph:
    """``j^*g``: same cells, incidence through ``f`` and action through ``phi``."""
    _check_over(g, j.dst, "target")
    inc = [[g.inc[a][j.f[x]] for x in range(j.src.nx)] for a in range(g.na)]
    mact = [[g.mact[a][j.phi[m]] for m in range(j.src.nm)] for a in range(g.na)]
    loop = list(g.loop) if j.src.reflexive else None
    return make_graph(
        j.src, g.nv, inc, mact, loop, vnames=g.vnames, anames=g.anames, check=False
    )


def restriction_map(j: TheoryMap, h: GraphMorphism, src: XMGraph | None = None, dst: XMGraph | None = None) -> GraphMorphism:
    src = src or restriction(j, h.src)
    dst = dst or restriction(j, h.dst)
    return GraphMorphism(src, dst, h.fv, h.fa)


# ---------------------------------------------------------------------------
# extension


@dataclass(frozen=True)
class Extension:
    """``j_!g`` with its unit ``g -> j^*j_!g``.

    The colimit is a quotient of a coproduct holding one representable per
    source cell, vertex copies first; ``vclass`` and ``aclass`` send each
    cell of that coproduct to its class.
    """

    graph: XMGraph
    unit: GraphMorphism
    source: XMGraph
    vclass: tuple[int, ...]
    aclass: tuple[int, ...]


def extension(j: TheoryMap, g: XMGraph) -> Extension:
    _check_over(g, j.src, "source")
    rv, ra = representable(j.dst, "V"), representable(j.dst, "A")
    cop = coproduct([rv] * g.nv + [ra] * g.na, theory=j.dst)
    big = cop.apex
    legs = cop.legs
    vleg = legs[: g.nv]
    aleg = legs[g.nv :]
    vpairs, apairs = [], []
    for a in range(g.na):
        leg = aleg[a]
        for x in range(j.src.nx):
            v = g.inc[a][x]
            vpairs.append((vleg[v].fv[0], leg.fv[j.f[x]]))
        for m in range(j.src.nm):
            b = g.mact[a][m]
            apairs.append((aleg[b].fa[j.dst.unit], leg.fa[j.phi[m]]))
    if j.src.reflexive:
        for v in range(g.nv):
            apairs.append((aleg[g.loop[v]].fa[j.dst.unit], vleg[v].fa[0]))
    q, qm = quotient(big, vpairs, apairs)
    # prefer the names of the generating cells
    vnames = list(q.vnames) if q.vnames else [q.vname(i) for i in range(q.nv)]
    anames = [q.aname(i) for i in range(q.na)]
    named_v: set[int] = set()
    named_a: set[int] = set()
    for v in range(g.nv):
        c = qm.fv[vleg[v].fv[0]]
        if c not in named_v:
            vnames[c] = g.vname(v)
            named_v.add(c)
    for a in range(g.na):
        c = qm.fa[aleg[a].fa[j.dst.unit]]
        if c not in named_a:
            anames[c] = g.aname(a)
            named_a.add(c)
    for c in range(q.nv):
        if c not in named_v:
            vnames[c] = _composite_name(big, qm, "V", c)
    for c in range(q.na):
        if c not in named_a:
            anames[c] = _composite_name(big, qm, "A", c)
    q = dataclasses.replace(q, vnames=tuple(vnames), anames=tuple(anames))
    unit_dst = restriction(j, q)
    unit = GraphMorphism(
        g,
        unit_dst,
        tuple(qm.fv[vleg[v].fv[0]] for v in range(g.nv)),
        tuple(qm.fa[aleg[a].fa[j.dst.unit]] for a in range(g.na)),
    )
    return Extension(
        q,
        unit,
        g,
        qm.fv,
        qm.fa,
    )


def _composite_name(big: XMGraph, qm: GraphMorphism, kind: str, c: int) -> str:
    cells = qm.fv if kind == "V" else qm.fa
    first = cells.index(c)
    return big.vname(first) if kind == "V" else big.aname(first)


def extension_map(j: TheoryMap, h: GraphMorphism, es: Extension, ed: Extension) -> GraphMorphism:
    """``j_!h`` between two computed extensions; copy of ``c`` goes to copy of ``h(c)``."""
    fv = [0] * es.graph.nv
    fa = [0] * es.graph.na
    nvv = 1
    nav = 1 if j.dst.reflexive else 0
    nva, naa = j.dst.nx, j.dst.nm
    src, dst = es.source, ed.source
    # coproduct layout: vertex copies first, then arc copies
    def vcell(g: XMGraph, kind: str, c: int, i: int) -> int:
        return (c * nvv + i) if kind == "V" else (g.nv * nvv + c * nva + i)

    def acell(g: XMGraph, kind: str, c: int, i: int) -> int:
        return (c * nav + i) if kind == "V" else (g.nv * nav + c * naa + i)

    for kind, count, target in (("V", src.nv, h.fv), ("A", src.na, h.fa)):
        nv_local = nvv if kind == "V" else nva
        na_local = nav if kind == "V" else naa
        for c in range(count):
            d = target[c]
            for i in range(nv_local):
                fv[es.vclass[vcell(src, kind, c, i)]] = ed.vclass[vcell(dst, kind, d, i)]
            for i in range(na_local):
                fa[es.aclass[acell(src, kind, c, i)]] = ed.aclass[acell(dst, kind, d, i)]
    return GraphMorphism(es.graph, ed.graph, tuple(fv), tuple(fa))


def extension_counit(j: TheoryMap, h: XMGraph, ext: Extension | None = None) -> GraphMorphism:
    """``j_!j^*h -> h``: the copy of a cell ``c`` maps by the classifying map of ``c``."""
    res = restriction(j, h)
    ext = ext or extension(j, res)
    fv = [0] * ext.graph.nv
    fa = [0] * ext.graph.na
    nvv, nav = 1, (1 if j.dst.reflexive else 0)
    nva, naa = j.dst.nx, j.dst.nm
    for v in range(h.nv):
        chi = classifying_map(h, ("V", v))
        for i in range(nvv):
            fv[ext.vclass[v * nvv + i]] = chi.fv[i]
        for i in range(nav):
            fa[ext.aclass[v * nav + i]] = chi.fa[i]
    for a in range(h.na):
        chi = classifying_map(h, ("A", a))
        for i in range(nva):
            fv[ext.vclass[h.nv * nvv + a * nva + i]] = chi.fv[i]
        for i in range(naa):
            fa[ext.aclass[h.nv * nav + a * naa + i]] = chi.fa[i]
    return GraphMorphism(ext.graph, h, tuple(fv), tuple(fa))


# ---------------------------------------------------------------------------
# coextension


@dataclass(frozen=True)
class Coextension:
    """``j_*g`` with its counit ``j^*j_*g -> g``.

    A vertex is a morphism ``j^*V̲ -> g`` and an arc a morphism ``j^*A̲ -> g``.
    """

    graph: XMGraph
    counit: GraphMorphism
    source: XMGraph
    vert_maps: tuple[GraphMorphism, ...]
    arc_maps: tuple[GraphMorphism, ...]


def coextension(j: TheoryMap, g: XMGraph, max_cells: int = DEFAULT_MAX_CELLS) -> Coextension:
    _check_over(g, j.src, "source")
    rv, ra = representable(j.dst, "V"), representable(j.dst, "A")
    jv, ja = restriction(j, rv), restriction(j, ra)
    verts = _bounded_homs(jv, g, max_cells)
    arcs = _bounded_homs(ja, g, max_cells)
    vindex = {p.key(): i for i, p in enumerate(verts)}
    aindex = {p.key(): i for i, p in enumerate(arcs)}
    xmaps = [classifying_map(ra, ("V", x)) for x in range(j.dst.nx)]
    mmaps = [classifying_map(ra, ("A", m)) for m in range(j.dst.nm)]
    inc = [[vindex[_pre(xm, psi)] for xm in xmaps] for psi in arcs]
    mact = [[aindex[_pre(mm, psi)] for mm in mmaps] for psi in arcs]
    loop = None
    if j.dst.reflexive:
        to_v = GraphMorphism(ra, rv, (0,) * ra.nv, (0,) * ra.na)
        loop = [aindex[_pre(to_v, psi)] for psi in verts]
    cg = make_graph(j.dst, len(verts), inc, mact, loop, check=False)
    res = restriction(j, cg)
    counit = GraphMorphism(
        res,
        g,
        tuple(p.fv[0] for p in verts),
        tuple(p.fa[j.dst.unit] for p in arcs),
    )
    return Coextension(cg, counit, g, tuple(verts), tuple(arcs))


def _pre(k: GraphMorphism, psi: GraphMorphism) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Key of ``j^*(k)`` followed by ``psi``; restriction keeps the cell maps."""
    return (tuple(psi.fv[v] for v in k.fv), tuple(psi.fa[a] for a in k.fa))


def coextension_map(j: TheoryMap, h: GraphMorphism, cs: Coextension, cd: Coextension) -> GraphMorphism:
    """``j_*h``: postcompose every hom with ``h``."""
    vindex = {p.key(): i for i, p in enumerate(cd.vert_maps)}
    aindex = {p.key(): i for i, p in enumerate(cd.arc_maps)}
    fv = tuple(vindex[(tuple(h.fv[v] for v in p.fv), tuple(h.fa[a] for a in p.fa))] for p in cs.vert_maps)
    fa = tuple(aindex[(tuple(h.fv[v] for v in p.fv), tuple(h.fa[a] for a in p.fa))] for p in cs.arc_maps)
    return GraphMorphism(cs.graph, cd.graph, fv, fa)


def coextension_unit(j: TheoryMap, h: XMGraph, coext: Coextension | None = None) -> GraphMorphism:
    """``h -> j_*j^*h``: a cell goes to its restricted classifying map."""
    res = restriction(j, h)
    coext = coext or coextension(j, res)
    vindex = {p.key(): i for i, p in enumerate(coext.vert_maps)}
    aindex = {p.key(): i for i, p in enumerate(coext.arc_maps)}
    fv = tuple(vindex[classifying_map(h, ("V", v)).key()] for v in range(h.nv))
    fa = tuple(aindex[classifying_map(h, ("A", a)).key()] for a in range(h.na))
    return GraphMorphism(h, coext.graph, fv, fa)


# ---------------------------------------------------------------------------
# pieces, points, discrete and chaotic


def pi0(g: XMGraph) -> list[Subgraph]:
    """Connected components."""
    return components(g)


def points(g: XMGraph) -> list[GraphMorphism]:
    """Global points ``1 -> g``; for reflexive graphs these are the vertices."""
    return hom_enumerate(terminal(g.theory), g)


def discrete(theory: Theory, n: int) -> XMGraph:
    """The constant graph on ``n``: each vertex carries one fixed loop and nothing else."""
    inc = [[v] * theory.nx for v in range(n)]
    mact = [[v] * theory.nm for v in range(n)]
    loop = list(range(n)) if theory.reflexive else None
    return make_graph(theory, n, inc, mact, loop, check=False)


def chaotic(theory: Theory, n: int, max_cells: int = DEFAULT_MAX_CELLS) -> XMGraph:
    """Vertex set ``n`` and every function ``X -> n`` as an arc."""
    if not theory.reflexive:
        raise ChaoticRequiresReflexive("chaotic graphs need a reflexive theory")
    return complete_graph(theory, n, max_cells=max_cells)


@dataclass(frozen=True)
class GlobalFamily:
    components: tuple[Subgraph, ...]
    points: tuple[GraphMorphism, ...]


def global_family(g: XMGraph) -> GlobalFamily:
    return GlobalFamily(tuple(pi0(g)), tuple(points(g)))


@dataclass(frozen=True)
class OrbitStabilizer:
    orbit: frozenset[int]
    stabilizer: frozenset[int]


def orbit_stabilizer(action: RightAction, x: int) -> OrbitStabilizer:
    """Orbit ``{x.m}`` and stabilizer ``{m : x.m = x}``.

    For a group the product of the two sizes is checked against ``|M|``.

    >>> from xmgraph.algebra import endo_submonoid
    >>> os = orbit_stabilizer(endo_submonoid(3, "s"), 0)
    >>> len(os.orbit), len(os.stabilizer)
    (3, 2)
    """
    n = action.monoid.size
    orbit = frozenset(action.act[x][m] for m in range(n))
    stab = frozenset(m for m in range(n) if action.act[x][m] == x)
    if monoid_properties(action.monoid).is_group:
        assert len(orbit) * len(stab) == n, "orbit-stabilizer law failed"
    return OrbitStabilizer(orbit, stab)


__all__ = [
    "TheoryMap",
    "theory_map",
    "identity_map",
    "point_theory",
    "iota",
    "action_inclusion",
    "reflexivization",
    "extend_by_identity",
    "restriction",
    "restriction_map",
    "Extension",
    "extension",
    "extension_map",
    "extension_counit",
    "Coextension",
    "coextension",
    "coextension_map",
    "coextension_unit",
    "pi0",
    "points",
    "discrete",
    "chaotic",
    "GlobalFamily",
    "global_family",
    "OrbitStabilizer",
    "orbit_stabilizer",
]