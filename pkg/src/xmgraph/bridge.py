"""Classical hypergraphs and their passage to symmetric X-graphs.

A hypergraph is a vertex set, an edge set and an incidence map sending each
edge to a set of vertices.  Morphisms are strict: the image of an edge's
vertex set is exactly the vertex set of the image edge.

The nerve over ``X`` (with ``M = Aut(X)``) has the hypergraph's vertices and,
as arcs, the pairs ``(β, f)`` with ``f: X -> V`` whose image is the vertex
set of ``β``.  Realization collapses arc orbits back to edges.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .algebra import Theory, standard_theory
from .errors import NotSymmetricTheory
from .graphcore import (
    GraphMorphism,
    Subgraph,
    XMGraph,
    arc_orbits,
    image,
    induced,
    make_graph,
)
from .toposops import DEFAULT_MAX_CELLS, complete_graph


@dataclass(frozen=True)
class Hypergraph:
    verts: tuple[str, ...]
    edges: tuple[str, ...]
    phi: tuple[frozenset[int], ...]

    @property
    def nv(self) -> int:
        return len(self.verts)

    @property
    def ne(self) -> int:
        return len(self.edges)

    def edge_sizes(self) -> list[int]:
        return [len(s) for s in self.phi]


def hypergraph(
    verts: Sequence[str] | int, edges: Sequence[Sequence[int]], names: Sequence[str] | None = None
) -> Hypergraph:
    """Build a hypergraph from vertex names (or a count) and edge vertex lists."""
    vnames = tuple(str(v) for v in range(verts)) if isinstance(verts, int) else tuple(verts)
    phi = tuple(frozenset(e) for e in edges)
    for s in phi:
        if any(not (0 <= v < len(vnames)) for v in s):
            raise ValueError("edge refers to an unknown vertex")
    enames = tuple(names) if names is not None else tuple(f"e{i}" for i in range(len(phi)))
    if len(enames) != len(phi):
        raise ValueError("one name per edge is required")
    return Hypergraph(vnames, enames, phi)


@dataclass(frozen=True)
class HyperMorphism:
    src: Hypergraph
    dst: Hypergraph
    fv: tuple[int, ...]
    fe: tuple[int, ...]

    def is_iso(self) -> bool:
        return (
            sorted(self.fv) == list(range(self.dst.nv))
            and sorted(self.fe) == list(range(self.dst.ne))
        )


def is_hyper_morphism(f: HyperMorphism) -> bool:
    return all(
        frozenset(f.fv[v] for v in f.src.phi[e]) == f.dst.phi[f.fe[e]] for e in range(f.src.ne)
    )


def hyper_homs(h: Hypergraph, k: Hypergraph) -> Iterator[HyperMorphism]:
    """All strict morphisms, by brute force over vertex maps."""
    by_set: dict[frozenset[int], list[int]] = {}
    for e, s in enumerate(k.phi):
        by_set.setdefault(s, []).append(e)
    for fv in itertools.product(range(k.nv), repeat=h.nv):
        choices = [by_set.get(frozenset(fv[v] for v in s), []) for s in h.phi]
        for fe in itertools.product(*choices):
            yield HyperMorphism(h, k, tuple(fv), tuple(fe))


def hyper_hom_count(h: Hypergraph, k: Hypergraph) -> int:
    total = 0
    for fv in itertools.product(range(k.nv), repeat=h.nv):
        prod = 1
        for s in h.phi:
            img = frozenset(fv[v] for v in s)
            prod *= sum(1 for t in k.phi if t == img)
            if not prod:
                break
        total += prod
    return total


def hyper_product(h: Hypergraph, k: Hypergraph) -> tuple[Hypergraph, HyperMorphism, HyperMorphism]:
    """Categorical product: edges are ``(e1, e2, S)`` with ``S`` covering both incidences."""
    verts = [(a, b) for a in range(h.nv) for b in range(k.nv)]
    vpos = {c: i for i, c in enumerate(verts)}
    edges, phi, p1e, p2e = [], [], [], []
    for e1, s1 in enumerate(h.phi):
        for e2, s2 in enumerate(k.phi):
            cells = [(a, b) for a in sorted(s1) for b in sorted(s2)]
            for r in range(len(cells) + 1):
                for sub in itertools.combinations(cells, r):
                    if {a for a, _ in sub} == s1 and {b for _, b in sub} == s2:
                        edges.append(f"({h.edges[e1]},{k.edges[e2]},{len(phi)})")
                        phi.append(frozenset(vpos[c] for c in sub))
                        p1e.append(e1)
                        p2e.append(e2)
    prod = Hypergraph(
        tuple(f"({h.verts[a]},{k.verts[b]})" for a, b in verts), tuple(edges), tuple(phi)
    )
    p1 = HyperMorphism(prod, h, tuple(a for a, _ in verts), tuple(p1e))
    p2 = HyperMorphism(prod, k, tuple(b for _, b in verts), tuple(p2e))
    return prod, p1, p2


# ---------------------------------------------------------------------------
# nerve and realization


def symmetric_theory(xsize: int) -> Theory:
    return standard_theory("s", xsize)


def nerve(h: Hypergraph, xsize: int) -> XMGraph:
    """Arcs ``(β, f)`` with ``image(f) = φ(β)``, by edge and then lexicographic ``f``."""
    t = symmetric_theory(xsize)
    arcs = _nerve_cells(h, xsize)
    pos = {c: i for i, c in enumerate(arcs)}
    inc = [list(f) for _, f in arcs]
    mact = [
        [pos[(e, tuple(f[t.act[x][m]] for x in range(xsize)))] for m in range(t.nm)]
        for e, f in arcs
    ]
    anames = [f"{h.edges[e]}:" + ",".join(h.verts[v] for v in f) for e, f in arcs]
    return make_graph(t, h.nv, inc, mact, vnames=h.verts, anames=anames, check=False)


def _require_symmetric(g: XMGraph) -> None:
    t = g.theory
    maps = {t.action.map_of(m) for m in range(t.nm)}
    perms = set(itertools.permutations(range(t.nx)))
    if t.reflexive or t.nm != math.factorial(t.nx) or maps != perms:
        raise NotSymmetricTheory("realization needs the theory (X, Aut(X))")


def realization(g: XMGraph) -> tuple[Hypergraph, tuple[int, ...]]:
    """Edges are arc orbits; returns the hypergraph and the arc-to-edge map."""
    _require_symmetric(g)
    orbits = arc_orbits(g)
    edge_of = [0] * g.na
    for i, orb in enumerate(orbits):
        for a in orb:
            edge_of[a] = i
    phi = tuple(frozenset(g.inc[orb[0]]) for orb in orbits)
    h = Hypergraph(
        tuple(g.vname(v) for v in range(g.nv)),
        tuple(f"[{g.aname(orb[0])}]" for orb in orbits),
        phi,
    )
    return h, tuple(edge_of)


def realization_map(f: GraphMorphism) -> HyperMorphism:
    rs, es = realization(f.src)
    rd, ed = realization(f.dst)
    fe = [0] * rs.ne
    for a in range(f.src.na):
        fe[es[a]] = ed[f.fa[a]]
    return HyperMorphism(rs, rd, f.fv, tuple(fe))


def nerve_map(f: HyperMorphism, xsize: int) -> GraphMorphism:
    ns, nd = nerve(f.src, xsize), nerve(f.dst, xsize)
    dpos = {c: i for i, c in enumerate(_nerve_cells(f.dst, xsize))}
    fa = tuple(
        dpos[(f.fe[e], tuple(f.fv[v] for v in fn))] for e, fn in _nerve_cells(f.src, xsize)
    )
    return GraphMorphism(ns, nd, f.fv, fa)


def _nerve_cells(h: Hypergraph, xsize: int) -> list[tuple[int, tuple[int, ...]]]:
    out = []
    for e, s in enumerate(h.phi):
        if len(s) > xsize:
            continue
        for fn in itertools.product(sorted(s), repeat=xsize):
            if set(fn) == s:
                out.append((e, fn))
    return out


def counit(h: Hypergraph, xsize: int) -> HyperMorphism:
    """``ε_h: R N(h) -> h``, identity on vertices and ``[(β, f)] -> β`` on edges."""
    cells = _nerve_cells(h, xsize)
    rn, edge_of = realization(nerve(h, xsize))
    fe = [0] * rn.ne
    for a, (e, _) in enumerate(cells):
        fe[edge_of[a]] = e
    return HyperMorphism(rn, h, tuple(range(h.nv)), tuple(fe))


def uniform_check(h: Hypergraph, k: int) -> bool:
    return all(len(s) == k for s in h.phi)


def fixed_point_check(h: Hypergraph, k: int) -> bool:
    """Whether the counit at ``h`` is an isomorphism."""
    return counit(h, k).is_iso()


def hyper_is_injective(h: Hypergraph) -> bool:
    """Non-empty and every vertex subset, the empty one included, is an edge."""
    if h.nv == 0:
        return False
    have = set(h.phi)
    return all(
        frozenset(s) in have
        for r in range(h.nv + 1)
        for s in itertools.combinations(range(h.nv), r)
    )


# ---------------------------------------------------------------------------
# bipartite representation, duals, line graphs and Kneser


@dataclass(frozen=True)
class BipartiteGraph:
    v1: tuple[str, ...]
    v2: tuple[str, ...]
    arcs: tuple[tuple[int, int], ...]


def bipartite_rep(h: Hypergraph) -> BipartiteGraph:
    """Arcs ``(v, e)`` for each membership ``v ∈ φ(e)``."""
    arcs = tuple((v, e) for v in range(h.nv) for e in range(h.ne) if v in h.phi[e])
    return BipartiteGraph(h.verts, h.edges, arcs)


def from_bipartite(b: BipartiteGraph) -> Hypergraph:
    phi = [set() for _ in b.v2]
    for v, e in b.arcs:
        phi[e].add(v)
    return Hypergraph(b.v1, b.v2, tuple(frozenset(s) for s in phi))


def dualize(h: Hypergraph) -> Hypergraph:
    """Swap the two sides of the bipartite representation."""
    b = bipartite_rep(h)
    return from_bipartite(BipartiteGraph(b.v2, b.v1, tuple((e, v) for v, e in b.arcs)))


def hyper_iso(h: Hypergraph, k: Hypergraph) -> HyperMorphism | None:
    if h.nv != k.nv or h.ne != k.ne or sorted(h.edge_sizes()) != sorted(k.edge_sizes()):
        return None
    for f in hyper_homs(h, k):
        if f.is_iso():
            return f
    return None


def line_graph(h: Hypergraph, xsize: int, max_cells: int = DEFAULT_MAX_CELLS) -> XMGraph:
    """Vertices are edges of ``h``; arcs are maps ``X -> E`` whose edges share a vertex."""
    t = symmetric_theory(xsize)
    k = complete_graph(t, h.ne, h.edges, max_cells)
    keep = [
        a
        for a in range(k.na)
        if any(all(v in h.phi[e] for e in k.inc[a]) for v in range(h.nv))
    ]
    return induced(k, range(k.nv), keep)[0]


@dataclass(frozen=True)
class Kneser:
    """``∼L`` inside the injective hull of the line graph ``L``."""

    hull: XMGraph
    line: Subgraph
    part: Subgraph


def kneser(h: Hypergraph, xsize: int, max_cells: int = DEFAULT_MAX_CELLS) -> Kneser:
    from .constructions import injective_hull
    from .logic import subtract

    lg = line_graph(h, xsize, max_cells)
    q, eta = injective_hull(lg, max_cells=max_cells)
    line = image(eta)
    return Kneser(q, line, subtract(line))


def kneser_hypergraph(h: Hypergraph, xsize: int, trim: bool = False) -> Hypergraph:
    """Realize the Kneser part; ``trim`` keeps only edges of size ``xsize``."""
    kn = kneser(h, xsize)
    g, _ = kn.part.to_graph()
    r, _ = realization(g)
    if not trim:
        return r
    keep = [e for e in range(r.ne) if len(r.phi[e]) == xsize]
    return Hypergraph(r.verts, tuple(r.edges[e] for e in keep), tuple(r.phi[e] for e in keep))
