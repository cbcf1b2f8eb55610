"""Negation, subtraction and the predicates expressed through them.

The subgraph lattice of an (X,M)-graph is both a Heyting and a co-Heyting
algebra.  ``neg`` is the pseudo-complement (largest disjoint subgraph) and
``subtract`` the supplement (smallest subgraph whose join with ``s`` is
everything).
"""

from __future__ import annotations

from typing import Literal

from .errors import BadShape
from .graphcore import (
    Subgraph,
    XMGraph,
    components,
    generate,
    whole,
)
from .toposops import coproduct

PredicateKind = Literal["star", "transversal", "vertex_cover", "independent", "intersecting_family"]


def neg(s: Subgraph) -> Subgraph:
    """Largest subgraph disjoint from ``s``.

    Keep every vertex outside ``s`` and every arc whose whole orbit and all
    of whose incident vertices stay outside ``s``.
    """
    g = s.parent
    verts = frozenset(v for v in range(g.nv) if v not in s.verts)
    arcs = frozenset(
        a
        for a in range(g.na)
        if all(b not in s.arcs for b in g.mact[a])
        and all(g.inc[b][x] not in s.verts for b in g.mact[a] for x in range(g.theory.nx))
    )
    return Subgraph(g, verts, arcs)


def subtract(s: Subgraph) -> Subgraph:
    """Smallest subgraph whose join with ``s`` is the whole graph."""
    g = s.parent
    return generate(
        g,
        (v for v in range(g.nv) if v not in s.verts),
        (a for a in range(g.na) if a not in s.arcs),
    )


def nbr(s: Subgraph) -> Subgraph:
    """Neighbourhood ``∼¬s``: ``s`` together with everything touching it."""
    return subtract(neg(s))


def vertex_sub(g: XMGraph, v: int) -> Subgraph:
    return generate(g, verts=[v])


def arc_sub(g: XMGraph, a: int) -> Subgraph:
    return generate(g, arcs=[a])


def _orbit_representatives(g: XMGraph) -> list[int]:
    seen: set[int] = set()
    reps = []
    for a in range(g.na):
        if a in seen:
            continue
        reps.append(a)
        seen |= {b for b in g.mact[a] if a in g.mact[b]}
    return reps


def deck(g: XMGraph, mode: Literal["vertex", "edge"] = "vertex") -> XMGraph:
    """Disjoint union of the cards ``¬v`` (vertex mode) or ``∼⟨a⟩`` (edge mode).

    In edge mode one card is taken per orbit of arcs, an orbit being a
    class of mutually reachable arcs under the action.
    """
    if mode == "vertex":
        cards = [neg(vertex_sub(g, v)) for v in range(g.nv)]
    elif mode == "edge":
        cards = [subtract(arc_sub(g, a)) for a in _orbit_representatives(g)]
    else:
        raise ValueError(f"unknown deck mode {mode!r}")
    return coproduct([c.to_graph()[0] for c in cards], theory=g.theory).apex


def _no_arcs(s: Subgraph) -> bool:
    """No arcs apart from the distinguished loops a reflexive graph must carry."""
    return s.arcs <= s.parent.distinguished()


def _vertex_only(s: Subgraph) -> bool:
    return s == generate(s.parent, verts=s.verts)


def predicate(kind: PredicateKind, s: Subgraph) -> bool:
    """Evaluate a graph-theoretic predicate through ``¬`` and ``∼``.

    ``star``: ``s`` is a single vertex ``v``, the graph is connected and
    ``¬v`` has no arcs.  ``transversal``: ``¬s`` has no arcs.
    ``vertex_cover``: ``¬s`` is empty.  ``independent``: ``¬¬s = s``.
    ``intersecting_family``: for every arc ``α`` of ``s``, the negation of
    ``⟨α⟩`` inside ``s`` has no arcs.
    """
    g = s.parent
    if kind == "star":
        if len(s.verts) != 1 or not _vertex_only(s):
            raise BadShape("star expects a single vertex", kind=kind)
        return len(components(g)) == 1 and _no_arcs(neg(s))
    if kind in ("transversal", "vertex_cover", "independent"):
        if not _vertex_only(s):
            raise BadShape(f"{kind} expects a set of vertices", kind=kind)
        if kind == "transversal":
            return _no_arcs(neg(s))
        if kind == "vertex_cover":
            return neg(s).is_empty()
        return neg(neg(s)) == s
    if kind == "intersecting_family":
        sub, inc = s.to_graph()
        back = {a: i for i, a in enumerate(inc.fa)}
        for a in s.arcs:
            local = neg(arc_sub(sub, back[a]))
            if not _no_arcs(local):
                return False
        return True
    raise BadShape(f"unknown predicate {kind!r}", kind=kind)


def lattice_laws_hold(s: Subgraph) -> bool:
    """``s ∧ ¬s = ∅`` and ``s ∨ ∼s = ⊤``."""
    return s.meet(neg(s)).is_empty() and s.join(subtract(s)) == whole(s.parent)
