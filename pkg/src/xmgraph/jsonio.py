"""JSON documents for monoids, actions, theories, graphs, morphisms and hypergraphs.

Every ``*_to_doc`` function emits the canonical form: cells appear in id
order and mappings keyed by names keep that order.  Parsing a canonical
document and emitting it again reproduces it byte for byte (see
:func:`dumps`).
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from typing import Any

from .algebra import (
    FiniteMonoid,
    RightAction,
    Theory,
    build_action,
    build_monoid,
    make_theory,
    standard_theory,
)
from .bridge import Hypergraph
from .errors import ParseError, XMError
from .graphcore import GraphMorphism, XMGraph, check_morphism, make_graph

Doc = dict[str, Any]


def dumps(doc: Any) -> str:
    """Canonical text: two-space indent, insertion order, trailing newline."""
    return json.dumps(doc, indent=2, ensure_ascii=False, default=_fallback) + "\n"


def _fallback(obj: Any) -> Any:
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


def _get(doc: Mapping[str, Any], key: str, kind: type | tuple[type, ...] | None = None) -> Any:
    if not isinstance(doc, Mapping):
        raise ParseError("expected a JSON object", got=type(doc).__name__)
    if key not in doc:
        raise ParseError(f"missing key {key!r}", key=key)
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"key {key!r} has the wrong type", key=key)
    return value


def unique_names(names: list[str]) -> list[str]:
    """Disambiguate repeated names by suffixing ``#id``."""
    seen: dict[str, int] = {}
    for n in names:
        seen[n] = seen.get(n, 0) + 1
    return [n if seen[n] == 1 else f"{n}#{i}" for i, n in enumerate(names)]


def _index(names: list[str], what: str) -> dict[str, int]:
    pos = {n: i for i, n in enumerate(names)}
    if len(pos) != len(names):
        raise ParseError(f"duplicate {what} names")
    return pos


def _lookup(pos: Mapping[str, int], name: Any, what: str) -> int:
    if name not in pos:
        raise ParseError(f"unknown {what} {name!r}", name=name)
    return pos[name]


# ---------------------------------------------------------------------------
# monoids, actions and theories


def monoid_to_doc(m: FiniteMonoid) -> Doc:
    return {
        "elems": list(m.names),
        "unit": m.names[m.unit],
        "mul": [[m.names[c] for c in row] for row in m.mul],
    }


def monoid_from_doc(doc: Mapping[str, Any]) -> FiniteMonoid:
    return build_monoid(_get(doc, "elems", list), _get(doc, "unit", str), _get(doc, "mul", list))


def action_to_doc(a: RightAction) -> Doc:
    m = a.monoid
    return {
        "monoid": monoid_to_doc(m),
        "x": list(a.names),
        "act": [[a.names[y] for y in row] for row in a.act],
    }


def action_from_doc(doc: Mapping[str, Any]) -> RightAction:
    m = monoid_from_doc(_get(doc, "monoid", dict))
    return build_action(m, _get(doc, "x", list), _get(doc, "act", list))


def theory_to_doc(t: Theory) -> Doc:
    doc = action_to_doc(t.action)
    doc["reflexive"] = t.reflexive
    if t.reflexive:
        doc["fix"] = {t.action.names[x]: t.monoid.names[f] for x, f in enumerate(t.fix_of)}
    return doc


def theory_from_doc(doc: Mapping[str, Any]) -> Theory:
    """Full documents or the shorthand ``{"kind": "s", "xsize": 2, ...}``."""
    if "kind" in doc:
        part = doc.get("partition")
        return standard_theory(
            _get(doc, "kind", str),
            _get(doc, "xsize", int),
            reflexive=bool(doc.get("reflexive", False)),
            partition=tuple(part) if part is not None else None,  # type: ignore[arg-type]
        )
    action = action_from_doc(doc)
    reflexive = bool(doc.get("reflexive", False))
    fix = doc.get("fix")
    fix_of = None
    if reflexive and fix is not None:
        xpos = _index(list(action.names), "point")
        mpos = _index(list(action.monoid.names), "element")
        fix_of = [0] * action.size
        for x, f in fix.items():
            fix_of[_lookup(xpos, x, "point")] = _lookup(mpos, f, "element")
    return make_theory(action, reflexive, fix_of)


# ---------------------------------------------------------------------------
# graphs and morphisms


def graph_to_doc(g: XMGraph) -> Doc:
    t = g.theory
    vn = unique_names([g.vname(v) for v in range(g.nv)])
    an = unique_names([g.aname(a) for a in range(g.na)])
    arcs = [
        {
            "name": an[a],
            "inc": {t.action.names[x]: vn[g.inc[a][x]] for x in range(t.nx)},
            "act": {t.monoid.names[m]: an[g.mact[a][m]] for m in range(t.nm)},
        }
        for a in range(g.na)
    ]
    doc: Doc = {"theory": theory_to_doc(t), "verts": vn, "arcs": arcs}
    if t.reflexive:
        doc["loops"] = {vn[v]: an[g.loop[v]] for v in range(g.nv)}
    return doc


def graph_from_doc(doc: Mapping[str, Any], theory: Theory | None = None) -> XMGraph:
    t = theory or theory_from_doc(_get(doc, "theory", dict))
    vn = [str(v) for v in _get(doc, "verts", list)]
    arcs = _get(doc, "arcs", list)
    an = [str(_get(a, "name")) for a in arcs]
    vpos, apos = _index(vn, "vertex"), _index(an, "arc")
    xpos = _index(list(t.action.names), "point")
    mpos = _index(list(t.monoid.names), "element")
    inc, mact = [], []
    for a in arcs:
        row_i = [-1] * t.nx
        for x, v in _get(a, "inc", dict).items():
            row_i[_lookup(xpos, x, "point")] = _lookup(vpos, v, "vertex")
        row_m = [-1] * t.nm
        for m, b in _get(a, "act", dict).items():
            row_m[_lookup(mpos, m, "element")] = _lookup(apos, b, "arc")
        if -1 in row_i or -1 in row_m:
            raise ParseError("arc tables must be total", arc=a.get("name"))
        inc.append(row_i)
        mact.append(row_m)
    loop = None
    if t.reflexive:
        loops = _get(doc, "loops", dict)
        loop = [-1] * len(vn)
        for v, a in loops.items():
            loop[_lookup(vpos, v, "vertex")] = _lookup(apos, a, "arc")
        if -1 in loop:
            raise ParseError("every vertex needs a distinguished loop")
    elif "loops" in doc:
        raise ParseError("loops are only allowed over reflexive theories")
    return make_graph(t, len(vn), inc, mact, loop, vnames=vn, anames=an)


def morphism_to_doc(f: GraphMorphism, *, with_graphs: bool = False) -> Doc:
    svn = unique_names([f.src.vname(v) for v in range(f.src.nv)])
    san = unique_names([f.src.aname(a) for a in range(f.src.na)])
    dvn = unique_names([f.dst.vname(v) for v in range(f.dst.nv)])
    dan = unique_names([f.dst.aname(a) for a in range(f.dst.na)])
    doc: Doc = {}
    if with_graphs:
        doc["src"] = graph_to_doc(f.src)
        doc["dst"] = graph_to_doc(f.dst)
    doc["verts"] = {svn[v]: dvn[w] for v, w in enumerate(f.fv)}
    doc["arcs"] = {san[a]: dan[b] for a, b in enumerate(f.fa)}
    return doc


def morphism_from_doc(doc: Mapping[str, Any]) -> GraphMorphism:
    src = graph_from_doc(_get(doc, "src", dict))
    dst = graph_from_doc(_get(doc, "dst", dict))
    return morphism_between(src, dst, doc)


def morphism_between(src: XMGraph, dst: XMGraph, doc: Mapping[str, Any]) -> GraphMorphism:
    svn = _index(unique_names([src.vname(v) for v in range(src.nv)]), "vertex")
    san = _index(unique_names([src.aname(a) for a in range(src.na)]), "arc")
    dvn = _index(unique_names([dst.vname(v) for v in range(dst.nv)]), "vertex")
    dan = _index(unique_names([dst.aname(a) for a in range(dst.na)]), "arc")
    fv = [-1] * src.nv
    fa = [-1] * src.na
    for v, w in _get(doc, "verts", dict).items():
        fv[_lookup(svn, v, "vertex")] = _lookup(dvn, w, "vertex")
    for a, b in _get(doc, "arcs", dict).items():
        fa[_lookup(san, a, "arc")] = _lookup(dan, b, "arc")
    if -1 in fv or -1 in fa:
        raise ParseError("morphism must be total")
    f = GraphMorphism(src, dst, tuple(fv), tuple(fa))
    check_morphism(f)
    return f


# ---------------------------------------------------------------------------
# hypergraphs


def hypergraph_to_doc(h: Hypergraph) -> Doc:
    vn = unique_names(list(h.verts))
    en = unique_names(list(h.edges))
    return {
        "verts": vn,
        "edges": [{"name": en[e], "inc": [vn[v] for v in sorted(h.phi[e])]} for e in range(h.ne)],
    }


def hypergraph_from_doc(doc: Mapping[str, Any]) -> Hypergraph:
    vn = [str(v) for v in _get(doc, "verts", list)]
    vpos = _index(vn, "vertex")
    edges = _get(doc, "edges", list)
    en = [str(_get(e, "name")) for e in edges]
    _index(en, "edge")
    phi = tuple(frozenset(_lookup(vpos, v, "vertex") for v in _get(e, "inc", list)) for e in edges)
    return Hypergraph(tuple(vn), tuple(en), phi)


def load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"invalid JSON: {err.msg}", line=err.lineno, column=err.colno) from err


def error_doc(err: XMError) -> Doc:
    return err.to_dict()
