"""The ``xm`` command: one verb per operation, JSON in and canonical JSON out.

Exit status is 0 on success and 2 when an input fails to parse or
validate; the error object then goes to stdout in place of the result.

    xm validate g.json --summary
    xm exp L.json A.json
    xm omega --theory s2.json --summary
"""

from __future__ import annotations

import argparse
import os
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from . import bridge, constructions, functors, graphcore, logic, toposops
from .algebra import FiniteMonoid, Theory, monoid_properties
from .errors import BadKind, ParseError, XMError
from .graphcore import GraphMorphism, Subgraph, XMGraph
from .jsonio import (
    Doc,
    dumps,
    graph_from_doc,
    graph_to_doc,
    hypergraph_from_doc,
    hypergraph_to_doc,
    load,
    monoid_from_doc,
    morphism_from_doc,
    morphism_to_doc,
    theory_from_doc,
    theory_to_doc,
    unique_names,
)

# ---------------------------------------------------------------------------
# input helpers


def _read(path: str) -> Any:
    if path == "-":
        return load(sys.stdin.read())
    try:
        return load(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}", path=path) from err


def _graph(path: str) -> XMGraph:
    return graph_from_doc(_read(path))


def _theory(path: str) -> Theory:
    doc = _read(path)
    return theory_from_doc(doc["theory"] if "theory" in doc and "verts" in doc else doc)


def _monoid(path: str) -> FiniteMonoid:
    doc = _read(path)
    if "elems" in doc:
        return monoid_from_doc(doc)
    return theory_from_doc(doc).monoid


def _names(text: str | None) -> list[str]:
    return [s for s in (text or "").split(",") if s]


def _ids(names: Sequence[str], universe: Sequence[str], what: str) -> list[int]:
    pos = {n: i for i, n in enumerate(universe)}
    missing = [n for n in names if n not in pos]
    if missing:
        raise ParseError(f"unknown {what} {missing[0]!r}", name=missing[0])
    return [pos[n] for n in names]


def _vnames(g: XMGraph) -> list[str]:
    return unique_names([g.vname(v) for v in range(g.nv)])


def _anames(g: XMGraph) -> list[str]:
    return unique_names([g.aname(a) for a in range(g.na)])


def _selection(g: XMGraph, args: argparse.Namespace) -> Subgraph:
    """The subgraph named by ``--mask`` or by ``--verts``/``--arcs``."""
    if getattr(args, "mask", None):
        doc = _read(args.mask)
        vs, as_ = [str(v) for v in doc.get("verts", [])], [str(a) for a in doc.get("arcs", [])]
    else:
        vs, as_ = _names(args.verts), _names(args.arcs)
    return graphcore.make_subgraph(g, _ids(vs, _vnames(g), "vertex"), _ids(as_, _anames(g), "arc"))


# ---------------------------------------------------------------------------
# output helpers


def _summary(g: XMGraph) -> Doc:
    return {
        "verts": g.nv,
        "arcs": g.na,
        "orbits": len(graphcore.arc_orbits(g)),
        "components": len(graphcore.components(g)),
    }


def _sub_doc(s: Subgraph) -> Doc:
    vn, an = _vnames(s.parent), _anames(s.parent)
    return {"verts": [vn[v] for v in sorted(s.verts)], "arcs": [an[a] for a in sorted(s.arcs)]}


def _with_map(g: XMGraph, f: GraphMorphism) -> Doc:
    return {"graph": graph_to_doc(g), "map": morphism_to_doc(f)}


def _cone_doc(c: toposops.Cone) -> Doc:
    return {"apex": graph_to_doc(c.apex), "legs": [morphism_to_doc(f) for f in c.legs]}


def _digraph_doc(d: constructions.LabeledDigraph) -> Doc:
    return {
        "verts": list(d.vnames),
        "arcs": [
            {"src": d.vnames[s], "dst": d.vnames[t], "label": d.labels[g]} for s, t, g in d.arcs
        ],
        "connected": d.is_connected(),
    }


# ---------------------------------------------------------------------------
# verbs; each returns the result document and the graph to summarize


Result = tuple[Doc, XMGraph | None]


def v_validate(a: argparse.Namespace) -> Result:
    g = _graph(a.graph)
    return {"valid": graphcore.validate(g)}, g


def v_theory(a: argparse.Namespace) -> Result:
    t = _theory(a.theory)
    p = monoid_properties(t.monoid)
    names = t.monoid.names
    doc = theory_to_doc(t)
    doc["properties"] = {
        "order": t.nm,
        "is_group": p.is_group,
        "is_right_cancellative": p.is_right_cancellative,
        "fix": [names[m] for m in sorted(p.fix_set)],
        "invertible": [names[m] for m in sorted(p.invertible_elements)],
    }
    return doc, None


def v_rep(a: argparse.Namespace) -> Result:
    g = graphcore.representable(_theory(a.theory), a.which)
    return graph_to_doc(g), g


def v_hom(a: argparse.Namespace) -> Result:
    g, h = _graph(a.graph), _graph(a.other)
    homs = toposops._bounded_homs(g, h, a.max_cells)
    doc: Doc = {"count": len(homs)}
    if not a.count:
        doc["homs"] = [morphism_to_doc(f) for f in homs]
    return doc, None


def v_iso(a: argparse.Namespace) -> Result:
    f = graphcore.iso_check(_graph(a.graph), _graph(a.other))
    return {"iso": f is not None, "map": morphism_to_doc(f) if f else None}, None


def _limit_inputs(a: argparse.Namespace) -> list[Any]:
    if a.kind in ("product", "coproduct"):
        return [_graph(p) for p in a.inputs]
    return [morphism_from_doc(_read(p)) for p in a.inputs]


def v_limit(a: argparse.Namespace) -> Result:
    items = _limit_inputs(a)
    c = toposops.limit(a.kind, items) if a.kind == "product" else toposops.limit(a.kind, *items)
    return _cone_doc(c), c.apex


def v_colimit(a: argparse.Namespace) -> Result:
    items = _limit_inputs(a)
    c = toposops.colimit(a.kind, items) if a.kind == "coproduct" else toposops.colimit(a.kind, *items)
    return _cone_doc(c), c.apex


def v_exp(a: argparse.Namespace) -> Result:
    e = toposops.exponential(_graph(a.graph), _graph(a.other), a.max_cells)
    return graph_to_doc(e.graph), e.graph


def v_omega(a: argparse.Namespace) -> Result:
    om = toposops.omega(_theory(a.theory))
    return graph_to_doc(om.graph), om.graph


def v_classify(a: argparse.Namespace) -> Result:
    g = _graph(a.graph)
    chi = toposops.classify(_selection(g, a))
    return morphism_to_doc(chi), None


def v_simplify(a: argparse.Namespace) -> Result:
    q, f = toposops.simplify(_graph(a.graph))
    return _with_map(q, f), q


def v_sheafify(a: argparse.Namespace) -> Result:
    k, f = toposops.sheafify(_graph(a.graph), a.max_cells)
    return _with_map(k, f), k


def v_logic(a: argparse.Namespace) -> Result:
    g = _graph(a.graph)
    if a.op == "deck":
        d = logic.deck(g, a.mode)
        return graph_to_doc(d), d
    s = _selection(g, a)
    if a.op in ("neg", "subtract", "nbr"):
        return _sub_doc(getattr(logic, a.op)(s)), None
    return {"predicate": a.op, "holds": logic.predicate(a.op, s)}, None


def _theory_map(doc: Doc) -> functors.TheoryMap:
    """``{"kind": "iota"|"reflexivization", "theory": T}``, ``{"kind": "inclusion"|"extend", ...}``
    or a full ``{"src", "dst", "f", "phi"}`` document with name mappings."""
    kind = doc.get("kind", "map")
    if kind == "iota":
        return functors.iota(theory_from_doc(doc["theory"]))
    if kind == "reflexivization":
        return functors.reflexivization(theory_from_doc(doc["theory"]))
    src, dst = theory_from_doc(doc["src"]), theory_from_doc(doc["dst"])
    if kind == "inclusion":
        return functors.action_inclusion(src, dst)
    xs = _ids([doc["f"][x] for x in src.action.names], dst.action.names, "point")
    if kind == "extend":
        return functors.extend_by_identity(src, dst, xs)
    if kind != "map":
        raise BadKind(f"unknown theory map kind {kind!r}", kind=kind)
    ms = _ids([doc["phi"][m] for m in src.monoid.names], dst.monoid.names, "element")
    return functors.theory_map(src, dst, xs, ms)


def v_functor(a: argparse.Namespace) -> Result:
    j = _theory_map(_read(a.morphism))
    g = _graph(a.graph)
    if a.kind == "res":
        r = functors.restriction(j, g)
        return graph_to_doc(r), r
    if a.kind == "ext":
        e = functors.extension(j, g)
        return _with_map(e.graph, e.unit), e.graph
    c = functors.coextension(j, g, a.max_cells)
    return _with_map(c.graph, c.counit), c.graph


def v_pi0(a: argparse.Namespace) -> Result:
    g = _graph(a.graph)
    return {"components": [_sub_doc(s) for s in functors.pi0(g)]}, g


def v_points(a: argparse.Namespace) -> Result:
    g = _graph(a.graph)
    return {"points": [morphism_to_doc(p) for p in functors.points(g)]}, g


def v_nerve(a: argparse.Namespace) -> Result:
    g = bridge.nerve(hypergraph_from_doc(_read(a.hypergraph)), a.xsize)
    return graph_to_doc(g), g


def v_realize(a: argparse.Namespace) -> Result:
    h, _ = bridge.realization(_graph(a.graph))
    return hypergraph_to_doc(h), None


def v_dualize(a: argparse.Namespace) -> Result:
    return hypergraph_to_doc(bridge.dualize(hypergraph_from_doc(_read(a.hypergraph)))), None


def v_linegraph(a: argparse.Namespace) -> Result:
    g = bridge.line_graph(hypergraph_from_doc(_read(a.hypergraph)), a.xsize, a.max_cells)
    return graph_to_doc(g), g


def v_kneser(a: argparse.Namespace) -> Result:
    h = hypergraph_from_doc(_read(a.hypergraph))
    kn = bridge.kneser(h, a.xsize, a.max_cells)
    r = bridge.kneser_hypergraph(h, a.xsize, trim=a.trim)
    doc = {
        "hull": graph_to_doc(kn.hull),
        "line": _sub_doc(kn.line),
        "part": _sub_doc(kn.part),
        "hypergraph": hypergraph_to_doc(r),
    }
    return doc, kn.hull


def v_cayley(a: argparse.Namespace) -> Result:
    m = _monoid(a.monoid)
    return _digraph_doc(constructions.cayley(m, _ids(_names(a.gens), m.names, "element"))), None


def v_schreier(a: argparse.Namespace) -> Result:
    m = _monoid(a.monoid)
    hs = _ids(_names(a.sub), m.names, "element")
    d = constructions.schreier(m, hs, _ids(_names(a.gens), m.names, "element"))
    return _digraph_doc(d), None


def v_classifier(a: argparse.Namespace) -> Result:
    labels: list[str] | int = int(a.labels) if a.labels.isdigit() else _names(a.labels)
    extra = {}
    for item in _names(a.extra):
        label, _, count = item.partition(":")
        extra[int(label)] = int(count)
    g = constructions.label_classifier(_theory(a.theory), a.kind, labels, extra, a.max_cells)
    return graph_to_doc(g), g


def v_chromatic(a: argparse.Namespace) -> Result:
    g = _graph(a.graph)
    return {"chromatic": constructions.chromatic(g, a.max), "max": a.max}, g


def v_product(a: argparse.Namespace) -> Result:
    g = constructions.graph_product(_graph(a.graph), _graph(a.other), a.kind)
    return graph_to_doc(g), g


def v_hull(a: argparse.Namespace) -> Result:
    q, eta = constructions.injective_hull(_graph(a.graph), a.max_cells)
    return _with_map(q, eta), q


def v_cover(a: argparse.Namespace) -> Result:
    p, eps = constructions.projective_cover(_graph(a.graph))
    return _with_map(p, eps), p


def v_refine(a: argparse.Namespace) -> Result:
    g = _graph(a.graph)
    if a.kind == "inj":
        q, f = constructions.inj_refine(g, a.max_cells)
    else:
        q, f = constructions.proj_refine(g)
    return _with_map(q, f), q


def v_injective(a: argparse.Namespace) -> Result:
    g = _graph(a.graph)
    return {"injective": constructions.is_injective(g)}, g


def v_projective(a: argparse.Namespace) -> Result:
    g = _graph(a.graph)
    return {"projective": constructions.is_projective(g), "free": constructions.is_free(g)}, g


# ---------------------------------------------------------------------------
# parser


def _default_cap() -> int:
    raw = os.environ.get("XM_MAX_CELLS")
    if raw is None:
        return toposops.DEFAULT_MAX_CELLS
    try:
        return int(raw)
    except ValueError:
        return toposops.DEFAULT_MAX_CELLS


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--summary", action="store_true", help="add vertex/arc/orbit/component counts")
    common.add_argument("--max-cells", type=int, default=None, help="size cap (env XM_MAX_CELLS)")

    parser = argparse.ArgumentParser(prog="xm", description="Finite (X,M)-graph toolkit.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn: Callable[[argparse.Namespace], Result], help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    def selection(p: argparse.ArgumentParser) -> None:
        p.add_argument("--verts", help="comma separated vertex names")
        p.add_argument("--arcs", help="comma separated arc names")
        p.add_argument("--mask", help='file holding {"verts": [...], "arcs": [...]}')

    verb("validate", v_validate, "check a graph document").add_argument("graph")
    verb("theory", v_theory, "canonical theory with monoid properties").add_argument("theory")
    p = verb("rep", v_rep, "representable graph")
    p.add_argument("--theory", required=True)
    p.add_argument("--which", choices=["V", "A"], required=True)
    p = verb("hom", v_hom, "enumerate morphisms")
    p.add_argument("graph")
    p.add_argument("other")
    p.add_argument("--count", action="store_true", help="report only the number")
    p = verb("iso", v_iso, "find an isomorphism")
    p.add_argument("graph")
    p.add_argument("other")
    p = verb("limit", v_limit, "product, equalizer or pullback")
    p.add_argument("--kind", choices=["product", "equalizer", "pullback"], required=True)
    p.add_argument("inputs", nargs="+", help="graphs for product, morphisms otherwise")
    p = verb("colimit", v_colimit, "coproduct, coequalizer or pushout")
    p.add_argument("--kind", choices=["coproduct", "coequalizer", "pushout"], required=True)
    p.add_argument("inputs", nargs="+", help="graphs for coproduct, morphisms otherwise")
    p = verb("exp", v_exp, "exponential GRAPH^OTHER")
    p.add_argument("graph")
    p.add_argument("other")
    verb("omega", v_omega, "subobject classifier").add_argument("--theory", required=True)
    p = verb("classify", v_classify, "characteristic morphism of a subgraph")
    p.add_argument("graph")
    selection(p)
    verb("simplify", v_simplify, "simple reflection").add_argument("graph")
    verb("sheafify", v_sheafify, "complete graph on the vertices").add_argument("graph")
    p = verb("logic", v_logic, "negation, supplement, neighbourhood, deck, predicates")
    p.add_argument(
        "op",
        choices=[
            "neg", "subtract", "nbr", "deck",
            "star", "transversal", "vertex_cover", "independent", "intersecting_family",
        ],
    )
    p.add_argument("graph")
    p.add_argument("--mode", choices=["vertex", "edge"], default="vertex")
    selection(p)
    p = verb("functor", v_functor, "restriction, extension or coextension along a theory map")
    p.add_argument("--kind", choices=["ext", "res", "coext"], required=True)
    p.add_argument("--morphism", required=True, help="theory map document")
    p.add_argument("graph")
    verb("pi0", v_pi0, "connected components").add_argument("graph")
    verb("points", v_points, "global points").add_argument("graph")
    for name, fn, help_ in (
        ("nerve", v_nerve, "nerve of a hypergraph"),
        ("linegraph", v_linegraph, "intersection graph of the edges"),
        ("kneser", v_kneser, "Kneser part inside the hull of the line graph"),
    ):
        p = verb(name, fn, help_)
        p.add_argument("hypergraph")
        p.add_argument("--xsize", type=int, required=True)
        if name == "kneser":
            p.add_argument("--trim", action="store_true", help="keep edges of size xsize only")
    verb("realize", v_realize, "hypergraph of arc orbits").add_argument("graph")
    verb("dualize", v_dualize, "swap vertices and edges").add_argument("hypergraph")
    p = verb("cayley", v_cayley, "Cayley graph")
    p.add_argument("monoid")
    p.add_argument("--gens", required=True)
    p = verb("schreier", v_schreier, "Schreier coset graph")
    p.add_argument("monoid")
    p.add_argument("--sub", required=True)
    p.add_argument("--gens", required=True)
    p = verb("classifier", v_classifier, "label classifier")
    p.add_argument("--theory", required=True)
    p.add_argument("--kind", choices=["CV", "CA", "nonmono", "nonrainbow", "cardfix"], required=True)
    p.add_argument("--labels", required=True, help="a count or comma separated names")
    p.add_argument("--extra", help="fibre sizes label:count,... for cardfix")
    p = verb("chromatic", v_chromatic, "chromatic number")
    p.add_argument("graph")
    p.add_argument("--max", "--kmax", dest="max", type=int, default=6)
    p = verb("product", v_product, "graph products")
    p.add_argument("graph")
    p.add_argument("other")
    p.add_argument(
        "--kind",
        choices=["categorical", "strong", "cartesian", "conormal", "lex", "modular"],
        required=True,
    )
    verb("hull", v_hull, "injective hull").add_argument("graph")
    verb("cover", v_cover, "projective cover").add_argument("graph")
    p = verb("refine", v_refine, "Inj or Proj refinement")
    p.add_argument("graph")
    p.add_argument("--kind", choices=["inj", "proj"], required=True)
    verb("injective", v_injective, "injectivity test").add_argument("graph")
    verb("projective", v_projective, "projectivity test").add_argument("graph")
    return parser


def _emit(doc: Any, out: str | None) -> None:
    text = dumps(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run one verb, write its document and return the exit code."""
    args = build_parser().parse_args(argv)
    if args.max_cells is None:
        args.max_cells = _default_cap()
    try:
        doc, g = args.fn(args)
        if args.summary and g is not None:
            doc = {**doc, "summary": _summary(g)} if isinstance(doc, dict) else doc
    except XMError as err:
        _emit(err.to_dict(), None)
        return 2
    except (KeyError, TypeError, ValueError) as err:
        _emit(ParseError(f"malformed input: {err}").to_dict(), None)
        return 2
    _emit(doc, args.out)
    return 0


def main() -> None:
    sys.exit(run())


__all__ = ["build_parser", "run", "main"]


if __name__ == "__main__":
    main()
