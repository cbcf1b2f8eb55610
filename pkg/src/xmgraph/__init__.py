"""Finite (X,M)-graphs: presheaves on a two-object theory built from a monoid action.

The modules build on each other in this order: ``algebra`` (monoids,
actions, theories), ``graphcore`` (graphs, morphisms, subgraphs, hom
search), ``toposops`` (limits, colimits, exponentials, the subobject
classifier), ``logic`` (negation and supplement), ``functors`` (restriction
and its adjoints), ``bridge`` (classical hypergraphs), ``constructions``
(labelings, products, hulls and covers) and ``cli``.
"""

from .algebra import FiniteMonoid, RightAction, Theory, build_action, build_monoid, standard_theory
from .graphcore import GraphMorphism, Subgraph, XMGraph, make_graph, representable

__all__ = [
    "FiniteMonoid",
    "RightAction",
    "Theory",
    "build_action",
    "build_monoid",
    "standard_theory",
    "GraphMorphism",
    "Subgraph",
    "XMGraph",
    "make_graph",
    "representable",
]
