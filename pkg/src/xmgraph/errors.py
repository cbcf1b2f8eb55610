"""Exception hierarchy shared by every module.

Each error carries a ``detail`` mapping with the offending witness so the
command line front end can emit a machine-readable diagnostic.
"""

from __future__ import annotations

from typing import Any


class XMError(Exception):
    """Base class for all domain errors."""

    code = "XMError"

    def __init__(self, message: str, **detail: Any) -> None:
        super().__init__(message)
        self.detail = detail

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.code, "message": str(self), "detail": self.detail}


def _make(name: str, doc: str, base: type[XMError] = XMError) -> type[XMError]:
    return type(name, (base,), {"code": name, "__doc__": doc})


# algebra
BadId = _make("BadId", "A table entry or name does not denote a known element.")
NonAssociative = _make("NonAssociative", "The multiplication table is not associative.")
BadUnit = _make("BadUnit", "The declared unit is not a two-sided identity.")
BadKind = _make("BadKind", "Unknown kind selector.")
BadPartition = _make("BadPartition", "The (S, T) pair is not a partition of X.")
BadAction = _make("BadAction", "The action table violates the right action laws.")
NotMonoidHom = _make("NotMonoidHom", "The element map does not preserve unit and product.")
NotEquivariant = _make("NotEquivariant", "The set map does not commute with the actions.")
BadTheory = _make("BadTheory", "The reflexive theory data is inconsistent.")

# graphs
ValidationError = _make("ValidationError", "A graph table violates the presheaf laws.")
ActionIncompatible = _make(
    "ActionIncompatible", "Incidence and arc action do not commute.", ValidationError
)
UnitViolation = _make("UnitViolation", "The unit does not act trivially on an arc.", ValidationError)
BadLoop = _make("BadLoop", "A distinguished loop violates the reflexive equations.", ValidationError)
NotAMorphism = _make("NotAMorphism", "Vertex and arc maps do not form a graph morphism.")
NotClosed = _make("NotClosed", "The selected cells do not form a subgraph.")
TheoryMismatch = _make("TheoryMismatch", "Inputs live over different theories.")

# constructions and bridges
SizeBound = _make("SizeBound", "The requested object exceeds the configured size cap.")
ReflexiveUnsupported = _make(
    "ReflexiveUnsupported", "The operation is only defined for non-reflexive theories."
)
ChaoticRequiresReflexive = _make(
    "ChaoticRequiresReflexive", "The chaotic functor exists only for reflexive theories."
)
NotSymmetricTheory = _make("NotSymmetricTheory", "The theory is not (X, Aut(X)).")
BadShape = _make("BadShape", "The subgraph does not have the shape the predicate requires.")
NotSubmonoid = _make("NotSubmonoid", "The subset is not a submonoid.")
NotSimpleLoopless = _make(
    "NotSimpleLoopless", "Graph products need simple loopless symmetric 2-graphs."
)
HullActionNotClosed = _make(
    "HullActionNotClosed", "The adjoined incidence functions are not closed under the action."
)
ParseError = _make("ParseError", "The input document is malformed.")
