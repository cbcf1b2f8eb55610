"""Shared graphs, theories and a seeded random graph generator for the tests."""

from __future__ import annotations

import random
from collections.abc import Sequence

from xmgraph.algebra import Theory, standard_theory
from xmgraph.graphcore import (
    XMGraph,
    discrete_graph,
    initial,
    make_graph,
    representable,
    terminal,
)
from xmgraph.toposops import coproduct, quotient

O2 = standard_theory("o", 2)
S2 = standard_theory("s", 2)
S3 = standard_theory("s", 3)
R2 = standard_theory("r", 2)
SR2 = standard_theory("sr", 2, reflexive=True)

RANDOM_THEORIES: dict[str, Theory] = {"o2": O2, "s2": S2, "s3": S3, "r2": R2}


def sym(nv: int, edges: Sequence[tuple[int, int]]) -> XMGraph:
    """A simple symmetric graph over s(2): each edge becomes an arc pair."""
    u = S2.unit
    sw = 1 - u
    inc, mact = [], []
    for i, (x, y) in enumerate(edges):
        inc += [[x, y], [y, x]]
        a, b = 2 * i, 2 * i + 1
        ra, rb = [0, 0], [0, 0]
        ra[u], ra[sw] = a, b
        rb[u], rb[sw] = b, a
        mact += [ra, rb]
    return make_graph(S2, nv, inc, mact)


def complete(n: int) -> XMGraph:
    return sym(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


K2 = complete(2)
K3 = complete(3)
P3 = sym(3, [(0, 1), (1, 2)])
C4 = sym(4, [(0, 1), (1, 2), (2, 3), (3, 0)])

# one vertex with two fixed loops over s(2)
L_S2 = make_graph(S2, 1, [[0, 0], [0, 0]], [[0, 0], [1, 1]])
# one vertex with its distinguished loop and one more loop over sr(2);
# the constants send the second loop to the distinguished one
L_SR2 = make_graph(SR2, 1, [[0, 0], [0, 0]], [[0] * 4, [0, 1, 1, 0]], loop=[0])
# one vertex carrying an unfixed loop pair
LOOP_PAIR = make_graph(S2, 1, [[0, 0], [0, 0]], [[0, 1], [1, 0]])
# a directed path and a directed loop over o(2)
PATH_O2 = make_graph(O2, 3, [[0, 1], [1, 2]], [[0], [1]])
LOOP_O2 = make_graph(O2, 1, [[0, 0]], [[0]])


def basic_graphs(theory: Theory) -> list[tuple[str, XMGraph]]:
    out = [
        ("V", representable(theory, "V")),
        ("A", representable(theory, "A")),
        ("terminal", terminal(theory)),
        ("discrete2", discrete_graph(theory, 2)),
    ]
    if not theory.reflexive:
        out.append(("initial", initial(theory)))
    return out


def catalogue() -> list[tuple[str, XMGraph]]:
    """Every named fixture graph; lattices stay well under 200 subgraphs."""
    out: list[tuple[str, XMGraph]] = []
    for tname, t in (("o2", O2), ("s2", S2), ("r2", R2), ("sr2", SR2), ("s3", S3)):
        out += [(f"{tname}:{n}", g) for n, g in basic_graphs(t)]
    out += [
        ("s2:K2", K2),
        ("s2:K3", K3),
        ("s2:P3", P3),
        ("s2:C4", C4),
        ("s2:L", L_S2),
        ("s2:loop_pair", LOOP_PAIR),
        ("sr2:L", L_SR2),
        ("o2:path", PATH_O2),
        ("o2:loop", LOOP_O2),
    ]
    return out


def random_graph(theory: Theory, rng: random.Random, *, pieces: int = 2, merges: int = 2) -> XMGraph:
    """A quotient of a coproduct of up to ``pieces`` representables.

    Every finite graph is such a quotient, and taking the congruence
    closure of random identifications keeps the result valid.
    """
    k = rng.randint(0, pieces)
    parts = [representable(theory, rng.choice("VA")) for _ in range(k)]
    g = coproduct(parts, theory=theory).apex
    vpairs, apairs = [], []
    for _ in range(rng.randint(0, merges)):
        if g.na and rng.random() < 0.5:
            apairs.append((rng.randrange(g.na), rng.randrange(g.na)))
        elif g.nv:
            vpairs.append((rng.randrange(g.nv), rng.randrange(g.nv)))
    return quotient(g, vpairs, apairs)[0]
