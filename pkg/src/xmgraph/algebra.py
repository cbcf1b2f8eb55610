"""Finite monoids, right actions, action morphisms and graph theories.

Conventions
-----------
``mul[a][b]`` is the product ``a·b`` read diagrammatically: for endomaps
acting on the right by evaluation, ``x.(a·b) = (x.a).b``, so ``a·b = b∘a``.
A right action satisfies ``act[act[x][a]][b] == act[x][mul[a][b]]``.

Arcs of a graph carry the action that makes the graph a presheaf on the
theory: ``(α.a).b = α.(b·a)`` and ``(α.m).x = α.(x.m)``.  This is the only
order compatible with incidence when ``M`` is not commutative; every call
site below that composes actions goes through :meth:`FiniteMonoid.prod`.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field

from .errors import (
    BadAction,
    BadId,
    BadKind,
    BadPartition,
    BadTheory,
    BadUnit,
    NonAssociative,
    NotEquivariant,
    NotMonoidHom,
)

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteMonoid:
    """A monoid on ``range(size)`` given by its full multiplication table."""

    mul: Table
    unit: int
    names: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    def prod(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise BadId(f"unknown monoid element {name!r}", element=name) from None

    def power_closure(self, gens: Sequence[int]) -> frozenset[int]:
        """Submonoid generated by ``gens``."""
        seen = {self.unit}
        frontier = [self.unit]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = self.mul[a][g]
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(seen)


def _check_table(n: int, mul: Sequence[Sequence[int]]) -> None:
    if len(mul) != n or any(len(row) != n for row in mul):
        raise BadId("multiplication table is not square over the elements", size=n)
    for a, row in enumerate(mul):
        for b, c in enumerate(row):
            if not (isinstance(c, int) and 0 <= c < n):
                raise BadId(f"entry mul[{a}][{b}] = {c!r} is not an element", triple=[a, b, c])


def monoid_from_table(
    mul: Sequence[Sequence[int]],
    unit: int,
    names: Sequence[str] | None = None,
    *,
    check: bool = True,
) -> FiniteMonoid:
    """Build a monoid from an integer table, validating it exhaustively."""
    n = len(mul)
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n or len(set(names)) != n:
        raise BadId("element names must be distinct and match the table size")
    if check:
        _check_table(n, mul)
        if not (0 <= unit < n):
            raise BadUnit(f"unit {unit!r} is not an element", element=unit)
        for a in range(n):
            if mul[unit][a] != a or mul[a][unit] != a:
                raise BadUnit(
                    f"unit {names[unit]!r} fails on {names[a]!r}", element=names[a]
                )
        for a, b, c in itertools.product(range(n), repeat=3):
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise NonAssociative(
                    f"(ab)c != a(bc) for a={names[a]}, b={names[b]}, c={names[c]}",
                    triple=[names[a], names[b], names[c]],
                )
    return FiniteMonoid(tuple(tuple(r) for r in mul), unit, tuple(names))


def build_monoid(
    elems: Sequence[str], unit: str, mul: Sequence[Sequence[str]]
) -> FiniteMonoid:
    """Build a monoid from element names and a table of names."""
    elems = list(elems)
    pos = {e: i for i, e in enumerate(elems)}
    if len(pos) != len(elems):
        raise BadId("duplicate element names")
    if unit not in pos:
        raise BadUnit(f"unit {unit!r} is not an element", element=unit)
    if len(mul) != len(elems) or any(len(r) != len(elems) for r in mul):
        raise BadId("multiplication table is not total over the elements")
    table = []
    for a, row in enumerate(mul):
        out = []
        for b, c in enumerate(row):
            if c not in pos:
                raise BadId(
                    f"entry for ({elems[a]}, {elems[b]}) is {c!r}", triple=[elems[a], elems[b], c]
                )
            out.append(pos[c])
        table.append(out)
    return monoid_from_table(table, pos[unit], elems)


@dataclass(frozen=True)
class RightAction:
    """A right action ``act[x][m]`` of ``monoid`` on ``range(len(names))``."""

    monoid: FiniteMonoid
    act: Table
    names: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.act)

    def __len__(self) -> int:
        return len(self.act)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise BadId(f"unknown point {name!r}", element=name) from None

    def map_of(self, m: int) -> tuple[int, ...]:
        """The function ``x -> x.m`` as a table."""
        return tuple(row[m] for row in self.act)


def action_from_table(
    monoid: FiniteMonoid,
    act: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    *,
    check: bool = True,
) -> RightAction:
    n = len(act)
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n or len(set(names)) != n:
        raise BadId("point names must be distinct and match the table size")
    if check:
        k = monoid.size
        for x, row in enumerate(act):
            if len(row) != k or any(not (0 <= y < n) for y in row):
                raise BadId(f"action row for {names[x]!r} is not total", point=names[x])
        for x in range(n):
            if act[x][monoid.unit] != x:
                raise BadAction(f"unit moves {names[x]!r}", point=names[x])
            for a in range(k):
                for b in range(k):
                    if act[act[x][a]][b] != act[x][monoid.mul[a][b]]:
                        raise BadAction(
                            "(x.a).b != x.(a·b)",
                            witness=[names[x], monoid.names[a], monoid.names[b]],
                        )
    return RightAction(monoid, tuple(tuple(r) for r in act), tuple(names))


def build_action(monoid: FiniteMonoid, xs: Sequence[str], act: Sequence[Sequence[str]]) -> RightAction:
    pos = {x: i for i, x in enumerate(xs)}
    if len(pos) != len(xs):
        raise BadId("duplicate point names")
    if len(act) != len(xs):
        raise BadId("action table has the wrong number of rows")
    table = []
    for x, row in enumerate(act):
        if len(row) != monoid.size:
            raise BadId(f"action row for {xs[x]!r} is not total", point=xs[x])
        try:
            table.append([pos[y] for y in row])
        except KeyError as exc:
            raise BadId(f"unknown point {exc.args[0]!r} in action table") from None
    return action_from_table(monoid, table, xs)


# ---------------------------------------------------------------------------
# endomap submonoids

KINDS = ("o", "s", "r", "sr", "h", "do", "ds", "dh", "dr", "dsr", "dhr")
DIRECTED = frozenset(k for k in KINDS if k.startswith("d"))


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Diagrammatic product: first ``a`` then ``b``."""
    return tuple(b[y] for y in a)


def _generated(n: int, gens: set[tuple[int, ...]]) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    seen = {ident} | set(gens)
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for c in (_compose(a, g), _compose(g, a)):
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
        frontier = nxt
    return seen


def _extend(part: Sequence[int], f: Sequence[int], n: int) -> tuple[int, ...]:
    out = list(range(n))
    for i, x in enumerate(part):
        out[x] = part[f[i]]
    return tuple(out)


def _endo_tables(n: int, kind: str, partition: tuple[Sequence[int], Sequence[int]] | None):
    ident = tuple(range(n))
    perms = set(itertools.permutations(range(n)))
    consts = {tuple([c] * n) for c in range(n)}
    if kind == "o":
        return {ident}
    if kind == "s":
        return perms
    if kind == "r":
        return {ident} | consts
    if kind == "sr":
        return perms | consts
    if kind == "h":
        return set(itertools.product(range(n), repeat=n))
    s_part, t_part = partition  # type: ignore[misc]
    if kind == "do":
        return {ident}
    if kind == "dr":
        return {ident} | consts
    gens: set[tuple[int, ...]] = set()
    for part in (s_part, t_part):
        k = len(part)
        local = (
            itertools.permutations(range(k))
            if kind in ("ds", "dsr")
            else itertools.product(range(k), repeat=k)
        )
        gens |= {_extend(part, f, n) for f in local}
    if kind in ("dsr", "dhr"):
        gens |= consts
    return _generated(n, gens)


def _table_name(t: tuple[int, ...]) -> str:
    if not t:
        return "id"
    if len(t) <= 10:
        return "".join(map(str, t))
    return ",".join(map(str, t))


def endo_submonoid(
    xsize: int,
    kind: str,
    partition: tuple[Sequence[int], Sequence[int]] | None = None,
) -> RightAction:
    """The action of a named submonoid of ``End(X)`` on ``X = range(xsize)``.

    Elements are the function tables, sorted lexicographically, acting by
    evaluation ``x.f = f(x)``.  Directed kinds need a partition ``(S, T)``
    of ``X``; endomaps of ``S`` or ``T`` are extended by the identity, and
    the named unions are closed under composition.
    """
    if kind not in KINDS:
        raise BadKind(f"unknown submonoid kind {kind!r}", kind=kind, allowed=list(KINDS))
    if xsize < 0:
        raise BadKind("xsize must be non-negative", xsize=xsize)
    if kind in DIRECTED:
        if partition is None:
            raise BadPartition(f"kind {kind!r} needs a partition (S, T)")
        s_part, t_part = (sorted(p) for p in partition)
        if set(s_part) & set(t_part) or sorted(s_part + t_part) != list(range(xsize)):
            raise BadPartition("S and T must partition X", S=s_part, T=t_part)
        partition = (s_part, t_part)
    elif partition is not None:
        raise BadPartition(f"kind {kind!r} takes no partition")
    tables = sorted(_endo_tables(xsize, kind, partition))
    pos = {t: i for i, t in enumerate(tables)}
    mul = [[pos[_compose(a, b)] for b in tables] for a in tables]
    monoid = FiniteMonoid(
        tuple(tuple(r) for r in mul), pos[tuple(range(xsize))], tuple(map(_table_name, tables))
    )
    act = tuple(tuple(t[x] for t in tables) for x in range(xsize))
    return RightAction(monoid, act, tuple(str(x) for x in range(xsize)))


def group_action(perms: Sequence[Sequence[int]]) -> RightAction:
    """Regular-style helper: the action of the permutations closing ``perms``."""
    n = len(perms[0]) if perms else 0
    tables = sorted(_generated(n, {tuple(p) for p in perms}))
    pos = {t: i for i, t in enumerate(tables)}
    mul = [[pos[_compose(a, b)] for b in tables] for a in tables]
    monoid = FiniteMonoid(
        tuple(tuple(r) for r in mul), pos[tuple(range(n))], tuple(map(_table_name, tables))
    )
    act = tuple(tuple(t[x] for t in tables) for x in range(n))
    return RightAction(monoid, act, tuple(str(x) for x in range(n)))


def regular_action(monoid: FiniteMonoid) -> RightAction:
    """``M`` acting on itself by right multiplication."""
    act = tuple(tuple(monoid.mul[x][m] for m in range(monoid.size)) for x in range(monoid.size))
    return RightAction(monoid, act, monoid.names)


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(((0,),), 0, ("e",))


# ---------------------------------------------------------------------------
# properties and morphisms


@dataclass(frozen=True)
class MonoidProperties:
    is_group: bool
    is_right_cancellative: bool
    fix_set: frozenset[int]
    invertible_elements: frozenset[int]


def fix_set(m: FiniteMonoid) -> frozenset[int]:
    """Elements ``f`` absorbing on the left: ``k·f = f`` for every ``k``."""
    return frozenset(f for f in range(m.size) if all(m.mul[k][f] == f for k in range(m.size)))


def monoid_properties(m: FiniteMonoid) -> MonoidProperties:
    n = m.size
    inv = frozenset(
        a for a in range(n) if any(m.mul[a][b] == m.unit and m.mul[b][a] == m.unit for b in range(n))
    )
    # right cancellative: a·c = b·c implies a = b
    rc = all(
        len({m.mul[a][c] for a in range(n)}) == n for c in range(n)
    )
    return MonoidProperties(
        is_group=len(inv) == n,
        is_right_cancellative=rc,
        fix_set=fix_set(m),
        invertible_elements=inv,
    )


@dataclass(frozen=True)
class ActionMorphism:
    """A pair ``(f, phi)`` from one action to another."""

    src: RightAction
    dst: RightAction
    f: tuple[int, ...]
    phi: tuple[int, ...]


def check_action_morphism(am: ActionMorphism) -> bool:
    """Verify that ``phi`` is a monoid map and ``f(x.m) = f(x).phi(m)``."""
    sm, dm = am.src.monoid, am.dst.monoid
    if len(am.phi) != sm.size or any(not (0 <= p < dm.size) for p in am.phi):
        raise NotMonoidHom("phi is not a total map of elements")
    if len(am.f) != am.src.size or any(not (0 <= y < am.dst.size) for y in am.f):
        raise NotEquivariant("f is not a total map of points")
    if am.phi[sm.unit] != dm.unit:
        raise NotMonoidHom("phi does not preserve the unit", element=sm.names[sm.unit])
    for a in range(sm.size):
        for b in range(sm.size):
            if am.phi[sm.mul[a][b]] != dm.mul[am.phi[a]][am.phi[b]]:
                raise NotMonoidHom(
                    "phi(a·b) != phi(a)·phi(b)", witness=[sm.names[a], sm.names[b]]
                )
    for x in range(am.src.size):
        for m in range(sm.size):
            if am.f[am.src.act[x][m]] != am.dst.act[am.f[x]][am.phi[m]]:
                raise NotEquivariant(
                    "f(x.m) != f(x).phi(m)", witness=[am.src.names[x], sm.names[m]]
                )
    return True


def identity_morphism(action: RightAction) -> ActionMorphism:
    return ActionMorphism(
        action, action, tuple(range(action.size)), tuple(range(action.monoid.size))
    )


def compose_action_morphisms(first: ActionMorphism, second: ActionMorphism) -> ActionMorphism:
    return ActionMorphism(
        first.src,
        second.dst,
        tuple(second.f[y] for y in first.f),
        tuple(second.phi[p] for p in first.phi),
    )


def inclusion_morphism(small: RightAction, big: RightAction) -> ActionMorphism:
    """Identity-on-points inclusion, matching elements by their action on X.

    Used for the standard chains such as ``o(2) -> s(2)`` or ``s(2) -> sr(2)``.
    """
    if small.size != big.size:
        raise NotEquivariant("inclusion needs equal point sets")
    lookup = {big.map_of(m): m for m in range(big.monoid.size)}
    phi = []
    for m in range(small.monoid.size):
        key = small.map_of(m)
        if key not in lookup:
            raise NotMonoidHom("element has no counterpart", element=small.monoid.names[m])
        phi.append(lookup[key])
    am = ActionMorphism(small, big, tuple(range(small.size)), tuple(phi))
    check_action_morphism(am)
    return am


# ---------------------------------------------------------------------------
# theories


@dataclass(frozen=True)
class Theory:
    """The two-object theory of an action, optionally reflexive.

    When reflexive, ``fix_of[x]`` names the element of ``Fix(M)`` that the
    point ``x`` is identified with; the composite ``x∘ℓ`` is that element.
    """

    action: RightAction
    reflexive: bool = False
    fix_of: tuple[int, ...] | None = field(default=None)

    @property
    def monoid(self) -> FiniteMonoid:
        return self.action.monoid

    @property
    def nx(self) -> int:
        return self.action.size

    @property
    def nm(self) -> int:
        return self.action.monoid.size

    @property
    def mul(self) -> Table:
        return self.action.monoid.mul

    @property
    def act(self) -> Table:
        return self.action.act

    @property
    def unit(self) -> int:
        return self.action.monoid.unit


def _fix_bijection(action: RightAction) -> tuple[int, ...]:
    m = action.monoid
    fixed = sorted(fix_set(m))
    n = action.size
    if n == 0 or len(fixed) != n:
        raise BadTheory(
            "a reflexive theory needs X in bijection with Fix(M)",
            xsize=n,
            fix_size=len(fixed),
        )
    # preferred choice: the element acting as the constant map onto x
    preferred = []
    for x in range(n):
        cands = [f for f in fixed if all(action.act[y][f] == x for y in range(n))]
        preferred.append(cands[0] if len(cands) == 1 else None)

    def equivariant(bij: Sequence[int]) -> bool:
        inv = {f: x for x, f in enumerate(bij)}
        return all(
            inv.get(m.mul[bij[x]][k]) == action.act[x][k] for x in range(n) for k in range(m.size)
        )

    if all(p is not None for p in preferred) and len(set(preferred)) == n:
        if equivariant(preferred):  # type: ignore[arg-type]
            return tuple(preferred)  # type: ignore[arg-type]
    for perm in itertools.permutations(fixed):
        if equivariant(perm):
            return tuple(perm)
    raise BadTheory("no equivariant bijection between X and Fix(M)")


def make_theory(
    action: RightAction, reflexive: bool = False, fix_of: Sequence[int] | None = None
) -> Theory:
    """Build and validate a theory.

    For a reflexive theory the composites are checked against the category
    axioms: ``ℓ∘x = id_V``, ``ℓ∘m = ℓ``, ``x_f∘ℓ = f`` and
    ``m∘(x_f∘ℓ) = x_f∘ℓ``.
    """
    if not reflexive:
        if fix_of is not None:
            raise BadTheory("fix_of is only meaningful for reflexive theories")
        return Theory(action, False, None)
    if fix_of is None:
        fix = _fix_bijection(action)
    else:
        fix = tuple(fix_of)
        fixed = fix_set(action.monoid)
        if sorted(fix) != sorted(fixed) or len(fix) != action.size:
            raise BadTheory("fix_of must be a bijection from X onto Fix(M)")
    m = action.monoid
    inv = {f: x for x, f in enumerate(fix)}
    for x in range(action.size):
        for k in range(m.size):
            # x_f.k corresponds to f·k, and f absorbs on the left
            if inv[m.mul[fix[x]][k]] != action.act[x][k]:
                raise BadTheory("X and Fix(M) are not isomorphic as M-sets", point=x)
            if m.mul[k][fix[x]] != fix[x]:
                raise BadTheory("Fix(M) element is not left absorbing", point=x)
        # the loop of v_x meets v_x at every incidence
        for y in range(action.size):
            if action.act[y][fix[x]] != x:
                raise BadTheory("x_f does not act as the constant onto x", point=x)
    return Theory(action, True, fix)


def standard_theory(
    kind: str,
    xsize: int,
    *,
    reflexive: bool = False,
    partition: tuple[Sequence[int], Sequence[int]] | None = None,
) -> Theory:
    """Theory of a named endomap submonoid, e.g. ``standard_theory("s", 2)``."""
    return make_theory(endo_submonoid(xsize, kind, partition), reflexive)

