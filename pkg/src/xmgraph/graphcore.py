"""Finite (X,M)-graphs, their morphisms and subgraphs, and hom search."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from .algebra import Table, Theory
from .errors import (
    ActionIncompatible,
    BadLoop,
    NotAMorphism,
    NotClosed,
    SizeBound,
    TheoryMismatch,
    UnitViolation,
    ValidationError,
)

DEFAULT_SUB_CAP = 10_000


@dataclass(frozen=True)
class XMGraph:
    """A finite presheaf on a theory.

    ``inc[a][x]`` is the vertex ``a.x``, ``mact[a][m]`` the arc ``a.m`` and,
    for reflexive theories, ``loop[v]`` is the distinguished loop ``v.ℓ``.
    """

    theory: Theory
    nv: int
    inc: Table
    mact: Table
    loop: tuple[int, ...] | None = None
    vnames: tuple[str, ...] | None = None
    anames: tuple[str, ...] | None = None

    @property
    def na(self) -> int:
        return len(self.inc)

    @property
    def reflexive(self) -> bool:
        return self.theory.reflexive

    def vname(self, v: int) -> str:
        return self.vnames[v] if self.vnames is not None else f"v{v}"

    def aname(self, a: int) -> str:
        return self.anames[a] if self.anames is not None else f"a{a}"

    def boundary(self, a: int) -> tuple[int, ...]:
        """The parametrized incidence ``x -> a.x``."""
        return self.inc[a]

    def orbit(self, a: int) -> frozenset[int]:
        return frozenset(self.mact[a])

    def is_loop(self, a: int) -> bool:
        return len(set(self.inc[a])) <= 1

    def is_fixed(self, a: int) -> bool:
        """``a.m = a`` for every ``m``, ignoring the constants of a reflexive theory.

        Reflexive constants always send an arc to a distinguished loop, so
        they are left out of the test.
        """
        skip = set(self.theory.fix_of) if self.reflexive else set()
        return all(b == a for m, b in enumerate(self.mact[a]) if m not in skip)

    def distinguished(self) -> frozenset[int]:
        return frozenset(self.loop) if self.loop is not None else frozenset()

    def summary(self) -> dict[str, int]:
        return {"verts": self.nv, "arcs": self.na}


def make_graph(
    theory: Theory,
    nv: int,
    inc: Sequence[Sequence[int]],
    mact: Sequence[Sequence[int]],
    loop: Sequence[int] | None = None,
    *,
    vnames: Sequence[str] | None = None,
    anames: Sequence[str] | None = None,
    check: bool = True,
) -> XMGraph:
    g = XMGraph(
        theory,
        nv,
        tuple(tuple(r) for r in inc),
        tuple(tuple(r) for r in mact),
        tuple(loop) if loop is not None else None,
        tuple(vnames) if vnames is not None else None,
        tuple(anames) if anames is not None else None,
    )
    if check:
        validate(g)
    return g


def validate(g: XMGraph) -> bool:
    """Check every presheaf law exhaustively; raise with a witness on failure."""
    t = g.theory
    nx, nm = t.nx, t.nm
    if len(g.mact) != g.na:
        raise ValidationError("action table and incidence table disagree on arcs")
    for a in range(g.na):
        if len(g.inc[a]) != nx or any(not (0 <= v < g.nv) for v in g.inc[a]):
            raise ValidationError(f"incidence row of arc {g.aname(a)} is not total", arc=g.aname(a))
        if len(g.mact[a]) != nm or any(not (0 <= b < g.na) for b in g.mact[a]):
            raise ValidationError(f"action row of arc {g.aname(a)} is not total", arc=g.aname(a))
    if g.vnames is not None and len(g.vnames) != g.nv:
        raise ValidationError("vertex name table has the wrong length")
    if g.anames is not None and len(g.anames) != g.na:
        raise ValidationError("arc name table has the wrong length")
    mul, act = t.mul, t.act
    for a in range(g.na):
        row = g.mact[a]
        if row[t.unit] != a:
            raise UnitViolation(f"unit moves arc {g.aname(a)}", arc=g.aname(a))
        for m in range(nm):
            b = row[m]
            for k in range(nm):
                if g.mact[b][k] != row[mul[k][m]]:
                    raise ActionIncompatible(
                        "(a.m).k != a.(k·m)",
                        arc=g.aname(a),
                        m=t.monoid.names[m],
                        k=t.monoid.names[k],
                    )
            for x in range(nx):
                if g.inc[b][x] != g.inc[a][act[x][m]]:
                    raise ActionIncompatible(
                        "(a.m).x != a.(x.m)",
                        arc=g.aname(a),
                        m=t.monoid.names[m],
                        x=t.action.names[x],
                    )
    if t.reflexive:
        if g.loop is None or len(g.loop) != g.nv:
            raise BadLoop("reflexive graphs need one distinguished loop per vertex")
        for v in range(g.nv):
            lp = g.loop[v]
            if not (0 <= lp < g.na):
                raise BadLoop(f"loop of {g.vname(v)} is not an arc", vertex=g.vname(v))
            if any(y != v for y in g.inc[lp]):
                raise BadLoop(f"loop of {g.vname(v)} leaves the vertex", vertex=g.vname(v))
            if any(b != lp for b in g.mact[lp]):
                raise BadLoop(f"loop of {g.vname(v)} is moved by M", vertex=g.vname(v))
        fix = t.fix_of
        assert fix is not None
        for a in range(g.na):
            for x in range(nx):
                if g.loop[g.inc[a][x]] != g.mact[a][fix[x]]:
                    raise BadLoop(
                        "(a.x).ℓ != a.(x∘ℓ)", arc=g.aname(a), x=t.action.names[x]
                    )
    elif g.loop is not None:
        raise BadLoop("non-reflexive graphs carry no distinguished loops")
    return True


# ---------------------------------------------------------------------------
# standard objects


def representable(theory: Theory, which: str) -> XMGraph:
    """The representable ``V`` or ``A``; arcs of ``A`` are ``a_m`` for m in M."""
    mnames = theory.monoid.names
    xnames = theory.action.names
    if which == "V":
        if theory.reflexive:
            return make_graph(
                theory, 1, [[0] * theory.nx], [[0] * theory.nm], [0],
                vnames=["v"], anames=["l"], check=False,
            )
        return make_graph(theory, 1, [], [], vnames=["v"], anames=[], check=False)
    if which != "A":
        raise ValueError("which must be 'V' or 'A'")
    inc = [[theory.act[x][m] for x in range(theory.nx)] for m in range(theory.nm)]
    mact = [[theory.mul[k][m] for k in range(theory.nm)] for m in range(theory.nm)]
    loop = list(theory.fix_of) if theory.reflexive else None
    return make_graph(
        theory,
        theory.nx,
        inc,
        mact,
        loop,
        vnames=[f"v_{x}" for x in xnames],
        anames=[f"a_{m}" for m in mnames],
        check=False,
    )


def terminal(theory: Theory) -> XMGraph:
    return make_graph(
        theory,
        1,
        [[0] * theory.nx],
        [[0] * theory.nm],
        [0] if theory.reflexive else None,
        check=False,
    )


def initial(theory: Theory) -> XMGraph:
    return make_graph(theory, 0, [], [], [] if theory.reflexive else None, check=False)


def discrete_graph(theory: Theory, n: int) -> XMGraph:
    """``n`` vertices and no arcs (non-reflexive) or only their loops (reflexive)."""
    if theory.reflexive:
        inc = [[v] * theory.nx for v in range(n)]
        mact = [[v] * theory.nm for v in range(n)]
        return make_graph(theory, n, inc, mact, list(range(n)), check=False)
    return make_graph(theory, n, [], [], check=False)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class GraphMorphism:
    src: XMGraph
    dst: XMGraph
    fv: tuple[int, ...]
    fa: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.fa[a]

    def is_mono(self) -> bool:
        return len(set(self.fv)) == len(self.fv) and len(set(self.fa)) == len(self.fa)

    def is_epi(self) -> bool:
        return set(self.fv) == set(range(self.dst.nv)) and set(self.fa) == set(range(self.dst.na))

    def is_iso(self) -> bool:
        return self.is_mono() and self.is_epi()

    def then(self, other: GraphMorphism) -> GraphMorphism:
        """Diagrammatic composite: first ``self`` then ``other``."""
        return compose(self, other)

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.fv, self.fa)


def same_theory(*graphs: XMGraph) -> Theory:
    t = graphs[0].theory
    for g in graphs[1:]:
        if g.theory != t:
            raise TheoryMismatch("graphs live over different theories")
    return t


def check_morphism(f: GraphMorphism) -> bool:
    g, h = f.src, f.dst
    same_theory(g, h)
    if len(f.fv) != g.nv or len(f.fa) != g.na:
        raise NotAMorphism("maps are not total")
    if any(not (0 <= w < h.nv) for w in f.fv) or any(not (0 <= b < h.na) for b in f.fa):
        raise NotAMorphism("maps leave the target")
    t = g.theory
    for a in range(g.na):
        b = f.fa[a]
        for x in range(t.nx):
            if f.fv[g.inc[a][x]] != h.inc[b][x]:
                raise NotAMorphism("incidence not preserved", arc=g.aname(a), x=x)
        for m in range(t.nm):
            if f.fa[g.mact[a][m]] != h.mact[b][m]:
                raise NotAMorphism("action not preserved", arc=g.aname(a), m=m)
    if t.reflexive:
        for v in range(g.nv):
            if f.fa[g.loop[v]] != h.loop[f.fv[v]]:
                raise NotAMorphism("distinguished loop not preserved", vertex=g.vname(v))
    return True


def make_morphism(
    src: XMGraph, dst: XMGraph, fv: Sequence[int], fa: Sequence[int], *, check: bool = True
) -> GraphMorphism:
    f = GraphMorphism(src, dst, tuple(fv), tuple(fa))
    if check:
        check_morphism(f)
    return f


def identity(g: XMGraph) -> GraphMorphism:
    return GraphMorphism(g, g, tuple(range(g.nv)), tuple(range(g.na)))


def compose(f: GraphMorphism, g: GraphMorphism) -> GraphMorphism:
    """First ``f`` then ``g``."""
    if f.dst != g.src:
        raise TheoryMismatch("morphisms are not composable")
    return GraphMorphism(
        f.src, g.dst, tuple(g.fv[v] for v in f.fv), tuple(g.fa[a] for a in f.fa)
    )


def classifying_map(g: XMGraph, cell: tuple[str, int]) -> GraphMorphism:
    """Yoneda: the morphism out of a representable that picks ``cell``.

    ``("A", a)`` gives ``a_m -> a.m`` and ``v_x -> a.x``; ``("V", v)`` gives
    the vertex (and its loop when reflexive).
    """
    kind, c = cell
    t = g.theory
    if kind == "A":
        rep = representable(t, "A")
        return GraphMorphism(rep, g, tuple(g.inc[c]), tuple(g.mact[c]))
    rep = representable(t, "V")
    fa = (g.loop[c],) if t.reflexive else ()
    return GraphMorphism(rep, g, (c,), fa)


# ---------------------------------------------------------------------------
# hom search


class _Search:
    """Backtracking assignment with propagation along actions and incidence."""

    def __init__(self, g: XMGraph, h: XMGraph, injective: bool = False) -> None:
        same_theory(g, h)
        self.g, self.h = g, h
        self.fv = [-1] * g.nv
        self.fa = [-1] * g.na
        self.trail: list[tuple[int, int]] = []
        self.injective = injective
        self.used_v = [False] * h.nv
        self.used_a = [False] * h.na
        self.refl = g.theory.reflexive

    def push(self, kind: int, c: int, d: int) -> bool:
        g, h = self.g, self.h
        stack = [(kind, c, d)]
        fv, fa = self.fv, self.fa
        while stack:
            kind, c, d = stack.pop()
            if kind == 0:
                cur = fa[c]
                if cur >= 0:
                    if cur != d:
                        return False
                    continue
                if self.injective:
                    if self.used_a[d]:
                        return False
                    self.used_a[d] = True
                fa[c] = d
                self.trail.append((0, c))
                grow, hrow = g.mact[c], h.mact[d]
                for m in range(len(grow)):
                    stack.append((0, grow[m], hrow[m]))
                gi, hi = g.inc[c], h.inc[d]
                for x in range(len(gi)):
                    stack.append((1, gi[x], hi[x]))
            else:
                cur = fv[c]
                if cur >= 0:
                    if cur != d:
                        return False
                    continue
                if self.injective:
                    if self.used_v[d]:
                        return False
                    self.used_v[d] = True
                fv[c] = d
                self.trail.append((1, c))
                if self.refl:
                    stack.append((0, g.loop[c], h.loop[d]))
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            kind, c = self.trail.pop()
            if kind == 0:
                if self.injective:
                    self.used_a[self.fa[c]] = False
                self.fa[c] = -1
            else:
                if self.injective:
                    self.used_v[self.fv[c]] = False
                self.fv[c] = -1

    def solutions(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        g, h = self.g, self.h
        cells = [(0, a) for a in range(g.na)] + [(1, v) for v in range(g.nv)]
        n = len(cells)

        def rec(i: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
            while i < n:
                kind, c = cells[i]
                if (self.fa[c] if kind == 0 else self.fv[c]) < 0:
                    break
                i += 1
            if i == n:
                yield tuple(self.fv), tuple(self.fa)
                return
            kind, c = cells[i]
            for d in range(h.na if kind == 0 else h.nv):
                mark = len(self.trail)
                if self.push(kind, c, d):
                    yield from rec(i + 1)
                self.undo(mark)

        yield from rec(0)


def iter_homs(g: XMGraph, h: XMGraph, *, injective: bool = False) -> Iterator[GraphMorphism]:
    """All morphisms ``g -> h`` in canonical order (by arc images, then vertex images)."""
    for fv, fa in _Search(g, h, injective).solutions():
        yield GraphMorphism(g, h, fv, fa)


def hom_enumerate(g: XMGraph, h: XMGraph) -> list[GraphMorphism]:
    return list(iter_homs(g, h))


def hom_count(g: XMGraph, h: XMGraph) -> int:
    return sum(1 for _ in _Search(g, h).solutions())


def hom_exists(g: XMGraph, h: XMGraph) -> bool:
    return next(iter(_Search(g, h).solutions()), None) is not None


def extensions(
    g: XMGraph,
    h: XMGraph,
    partial_v: dict[int, int] | None = None,
    partial_a: dict[int, int] | None = None,
) -> Iterator[GraphMorphism]:
    """Morphisms ``g -> h`` that agree with the given partial assignment."""
    s = _Search(g, h)
    for a, b in (partial_a or {}).items():
        if not s.push(0, a, b):
            return
    for v, w in (partial_v or {}).items():
        if not s.push(1, v, w):
            return
    for fv, fa in s.solutions():
        yield GraphMorphism(g, h, fv, fa)


def iso_check(g: XMGraph, h: XMGraph) -> GraphMorphism | None:
    """The first isomorphism ``g -> h`` in canonical order, if any."""
    same_theory(g, h)
    if g.nv != h.nv or g.na != h.na:
        return None
    if _invariant(g) != _invariant(h):
        return None
    for fv, fa in _Search(g, h, injective=True).solutions():
        return GraphMorphism(g, h, fv, fa)
    return None


def _invariant(g: XMGraph) -> tuple:
    orbit_sizes = sorted(len(set(r)) for r in g.mact)
    kernels = sorted(len(set(r)) for r in g.inc)
    degree = [0] * g.nv
    for row in g.inc:
        for v in row:
            degree[v] += 1
    return (tuple(orbit_sizes), tuple(kernels), tuple(sorted(degree)))


def automorphisms(g: XMGraph) -> list[GraphMorphism]:
    return [GraphMorphism(g, g, fv, fa) for fv, fa in _Search(g, g, injective=True).solutions()]


# ---------------------------------------------------------------------------
# subgraphs


@dataclass(frozen=True)
class Subgraph:
    parent: XMGraph
    verts: frozenset[int]
    arcs: frozenset[int]

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (tuple(sorted(self.verts)), tuple(sorted(self.arcs)))

    def __le__(self, other: Subgraph) -> bool:
        return self.verts <= other.verts and self.arcs <= other.arcs

    def __lt__(self, other: Subgraph) -> bool:
        return self <= other and self != other

    def meet(self, other: Subgraph) -> Subgraph:
        return Subgraph(self.parent, self.verts & other.verts, self.arcs & other.arcs)

    def join(self, other: Subgraph) -> Subgraph:
        return Subgraph(self.parent, self.verts | other.verts, self.arcs | other.arcs)

    def is_empty(self) -> bool:
        return not self.verts and not self.arcs

    def to_graph(self) -> tuple[XMGraph, GraphMorphism]:
        """Materialize as a graph together with its inclusion into the parent."""
        return induced(self.parent, self.verts, self.arcs)


def is_closed(g: XMGraph, verts: Iterable[int], arcs: Iterable[int]) -> bool:
    vs, as_ = set(verts), set(arcs)
    for a in as_:
        if any(v not in vs for v in g.inc[a]) or any(b not in as_ for b in g.mact[a]):
            return False
    if g.reflexive:
        if any(g.loop[v] not in as_ for v in vs):
            return False
    return True


def make_subgraph(g: XMGraph, verts: Iterable[int], arcs: Iterable[int]) -> Subgraph:
    vs, as_ = frozenset(verts), frozenset(arcs)
    if any(not (0 <= v < g.nv) for v in vs) or any(not (0 <= a < g.na) for a in as_):
        raise NotClosed("cell ids out of range")
    if not is_closed(g, vs, as_):
        raise NotClosed("selection is not closed under incidence and action")
    return Subgraph(g, vs, as_)


def generate(g: XMGraph, verts: Iterable[int] = (), arcs: Iterable[int] = ()) -> Subgraph:
    """Smallest subgraph containing the given cells."""
    vs = set(verts)
    as_: set[int] = set()
    for a in arcs:
        as_.update(g.mact[a])
    for a in as_:
        vs.update(g.inc[a])
    if g.reflexive:
        as_.update(g.loop[v] for v in vs)
    return Subgraph(g, frozenset(vs), frozenset(as_))


def whole(g: XMGraph) -> Subgraph:
    return Subgraph(g, frozenset(range(g.nv)), frozenset(range(g.na)))


def empty_sub(g: XMGraph) -> Subgraph:
    return Subgraph(g, frozenset(), frozenset())


def image(f: GraphMorphism) -> Subgraph:
    return Subgraph(f.dst, frozenset(f.fv), frozenset(f.fa))


def induced(g: XMGraph, verts: Iterable[int], arcs: Iterable[int]) -> tuple[XMGraph, GraphMorphism]:
    vs, as_ = sorted(set(verts)), sorted(set(arcs))
    vpos = {v: i for i, v in enumerate(vs)}
    apos = {a: i for i, a in enumerate(as_)}
    inc = [[vpos[v] for v in g.inc[a]] for a in as_]
    mact = [[apos[b] for b in g.mact[a]] for a in as_]
    loop = [apos[g.loop[v]] for v in vs] if g.reflexive else None
    sub = make_graph(
        g.theory,
        len(vs),
        inc,
        mact,
        loop,
        vnames=[g.vname(v) for v in vs],
        anames=[g.aname(a) for a in as_],
        check=False,
    )
    return sub, GraphMorphism(sub, g, tuple(vs), tuple(as_))


def _cell_closures(g: XMGraph) -> list[tuple[frozenset[int], frozenset[int]]]:
    out = []
    for a in range(g.na):
        s = generate(g, arcs=[a])
        out.append((s.verts, s.arcs))
    for v in range(g.nv):
        s = generate(g, verts=[v])
        out.append((s.verts, s.arcs))
    return out


def iter_subgraphs(g: XMGraph, cap: int = DEFAULT_SUB_CAP) -> Iterator[Subgraph]:
    """Every subgraph exactly once; raises :class:`SizeBound` past ``cap``."""
    closures = _cell_closures(g)
    cells = [(0, a) for a in range(g.na)] + [(1, v) for v in range(g.nv)]
    count = 0

    def rec(i: int, vs: frozenset[int], as_: frozenset[int], xv: frozenset[int], xa: frozenset[int]):
        nonlocal count
        if i == len(cells):
            count += 1
            if count > cap:
                raise SizeBound(f"more than {cap} subgraphs", cap=cap)
            yield Subgraph(g, vs, as_)
            return
        kind, c = cells[i]
        inside = c in (as_ if kind == 0 else vs)
        if inside:
            yield from rec(i + 1, vs, as_, xv, xa)
            return
        if kind == 0:
            yield from rec(i + 1, vs, as_, xv, xa | {c})
        else:
            yield from rec(i + 1, vs, as_, xv | {c}, xa)
        cv, ca = closures[i]
        if not (cv & xv) and not (ca & xa):
            yield from rec(i + 1, vs | cv, as_ | ca, xv, xa)

    yield from rec(0, frozenset(), frozenset(), frozenset(), frozenset())


def sub_enumerate(g: XMGraph, cap: int = DEFAULT_SUB_CAP) -> list[Subgraph]:
    return list(iter_subgraphs(g, cap))


def arc_orbits(g: XMGraph) -> list[list[int]]:
    """Classes of the equivalence generated by ``a ~ a.m``."""
    from .unionfind import UnionFind

    uf = UnionFind(g.na)
    for a in range(g.na):
        for b in g.mact[a]:
            uf.union(a, b)
    return uf.classes()


def is_simple(g: XMGraph) -> bool:
    """At most one arc per parametrized incidence."""
    return len(set(g.inc)) == g.na


def components(g: XMGraph) -> list[Subgraph]:
    """Connected components, each a subgraph, ordered by smallest cell.

    Cells are linked along incidence and along the arc action, so a graph
    over an empty ``X`` still splits into its arc orbits.
    """
    from .unionfind import UnionFind

    uf = UnionFind(g.nv + g.na)
    for a in range(g.na):
        for b in g.mact[a]:
            uf.union(g.nv + a, g.nv + b)
        for v in g.inc[a]:
            uf.union(v, g.nv + a)
    if g.reflexive:
        for v in range(g.nv):
            uf.union(v, g.nv + g.loop[v])
    out = []
    for cls in uf.classes():
        out.append(
            Subgraph(
                g,
                frozenset(c for c in cls if c < g.nv),
                frozenset(c - g.nv for c in cls if c >= g.nv),
            )
        )
    return out
