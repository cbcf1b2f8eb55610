"""Disjoint sets over ``range(n)`` with smallest-id representatives."""

from __future__ import annotations

from collections.abc import Iterable


class UnionFind:
    """Union-find with path compression.

    The representative of every class is its smallest element, which makes
    every quotient built on top of it deterministic.

    >>> uf = UnionFind(4)
    >>> uf.union(3, 1)
    True
    >>> uf.find(3)
    1
    >>> uf.classes()
    [[0], [1, 3], [2]]
    """

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def __len__(self) -> int:
        return len(self.parent)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of ``x`` and ``y``; return True if they were distinct."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def union_all(self, pairs: Iterable[tuple[int, int]]) -> bool:
        changed = False
        for x, y in pairs:
            changed |= self.union(x, y)
        return changed

    def classes(self) -> list[list[int]]:
        """Classes as sorted lists, ordered by representative."""
        buckets: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            buckets.setdefault(self.find(x), []).append(x)
        return [buckets[r] for r in sorted(buckets)]

    def labels(self) -> tuple[list[int], int]:
        """Dense class index for each element, plus the number of classes."""
        index: dict[int, int] = {}
        out = []
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in index:
                index[r] = len(index)
            out.append(index[r])
        return out, len(index)
