"""Fixed combinatorics of a single tetrahedron.

Vertices are 0..3 and face ``f`` is the face opposite vertex ``f``.  Edges are
indexed by the vertex pair they join, in the order of ``EDGES``.  The three
pairs of opposite edges are indexed in the order of ``EDGE_PAIRS``; quad and
octagon types use this index.
"""
from __future__ import annotations

from itertools import permutations

VERTICES = (0, 1, 2, 3)

EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {e: i for i, e in enumerate(EDGES)}

# (01, 23), (02, 13), (03, 12)
EDGE_PAIRS = ((0, 5), (1, 4), (2, 3))

FACES = tuple(tuple(v for v in VERTICES if v != f) for f in VERTICES)


def edge_index(a: int, b: int) -> int:
    return EDGE_INDEX[(a, b) if a < b else (b, a)]


def pair_of_edge(e: int) -> int:
    for p, pair in enumerate(EDGE_PAIRS):
        if e in pair:
            return p
    raise ValueError(e)


def edge_faces(e: int) -> tuple[int, int]:
    """The two faces containing edge ``e``."""
    a, b = EDGES[e]
    return tuple(f for f in VERTICES if f not in (a, b))


def shared_edge(f: int, g: int) -> int:
    """Index of the edge common to faces ``f`` and ``g`` (f != g)."""
    a, b = (v for v in VERTICES if v not in (f, g))
    return edge_index(a, b)


def third_vertex(f: int, a: int, b: int) -> int:
    """The vertex of face ``f`` other than ``a`` and ``b``."""
    (c,) = (v for v in FACES[f] if v not in (a, b))
    return c


def arc_edges(f: int, v: int) -> tuple[int, int]:
    """Edges joined by the normal arc in face ``f`` cutting off vertex ``v``."""
    a, b = (u for u in FACES[f] if u != v)
    return edge_index(v, a), edge_index(v, b)


def partition_of_pair(p: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Vertex partition separated by a quad of type ``p``.

    A quad of type ``p`` misses both edges of pair ``p``; each missed edge lies
    entirely on one side.  The side containing vertex 0 is listed first.
    """
    e, e2 = EDGE_PAIRS[p]
    return EDGES[e], EDGES[e2]


# All 24 vertex relabelings, and the 12 orientation-preserving ones.
ALL_PERMS = tuple(permutations(VERTICES))


def _is_even(perm) -> bool:
    inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
    return inversions % 2 == 0


EVEN_PERMS = tuple(p for p in ALL_PERMS if _is_even(p))


def permute_edge(perm, e: int) -> int:
    a, b = EDGES[e]
    return edge_index(perm[a], perm[b])


class UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def groups(self) -> list[list]:
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())
