"""Connected normal curves on the boundary of one tetrahedron.

A normal curve is stored as a cyclic word of arc steps ``(face, vertex)``:
the arc lies in ``face`` and cuts off ``vertex``.  Consecutive steps cross the
edge shared by their faces.  Words are kept in canonical form, the
lexicographically least rotation of the word or of its reversal.

Multicurves are described by arc counts, a 12-tuple indexed like ``ARCS``.
Arc counts determine the multicurve up to normal isotopy; ``pack`` builds the
unique embedded realization, placing the arcs of one type in a face nested by
depth from the vertex they cut off.  Points on an edge ``(a, b)``, ``a < b``,
are numbered from ``a``.  Sub-edge ``j`` of an edge of weight ``w`` runs from
point ``j - 1`` to point ``j`` (points ``-1`` and ``w`` being the end
vertices); the interior sub-edge ``j`` has gap index ``j - 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .tetra import (
    ALL_PERMS,
    EDGE_PAIRS,
    EDGES,
    EVEN_PERMS,
    FACES,
    UnionFind,
    arc_edges,
    edge_faces,
    edge_index,
    shared_edge,
)

ARCS = tuple((f, v) for f in range(4) for v in FACES[f])
ARC_INDEX = {a: i for i, a in enumerate(ARCS)}


class NotANormalCurve(ValueError):
    pass


class UnclassifiableLength(RuntimeError):
    pass


class NotDisjointlyRealizable(ValueError):
    pass


# ---------------------------------------------------------------------------
# words


def canonical_word(word) -> tuple:
    word = tuple(tuple(s) for s in word)
    n = len(word)
    rev = word[::-1]
    return min(min(word[i:] + word[:i] for i in range(n)), min(rev[i:] + rev[:i] for i in range(n)))


def format_word(word) -> str:
    return " ".join(f"{f}:{v}" for f, v in word)


_STEP = re.compile(r"^([0-3]):([0-3])$")


def parse_word(text: str) -> tuple:
    """Parse ``"1:0 2:0 3:0"`` (commas also accepted as separators)."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise NotANormalCurve("empty curve word")
    steps = []
    for tok in tokens:
        m = _STEP.match(tok)
        if not m:
            raise NotANormalCurve(f"bad step {tok!r}, expected face:vertex")
        steps.append((int(m.group(1)), int(m.group(2))))
    return tuple(steps)


def check_walk(word) -> None:
    """Raise unless consecutive steps of the cyclic word form a normal walk."""
    n = len(word)
    if n < 3:
        raise NotANormalCurve("a normal curve has at least 3 arcs")
    for i, (f, v) in enumerate(word):
        if f not in range(4) or v not in range(4) or f == v:
            raise NotANormalCurve(f"step {f}:{v} is not a normal arc")
    for i in range(n):
        f, v = word[i]
        g, u = word[(i + 1) % n]
        if f == g:
            raise NotANormalCurve(f"steps {i} and {i + 1} lie in the same face {f}")
        # crossing edge is the complement of {f, g}; both arcs must end on it
        if v == g or u == f:
            raise NotANormalCurve(f"steps {i} and {i + 1} do not share an edge crossing")
        if word[i - 1][0] == g:
            raise NotANormalCurve(f"arc {i} returns to the edge it came from")


def word_arc_counts(word) -> tuple:
    counts = [0] * 12
    for step in word:
        counts[ARC_INDEX[tuple(step)]] += 1
    return tuple(counts)


def permute_word(perm, word) -> tuple:
    return canonical_word(tuple((perm[f], perm[v]) for f, v in word))


# ---------------------------------------------------------------------------
# multicurve realization


def edge_weights(counts) -> tuple:
    """Edge weights of the multicurve with the given arc counts.

    Raises ``ValueError`` if the two faces at some edge disagree.
    """
    weights = []
    for e, (a, b) in enumerate(EDGES):
        seen = set()
        for f in edge_faces(e):
            seen.add(counts[ARC_INDEX[(f, a)]] + counts[ARC_INDEX[(f, b)]])
        if len(seen) != 1:
            raise ValueError(f"arc counts do not match along edge {a}{b}")
        weights.append(seen.pop())
    return tuple(weights)


def point_position(w: int, x: int, y: int, depth: int) -> int:
    """Index (from the lower endpoint) of the point at ``depth`` from ``x`` on edge xy."""
    return depth if x < y else w - 1 - depth


def subedge_position(w: int, x: int, y: int, depth: int) -> int:
    """Index of the sub-edge at ``depth`` from ``x`` on edge xy (depth 0 touches x)."""
    return depth if x < y else w - depth


@dataclass
class Packing:
    """The embedded multicurve realizing a vector of arc counts."""

    counts: tuple
    weights: tuple = field(init=False)
    components: list = field(init=False)

    def __post_init__(self):
        self.weights = edge_weights(self.counts)
        self.components = self._trace()

    def arc_points(self, f: int, v: int, d: int):
        out = []
        for e in arc_edges(f, v):
            a, b = EDGES[e]
            other = b if a == v else a
            out.append((e, point_position(self.weights[e], v, other, d)))
        return tuple(out)

    def _trace(self):
        at_point = {}
        for (f, v), n in zip(ARCS, self.counts):
            for d in range(n):
                for p in self.arc_points(f, v, d):
                    at_point.setdefault(p, []).append((f, v, d))
        unused = {a for arcs in at_point.values() for a in arcs}
        comps = []
        while unused:
            start = min(unused)
            arcs, points = [], []
            arc = start
            p_in = self.arc_points(*start)[0]
            while True:
                unused.discard(arc)
                arcs.append(arc)
                p0, p1 = self.arc_points(*arc)
                p_out = p1 if p0 == p_in else p0
                points.append(p_out)
                a, b = at_point[p_out]
                arc = b if a == arc else a
                p_in = p_out
                if arc == start:
                    break
            comps.append((tuple(arcs), tuple(points)))
        return comps

    def words(self) -> list:
        return [canonical_word(tuple((f, v) for f, v, _ in arcs)) for arcs, _ in self.components]

    def curves(self) -> list[NormalCurve]:
        return [NormalCurve._trusted(w) for w in self.words()]


def decompose(counts) -> list[NormalCurve]:
    """Components of the normal multicurve with the given arc counts."""
    return Packing(tuple(counts)).curves()


# ---------------------------------------------------------------------------
# regions of the boundary sphere cut along a multicurve


def face_regions(counts, weights):
    """Regions of each face cut by the packed arcs.

    Returns a list of ``(face, subedges, vertices)``; ``subedges`` holds
    ``(edge, j)`` pairs.  Every sub-edge appears in exactly two regions, one
    for each face containing its edge.
    """
    regions = []
    for f in range(4):
        n = {v: counts[ARC_INDEX[(f, v)]] for v in FACES[f]}
        central_sub, central_verts = [], []
        for x in FACES[f]:
            others = [y for y in FACES[f] if y != x]
            for d in range(n[x]):
                subs = []
                for y in others:
                    e = edge_index(x, y)
                    subs.append((e, subedge_position(weights[e], x, y, d)))
                regions.append((f, tuple(subs), (x,) if d == 0 else ()))
            if n[x] == 0:
                central_verts.append(x)
            for y in others:
                if x < y:
                    e = edge_index(x, y)
                    central_sub.append((e, subedge_position(weights[e], x, y, n[x])))
        regions.append((f, tuple(central_sub), tuple(central_verts)))
    return regions


def sphere_pieces(counts, weights, cut=()):
    """Components of the sphere minus the multicurve (and minus sub-edges ``cut``).

    Each piece is returned as ``(vertices, subedges)``; a cut sub-edge is
    reported in both pieces it borders.
    """
    regions = face_regions(counts, weights)
    uf = UnionFind()
    owner = {}
    for i, (_, subs, _) in enumerate(regions):
        uf.add(i)
        for s in subs:
            owner.setdefault(s, []).append(i)
    cut = set(cut)
    for s, (i, j) in owner.items():
        if s not in cut:
            uf.union(i, j)
    pieces = []
    for group in uf.groups():
        verts, subs = set(), set()
        for i in group:
            subs.update(regions[i][1])
            verts.update(regions[i][2])
        pieces.append((tuple(sorted(verts)), tuple(sorted(subs))))
    pieces.sort(key=lambda p: (p[0][:1] or (9,), p[1]))
    return pieces


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class HemisphereData:
    vertices: tuple
    stubs: tuple  # (edge, vertex) pairs: sub-edges running from a vertex to the curve
    full_edges: tuple  # edges not met by the curve
    parallel: tuple  # (edge, gap) pairs: sub-edges with both ends on the curve

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def parallel_count(self) -> int:
        return len(self.parallel)


@dataclass(frozen=True)
class CurveClass:
    kind: str  # "vertex_link" | "quad" | "long"
    length: int
    vertex: int | None = None
    edge_pair: int | None = None
    k: int | None = None
    hemisphere_stats: tuple = ()

    def __str__(self):
        if self.kind == "vertex_link":
            head = f"VertexLink(vertex={self.vertex})"
        elif self.kind == "quad":
            head = f"QuadCurve(edge_pair={self.edge_pair})"
        else:
            head = f"LongCurve(k={self.k}, axis={self.edge_pair})"
        stats = "; ".join(f"{v} vertices, {p} parallel" for v, p in self.hemisphere_stats)
        return f"{head} length={self.length} hemispheres=[{stats}]"


@dataclass(frozen=True)
class NormalCurve:
    """A connected normal curve on the boundary of a tetrahedron."""

    word: tuple

    @classmethod
    def from_word(cls, word) -> NormalCurve:
        if isinstance(word, str):
            word = parse_word(word)
        word = tuple(tuple(s) for s in word)
        check_walk(word)
        canon = canonical_word(word)
        try:
            pack = Packing(word_arc_counts(word))
        except ValueError as exc:  # pragma: no cover - a closed walk always matches
            raise NotANormalCurve(str(exc)) from None
        words = pack.words()
        if words != [canon]:
            raise NotANormalCurve(
                "word is not a simple closed curve traversed once "
                f"(its arcs realize {len(words)} component(s))"
            )
        return cls._trusted(canon)

    @classmethod
    def _trusted(cls, canon) -> NormalCurve:
        return cls(tuple(canon))

    def __str__(self):
        return format_word(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    @cached_property
    def arc_counts(self) -> tuple:
        return word_arc_counts(self.word)

    @cached_property
    def packing(self) -> Packing:
        return Packing(self.arc_counts)

    @property
    def edge_crossings(self) -> tuple:
        return self.packing.weights

    @cached_property
    def points(self) -> tuple:
        """Crossing points ``(edge, position)`` in cyclic order along the curve."""
        return self.packing.components[0][1]

    def permuted(self, perm) -> NormalCurve:
        return NormalCurve._trusted(permute_word(perm, self.word))


def vertex_link(v: int) -> NormalCurve:
    word = []
    faces = [f for f in range(4) if f != v]
    # walk around v: consecutive faces share an edge at v
    for f in faces:
        word.append((f, v))
    return NormalCurve.from_word(word)


def curve_from_weights(weights) -> NormalCurve:
    """The connected curve with the given edge weights (ValueError otherwise)."""
    counts = counts_from_weights(weights)
    if counts is None:
        raise ValueError(f"weights {weights} are not normal")
    comps = decompose(counts)
    if len(comps) != 1:
        raise ValueError(f"weights {weights} give {len(comps)} components")
    return comps[0]


def counts_from_weights(weights):
    counts = [0] * 12
    for f in range(4):
        for v in FACES[f]:
            a, b = (u for u in FACES[f] if u != v)
            twice = weights[edge_index(v, a)] + weights[edge_index(v, b)] - weights[edge_index(a, b)]
            if twice < 0 or twice % 2:
                return None
            counts[ARC_INDEX[(f, v)]] = twice // 2
    return tuple(counts)


def hemispheres(c: NormalCurve) -> tuple[HemisphereData, HemisphereData]:
    """The two components of the boundary sphere cut along ``c``.

    The hemisphere containing vertex 0 comes first.
    """
    weights = c.edge_crossings
    pieces = sphere_pieces(c.arc_counts, weights)
    if len(pieces) != 2:  # pragma: no cover - Jordan curve theorem
        raise NotANormalCurve(f"curve cuts the sphere into {len(pieces)} pieces")
    out = []
    for verts, subs in pieces:
        stubs, full, parallel = [], [], []
        for e, j in subs:
            w = weights[e]
            a, b = EDGES[e]
            if w == 0:
                full.append(e)
            elif j == 0:
                stubs.append((e, a))
            elif j == w:
                stubs.append((e, b))
            else:
                parallel.append((e, j - 1))
        out.append(HemisphereData(verts, tuple(sorted(stubs)), tuple(sorted(full)), tuple(sorted(parallel))))
    return out[0], out[1]


def classify_curve(c: NormalCurve) -> CurveClass:
    if isinstance(c, (str, tuple, list)):
        c = NormalCurve.from_word(c)
    n = c.length
    h1, h2 = hemispheres(c)
    stats = ((h1.vertex_count, h1.parallel_count), (h2.vertex_count, h2.parallel_count))
    w = c.edge_crossings
    if n == 3:
        small = [h for h in (h1, h2) if h.vertex_count == 1]
        if len(small) != 1 or len(small[0].stubs) != 3:
            raise UnclassifiableLength(f"length-3 curve {c} is not a vertex link")
        return CurveClass("vertex_link", n, vertex=small[0].vertices[0], hemisphere_stats=stats)
    if n == 4:
        missed = [p for p, (e1, e2) in enumerate(EDGE_PAIRS) if w[e1] == 0 and w[e2] == 0]
        if len(missed) != 1 or stats != ((2, 0), (2, 0)):
            raise UnclassifiableLength(f"length-4 curve {c} does not separate a pair of edges")
        return CurveClass("quad", n, edge_pair=missed[0], hemisphere_stats=stats)
    if n % 4 == 0 and n >= 8:
        k = n // 4
        if stats != ((2, 2 * k - 3), (2, 2 * k - 3)):
            raise UnclassifiableLength(f"length-{n} curve {c} has hemisphere stats {stats}")
        axis = [p for p, (e1, e2) in enumerate(EDGE_PAIRS) if w[e1] == k and w[e2] == k]
        return CurveClass("long", n, edge_pair=axis[0] if len(axis) == 1 else None, k=k, hemisphere_stats=stats)
    raise UnclassifiableLength(f"connected normal curve of length {n}")


def disjoint_components(*curves: NormalCurve) -> list[NormalCurve]:
    """Components of the multicurve obtained by packing the given curves together."""
    total = [0] * 12
    for c in curves:
        for i, n in enumerate(c.arc_counts):
            total[i] += n
    return decompose(total)


def disjointly_realizable(*curves: NormalCurve) -> bool:
    got = sorted(c.word for c in disjoint_components(*curves))
    return got == sorted(c.word for c in curves)


def are_parallel(c1: NormalCurve, c2: NormalCurve) -> bool:
    """True iff two disjoint curves are normally isotopic."""
    if not disjointly_realizable(c1, c2):
        raise NotDisjointlyRealizable(f"{c1} and {c2} cannot be realized disjointly")
    return c1.word == c2.word


# ---------------------------------------------------------------------------
# enumeration by arc packing


def _normal_weight_vectors(max_total: int):
    """Edge-weight vectors satisfying the face parity and triangle conditions."""
    E = edge_index

    def face_ok(x, y, z):
        s = x + y + z
        return s % 2 == 0 and 2 * max(x, y, z) <= s

    for w01 in range(max_total + 1):
        for w02 in range(max_total + 1 - w01):
            for w12 in range(max_total + 1 - w01 - w02):
                if not face_ok(w01, w02, w12):
                    continue
                r = max_total - w01 - w02 - w12
                for w03 in range(r + 1):
                    for w13 in range(r + 1 - w03):
                        if not face_ok(w01, w03, w13):
                            continue
                        for w23 in range(r + 1 - w03 - w13):
                            if face_ok(w02, w03, w23) and face_ok(w12, w13, w23):
                                w = [0] * 6
                                w[E(0, 1)], w[E(0, 2)], w[E(1, 2)] = w01, w02, w12
                                w[E(0, 3)], w[E(1, 3)], w[E(2, 3)] = w03, w13, w23
                                yield tuple(w)


def _has_link_component(counts) -> bool:
    # innermost arcs around v close up into a vertex link
    for v in range(4):
        if all(counts[ARC_INDEX[(f, v)]] > 0 for f in range(4) if f != v):
            return True
    return False


def enumerate_by_packing(max_length: int) -> list[NormalCurve]:
    found = set()
    for w in _normal_weight_vectors(max_length):
        total = sum(w)
        if total == 0:
            continue
        counts = counts_from_weights(w)
        if total > 3 and _has_link_component(counts):
            continue
        pack = Packing(counts)
        if len(pack.components) == 1:
            found.add(pack.words()[0])
    return _sorted_curves(found)


def _sorted_curves(words) -> list[NormalCurve]:
    return [NormalCurve._trusted(w) for w in sorted(words, key=lambda w: (len(w), w))]


# ---------------------------------------------------------------------------
# enumeration by word search
#
# Walk states are (edge, face about to be entered).  A closed walk is simple
# iff no two visits to the same edge are forced into opposite orders by the
# two directions in which their strands diverge.


def _strand_order(rays_i, rays_j, u):
    """Compare two strands leaving points on a common edge into a common face.

    ``rays_*`` are iterables of steps ``(face, cut_vertex, entry_edge,
    exit_edge)``.  Returns True if the first strand is forced nearer vertex
    ``u`` (an endpoint of the common edge), False if forced farther, and None if
    the rays never diverge within their length.
    """
    p = u
    for (f, ti, ein, eout), (_, tj, _, eout_j) in zip(rays_i, rays_j):
        if ti != tj:
            return p == ti
        a, b = EDGES[eout]
        p = ti if p == ti else (b if a == ti else a)
    return None


def _walk_steps(word, start_edge):
    """Per-arc (face, cut_vertex, entry_edge, exit_edge) along an open or closed walk."""
    steps = []
    e = start_edge
    for i, (f, v) in enumerate(word):
        e1, e2 = arc_edges(f, v)
        out = e2 if e1 == e else e1
        steps.append((f, v, e, out))
        e = out
    return steps


def _reverse(step):
    f, v, ein, eout = step
    return (f, v, eout, ein)


def _ray(steps, point, face, closed):
    """Steps of the strand leaving ``point`` into ``face``.

    Point ``i`` sits between step ``i - 1`` and step ``i``.
    """
    n = len(steps)
    if closed:
        i = point % n
        if steps[i][0] == face:
            return [steps[(i + t) % n] for t in range(n)]
        return [_reverse(steps[(i - 1 - t) % n]) for t in range(n)]
    if point < n and steps[point][0] == face:
        return steps[point:]
    return [_reverse(s) for s in reversed(steps[:point])]


def is_simple_closed_walk(word) -> bool:
    """Decide simplicity of a closed normal walk by pairwise strand comparison."""
    word = tuple(tuple(s) for s in word)
    check_walk(word)
    n = len(word)
    start = shared_edge(word[-1][0], word[0][0])
    steps = _walk_steps(word, start)
    point_edge = [steps[i][2] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            e = point_edge[i]
            if point_edge[j] != e:
                continue
            u = EDGES[e][0]
            results = []
            for face in edge_faces(e):
                r = _strand_order(_ray(steps, i, face, True), _ray(steps, j, face, True), u)
                if r is None:
                    return False  # identical strands: the walk repeats itself
                results.append(r)
            if results[0] != results[1]:
                return False
    return True


def enumerate_by_words(max_length: int) -> list[NormalCurve]:
    """Depth-first search over normal walks, pruning self-crossing prefixes.

    Walks start at a fixed (edge, face) state; every curve can be rotated to
    pass through it, so the result is closed under orientation-preserving
    relabelings at the end.
    """
    e0 = edge_index(0, 1)
    f0 = edge_faces(e0)[0]
    found = set()

    # pending entries: (older point i, its ray into the face the newer point's
    # forward ray enters, steps compared so far, hypothesis vertex, other-side result)
    def extend(steps, point_edges, pending):
        m = len(steps)
        e_end = point_edges[-1]
        f_next = edge_faces(e_end)[0] if m == 0 else _other_face(e_end, steps[-1][0])
        for v in FACES[f_next]:
            if v not in EDGES[e_end]:
                continue
            e1, e2 = arc_edges(f_next, v)
            if e_end not in (e1, e2):
                continue
            out = e2 if e1 == e_end else e1
            step = (f_next, v, e_end, out)
            new_steps = steps + [step]
            new_pending, ok = _advance(pending, step, new_steps)
            if not ok:
                continue
            new_point = m + 1
            added, ok = _new_pairs(new_steps, point_edges + [out], new_point)
            if not ok:
                continue
            n = len(new_steps)
            if out == e0 and _other_face(out, f_next) == f0 and n >= 3:
                word = tuple((s[0], s[1]) for s in new_steps)
                if is_simple_closed_walk(word):
                    found.add(canonical_word(word))
            if n < max_length:
                extend(new_steps, point_edges + [out], new_pending + added)

    extend([], [e0], [])
    closed = set()
    for w in found:
        for perm in EVEN_PERMS:
            closed.add(permute_word(perm, w))
    return _sorted_curves(closed)


def _other_face(e, f):
    a, b = edge_faces(e)
    return b if f == a else a


def _advance(pending, step, steps):
    """Feed the newest step to strands still running parallel to an older one."""
    out = []
    for ray_i, t, p, other in pending:
        if t >= len(ray_i):
            continue
        fi, ti, ein, eout = ray_i[t]
        if ti != step[1]:
            if (p == ti) != other:
                return out, False
            continue
        a, b = EDGES[eout]
        p = ti if p == ti else (b if a == ti else a)
        out.append((ray_i, t + 1, p, other))
    return out, True


def _new_pairs(steps, point_edges, new_point):
    """Compare the newest point backwards against older points on the same edge."""
    e = point_edges[new_point]
    u = EDGES[e][0]
    back_face = steps[-1][0]
    fwd_face = _other_face(e, back_face)
    back_ray = _ray(steps, new_point, back_face, False)
    added = []
    for j in range(1, new_point):
        if point_edges[j] != e:
            continue
        r = _strand_order(_ray(steps, j, back_face, False), back_ray, u)
        if r is None:
            continue
        # j versus new point: r says whether j is nearer u
        ray_j = _ray(steps, j, fwd_face, False)
        # the pending comparison tracks the newer strand relative to j
        added.append((ray_j, 0, u, r))
    return added, True


def enumerate_curves(max_length: int, method: str = "packing") -> list[NormalCurve]:
    """All connected normal curves of length at most ``max_length``.

    Output is sorted by length, then canonical word.
    """
    if max_length < 3:
        raise ValueError("max_length must be at least 3")
    if method == "packing":
        return enumerate_by_packing(max_length)
    if method == "words":
        return enumerate_by_words(max_length)
    raise ValueError(f"unknown method {method!r}")


def symmetry_classes(curves) -> dict:
    """Group curves into orbits under all 24 vertex relabelings.

    Keys are orbit representatives (least word); values are the orbit members
    present in ``curves``.
    """
    classes = {}
    for c in curves:
        rep = min(permute_word(p, c.word) for p in ALL_PERMS)
        classes.setdefault(rep, []).append(c)
    return classes
