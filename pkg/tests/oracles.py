"""Independent reference computations used by the tests.

None of these reuse the package's packing, layout or Euler code; they work
from the raw gluing table and piece counts.
"""
from fractions import Fraction

EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def face_vertices(f):
    return [v for v in range(4) if v != f]


def piece_arcs(kind, typ):
    """{(face, vertex): count} for one triangle / quad / octagon, from the vertex partition."""
    arcs = {}
    if kind == "t":
        for f in range(4):
            if f != typ:
                arcs[(f, typ)] = 1
        return arcs
    first = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))][typ]
    partner = {}
    for a, b in first:
        partner[a], partner[b] = b, a
    for f in range(4):
        for v in face_vertices(f):
            if kind == "q":
                arcs[(f, v)] = int(v == partner[f])
            else:
                arcs[(f, v)] = int(v != partner[f])
    return arcs


def piece_edge_hits(kind, typ):
    """Edge crossings of one piece."""
    hits = [0] * 6
    for e, (a, b) in enumerate(EDGES):
        if kind == "t":
            hits[e] = int(typ in (a, b))
        else:
            first = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))][typ]
            in_pair = (a, b) in first
            if kind == "q":
                hits[e] = 0 if in_pair else 1
            else:
                hits[e] = 2 if in_pair else 1
    return hits


def recount_arcs(tc):
    """Arc counts per (face, vertex) straight from the piece counts and disk words."""
    counts = {(f, v): 0 for f in range(4) for v in face_vertices(f)}
    for v in range(4):
        for key, n in piece_arcs("t", v).items():
            counts[key] += n * tc.t[v]
    for p in range(3):
        for key, n in piece_arcs("q", p).items():
            counts[key] += n * tc.q[p]
        for key, n in piece_arcs("o", p).items():
            counts[key] += n * tc.o[p]
    for d in tc.disks:
        for step in d.word:
            counts[tuple(step)] += 1
    return counts


def matching_holds(table, tets) -> bool:
    """Recheck every matching equation from the raw gluing table."""
    counts = [recount_arcs(tc) for tc in tets]
    for t, row in enumerate(table):
        for f, entry in enumerate(row):
            if entry is None:
                continue
            u, g, perm = entry
            image = dict(zip(face_vertices(f), perm))
            for v in face_vertices(f):
                if counts[t][(f, v)] != counts[u][(g, image[v])]:
                    return False
    return True


def edge_slot_weights(tc):
    """Edge weights of one tetrahedron's pieces, from per-piece crossing tables."""
    w = [0] * 6
    for v in range(4):
        for e, h in enumerate(piece_edge_hits("t", v)):
            w[e] += h * tc.t[v]
    for p in range(3):
        for e, h in enumerate(piece_edge_hits("q", p)):
            w[e] += h * tc.q[p]
        for e, h in enumerate(piece_edge_hits("o", p)):
            w[e] += h * tc.o[p]
    for d in tc.disks:
        for e, h in enumerate(_disk_hits(d)):
            w[e] += h
    return w


def _disk_hits(d):
    hits = [0] * 6
    word = d.word
    for i, (f, _) in enumerate(word):
        g = word[(i + 1) % len(word)][0]
        a, b = sorted(set(range(4)) - {f, g})
        hits[EDGES.index((a, b))] += 1
    return hits


class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        self.p[self.find(a)] = self.find(b)


def edge_slot_classes(table):
    """Union-find over (tet, edge) slots, plus the slot identifications with their flips."""
    uf = _UF()
    for t in range(len(table)):
        for e in range(6):
            uf.find((t, e))
    links = []
    for t, row in enumerate(table):
        for f, entry in enumerate(row):
            if entry is None:
                continue
            u, g, perm = entry
            image = dict(zip(face_vertices(f), perm))
            for a, b in EDGES:
                if f in (a, b):
                    continue
                x, y = image[a], image[b]
                links.append(((t, EDGES.index((a, b))), (u, EDGES.index(tuple(sorted((x, y))))), x > y))
                uf.union((t, EDGES.index((a, b))), (u, EDGES.index(tuple(sorted((x, y))))))
    return uf, links


def point_orbit_weights(table, tets):
    """Edge class weights by identifying individual intersection points.

    Each slot (tet, edge) with weight w carries points 0..w-1 numbered from
    the lower vertex; gluings identify them, reversing the order when the
    edge is flipped.  Returns {class representative: number of point orbits}
    and checks that slot weights agree across every gluing.
    """
    slot_w = {(t, e): w for t, tc in enumerate(tets) for e, w in enumerate(edge_slot_weights(tc))}
    uf, links = edge_slot_classes(table)
    points = _UF()
    for s, w in slot_w.items():
        for i in range(w):
            points.find((s, i))
    for s1, s2, flip in links:
        if slot_w[s1] != slot_w[s2]:
            raise AssertionError(f"slot weights differ across gluing: {s1} {s2}")
        w = slot_w[s1]
        for i in range(w):
            points.union((s1, i), (s2, w - 1 - i if flip else i))
    orbits = {}
    for (s, i) in list(points.p):
        orbits.setdefault(uf.find(s), set()).add(points.find((s, i)))
    return {rep: len(o) for rep, o in orbits.items()}


def euler_by_angles(table, tets, tubes=0):
    """Euler characteristic of a surface in a closed triangulation.

    Each piece with boundary length L is a disk meeting L arcs (each shared
    with one other piece) and L corner points; a point on an edge of degree
    d is shared by d corners.  So chi = sum over pieces of
    1 - L/2 + sum over corners of 1/d, minus 2 per tube.
    """
    uf, _ = edge_slot_classes(table)
    degree = {}
    for t in range(len(table)):
        for e in range(6):
            r = uf.find((t, e))
            degree[r] = degree.get(r, 0) + 1
    chi = Fraction(0)
    for t, tc in enumerate(tets):
        pieces = []
        for v in range(4):
            pieces += [("t", v)] * tc.t[v]
        for p in range(3):
            pieces += [("q", p)] * tc.q[p] + [("o", p)] * tc.o[p]
        for kind, typ in pieces:
            hits = piece_edge_hits(kind, typ)
            length = sum(hits)
            chi += 1 - Fraction(length, 2) + sum(Fraction(h, degree[uf.find((t, e))]) for e, h in enumerate(hits))
        for d in tc.disks:
            hits = _disk_hits(d)
            chi += 1 - Fraction(d.length, 2) + sum(Fraction(h, degree[uf.find((t, e))]) for e, h in enumerate(hits))
    chi -= 2 * tubes
    assert chi.denominator == 1
    return int(chi)


def closed_walks(length):
    """Every normal walk of ``length`` steps that closes up, by depth-first search.

    A step (f, v) is the arc in face f cutting off vertex v.  It can be
    followed by (g, u) when the edge shared by faces f and g (the pair
    missing f and g) carries both arcs and is not the edge the arc came in by.
    """
    steps = [(f, v) for f in range(4) for v in range(4) if f != v]

    def follows(a, b, prev):
        (f, v), (g, u) = a, b
        return f != g and v != g and u != f and prev[0] != g

    out = []

    def grow(word):
        if len(word) == length:
            if len(word) >= 3 and follows(word[-1], word[0], word[-2]) and follows(word[0], word[1], word[-1]):
                out.append(tuple(word))
            return
        for s in steps:
            if len(word) >= 2 and not follows(word[-1], s, word[-2]):
                continue
            if len(word) == 1 and (s[0] == word[0][0] or word[0][1] == s[0] or s[1] == word[0][0]):
                continue
            grow(word + [s])

    for s in steps:
        grow([s])
    return out


def weight_vectors(max_total):
    """Edge weight vectors of normal multicurves (even face sums, triangle inequalities)."""
    faces = [[e for e, (a, b) in enumerate(EDGES) if f not in (a, b)] for f in range(4)]

    def grow(w, left):
        if len(w) == 6:
            if not any(w):
                return
            for fe in faces:
                x, y, z = (w[e] for e in fe)
                if (x + y + z) % 2 or x > y + z or y > x + z or z > x + y:
                    return
            yield tuple(w)
            return
        for x in range(left + 1):
            yield from grow(w + [x], left - x)

    yield from grow([], max_total)
