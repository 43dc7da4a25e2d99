"""Almost normal surface configurations in a triangulation.

Each tetrahedron carries triangle counts ``t[v]`` (one per vertex), quad counts
``q[p]`` and octagon counts ``o[p]`` (one per pair of opposite edges, see
``tetra.EDGE_PAIRS``), and optionally extra disk pieces given by their boundary
curves.  A tube joining two pieces of one tetrahedron is recorded separately,
since tubing does not change normal coordinates.

Pieces are addressed by ``PieceRef(kind, type, depth)``.  Parallel copies are
numbered from 0: triangles from their vertex outwards, quads from the side
containing vertex 0.  Extra disks use ``kind="d"`` with ``type`` their index.

Surface file (JSON)::

    {"0": {"t": [1,0,0,0], "q": [0,0,0], "o": [1,0,0],
           "tube": {"a": {"kind": "t", "type": 0, "depth": 0},
                    "b": {"kind": "q", "type": 1, "depth": 0}},
           "disks": ["1:0 2:0 3:0"]},
     "1": {...}}

Tetrahedra missing from the file carry no pieces.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

from .curves import (
    ARC_INDEX,
    ARCS,
    NormalCurve,
    Packing,
    canonical_word,
    format_word,
    sphere_pieces,
    vertex_link,
)
from .errors import ParseError
from .tetra import EDGES, FACES, UnionFind
from .triangulation import EdgeClass, Triangulation

# Arc counts (indexed like curves.ARCS) of the quad and octagon boundary
# curves, one row per edge pair.  Frozen from the curve enumerator; see
# tests/test_surface.py::test_arc_tables_match_enumerated_curves.
QUAD_ARCS = (
    (1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1),
    (0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0),
    (0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0),
)
OCTAGON_ARCS = (
    (0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 0),
    (1, 0, 1, 1, 1, 0, 0, 1, 1, 1, 0, 1),
    (1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 1),
)

PIECE_KINDS = ("t", "q", "o", "d")


class SurfaceError(ValueError):
    pass


class QuadConditionViolated(SurfaceError):
    def __init__(self, tet: int, detail: str = ""):
        self.tet = tet
        self.detail = detail
        super().__init__(f"tetrahedron {tet}: pieces cannot be embedded disjointly" + (f" ({detail})" if detail else ""))


class MatchingFailure(SurfaceError):
    def __init__(self, face: tuple, arc_type: int, left_count: int, right_count: int, other: tuple):
        self.face = face
        self.arc_type = arc_type
        self.left_count = left_count
        self.right_count = right_count
        self.other = other
        super().__init__(
            f"face {face} arc type {arc_type}: {left_count} arcs, but {right_count} on glued face {other}"
        )


class InvalidTube(SurfaceError):
    pass


class InvalidSurface(SurfaceError):
    pass


@dataclass(frozen=True)
class PieceRef:
    kind: str
    type: int
    depth: int = 0

    def __str__(self):
        return f"{self.kind}{self.type}.{self.depth}"


@dataclass(frozen=True)
class TubeDescriptor:
    """An unknotted vertical tube joining two disjoint disk pieces of ``tet``."""

    tet: int
    piece_a: PieceRef
    piece_b: PieceRef

    def __post_init__(self):
        if self.piece_a == self.piece_b:
            raise InvalidTube("a tube must join two distinct pieces")


@dataclass(frozen=True)
class TetCoords:
    t: tuple = (0, 0, 0, 0)
    q: tuple = (0, 0, 0)
    o: tuple = (0, 0, 0)
    disks: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))
        object.__setattr__(self, "q", tuple(self.q))
        object.__setattr__(self, "o", tuple(self.o))
        object.__setattr__(
            self, "disks", tuple(d if isinstance(d, NormalCurve) else NormalCurve.from_word(d) for d in self.disks)
        )
        if len(self.t) != 4 or len(self.q) != 3 or len(self.o) != 3:
            raise ValueError("expected 4 triangle, 3 quad and 3 octagon counts")
        for x in self.t + self.q + self.o:
            if not isinstance(x, int) or x < 0:
                raise ValueError(f"piece counts must be nonnegative integers, got {x!r}")

    @property
    def is_empty(self) -> bool:
        return not any(self.t + self.q + self.o) and not self.disks

    def quad_condition_ok(self) -> bool:
        nonzero = [x for x in self.q + self.o if x]
        return len(nonzero) <= 1 and all(x <= 1 for x in self.o)

    @cached_property
    def arc_counts(self) -> tuple:
        counts = [0] * 12
        for i, (f, v) in enumerate(ARCS):
            counts[i] = self.t[v]
        for p in range(3):
            for i in range(12):
                counts[i] += self.q[p] * QUAD_ARCS[p][i] + self.o[p] * OCTAGON_ARCS[p][i]
        for d in self.disks:
            for i, n in enumerate(d.arc_counts):
                counts[i] += n
        return tuple(counts)

    def piece_refs(self) -> list:
        refs = []
        for v in range(4):
            refs += [PieceRef("t", v, d) for d in range(self.t[v])]
        for p in range(3):
            refs += [PieceRef("q", p, d) for d in range(self.q[p])]
        for p in range(3):
            refs += [PieceRef("o", p, d) for d in range(self.o[p])]
        refs += [PieceRef("d", i) for i in range(len(self.disks))]
        return refs

    def boundary_length(self, ref: PieceRef) -> int:
        return {"t": 3, "q": 4, "o": 8}.get(ref.kind) or self.disks[ref.type].length

    def has_piece(self, ref: PieceRef) -> bool:
        if ref.kind == "t":
            return 0 <= ref.type < 4 and 0 <= ref.depth < self.t[ref.type]
        if ref.kind == "q":
            return 0 <= ref.type < 3 and 0 <= ref.depth < self.q[ref.type]
        if ref.kind == "o":
            return 0 <= ref.type < 3 and 0 <= ref.depth < self.o[ref.type]
        if ref.kind == "d":
            return 0 <= ref.type < len(self.disks) and ref.depth == 0
        return False

    @cached_property
    def layout(self) -> TetLayout:
        return TetLayout(self)


def _piece_curve(tc: TetCoords, ref: PieceRef) -> tuple:
    if ref.kind == "t":
        return _LINK_WORDS[ref.type]
    if ref.kind == "d":
        return tc.disks[ref.type].word
    base = QUAD_ARCS if ref.kind == "q" else OCTAGON_ARCS
    return _curve_of_arcs(base[ref.type])


_ARC_CURVES = {}
_LINK_WORDS = tuple(vertex_link(v).word for v in range(4))


def _curve_of_arcs(counts) -> tuple:
    if counts not in _ARC_CURVES:
        (word,) = Packing(counts).words()
        _ARC_CURVES[counts] = word
    return _ARC_CURVES[counts]


class TetLayout:
    """Embedded realization of one tetrahedron's pieces.

    Maps each packed arc ``(face, vertex, depth)`` to the piece it belongs to.
    Raises ``QuadConditionViolated`` (with tet = -1) if the pieces cannot be
    disjoint.
    """

    def __init__(self, tc: TetCoords):
        self.coords = tc
        self.packing = pack = Packing(tc.arc_counts)
        expected = {}
        for ref in tc.piece_refs():
            expected.setdefault(_piece_curve(tc, ref), []).append(ref)
        got = {}
        for comp in pack.components:
            word = _canon(comp[0])
            got.setdefault(word, []).append(comp)
        if sorted((w, len(v)) for w, v in got.items()) != sorted((w, len(v)) for w, v in expected.items()):
            raise QuadConditionViolated(-1, "boundary curves are not disjoint")
        self.arc_owner = {}
        self.points_of = {}
        for word, comps in got.items():
            comps = sorted(comps, key=lambda c: self._depth_key(word, c))
            for ref, (arcs, points) in zip(expected[word], comps):
                for a in arcs:
                    self.arc_owner[a] = ref
                self.points_of[ref] = points
        self.point_owner = {p: ref for ref, pts in self.points_of.items() for p in pts}

    def _depth_key(self, word, comp):
        arcs, points = comp
        e = min(p[0] for p in points)
        positions = sorted(pos for ee, pos in points if ee == e)
        if len(word) == 3 and word[0][1] == EDGES[e][1]:
            return -positions[-1]  # link of the upper endpoint: nearest b first
        return positions[0]

    def neighbours(self) -> set:
        """Unordered pairs of pieces facing a common complementary region."""
        pairs = set()
        pieces = sphere_pieces(self.packing.counts, self.packing.weights)
        w = self.packing.weights
        for _, subs in pieces:
            touching = set()
            for e, j in subs:
                for pos in (j - 1, j):
                    if 0 <= pos < w[e]:
                        touching.add(self.point_owner[(e, pos)])
            touching = sorted(touching, key=_ref_key)
            for i, a in enumerate(touching):
                for b in touching[i + 1:]:
                    pairs.add((a, b))
        return pairs


def _canon(arcs):
    return canonical_word(tuple((f, v) for f, v, _ in arcs))


def _ref_key(ref: PieceRef):
    return (PIECE_KINDS.index(ref.kind), ref.type, ref.depth)


@dataclass(frozen=True)
class SurfaceConfig:
    tets: tuple
    tube: TubeDescriptor | None = None

    def __post_init__(self):
        object.__setattr__(self, "tets", tuple(self.tets))

    @classmethod
    def zeros(cls, n: int) -> SurfaceConfig:
        return cls(tuple(TetCoords() for _ in range(n)))

    @classmethod
    def from_coords(cls, rows, tube=None) -> SurfaceConfig:
        """Build from ``[(t, q, o), ...]`` triples (or dicts with those keys)."""
        tets = []
        for row in rows:
            if isinstance(row, TetCoords):
                tets.append(row)
            elif isinstance(row, dict):
                tets.append(TetCoords(**row))
            else:
                tets.append(TetCoords(*row))
        return cls(tuple(tets), tube)

    @property
    def is_empty(self) -> bool:
        return all(tc.is_empty for tc in self.tets)

    def with_tube(self, tube: TubeDescriptor | None) -> SurfaceConfig:
        return SurfaceConfig(self.tets, tube)

    def piece_count(self) -> int:
        return sum(len(tc.piece_refs()) for tc in self.tets)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    problems: list
    faces: list = field(default_factory=list)  # per interior face and arc type

    def raise_for_problems(self):
        if self.problems:
            raise InvalidSurface(str(self.problems[0])) from self.problems[0]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "problems": [{"type": type(p).__name__, "message": str(p)} for p in self.problems],
            "faces": self.faces,
        }


def validate(T: Triangulation, S: SurfaceConfig) -> ValidationReport:
    problems = []
    if len(S.tets) != T.tet_count:
        problems.append(InvalidSurface(f"surface has {len(S.tets)} tetrahedra, triangulation has {T.tet_count}"))
        return ValidationReport(False, problems)
    for t, tc in enumerate(S.tets):
        if not tc.quad_condition_ok():
            problems.append(QuadConditionViolated(t, f"q={list(tc.q)} o={list(tc.o)}"))
            continue
        try:
            tc.layout
        except QuadConditionViolated as exc:
            problems.append(QuadConditionViolated(t, exc.detail))
    rows = []
    for (t, f), g in T.interior_face_pairs():
        m = g.vertex_map(f)
        for v in FACES[f]:
            left = S.tets[t].arc_counts[ARC_INDEX[(f, v)]]
            right = S.tets[g.tet].arc_counts[ARC_INDEX[(g.face, m[v])]]
            rows.append(
                {"tet": t, "face": f, "arc_type": v, "other_tet": g.tet, "other_face": g.face,
                 "other_arc_type": m[v], "left": left, "right": right}
            )
            if left != right:
                problems.append(MatchingFailure((t, f), v, left, right, (g.tet, g.face)))
    if S.tube is not None:
        problem = _check_tube(S)
        if problem:
            problems.append(problem)
    return ValidationReport(not problems, problems, rows)


def _check_tube(S: SurfaceConfig):
    tube = S.tube
    if not 0 <= tube.tet < len(S.tets):
        return InvalidTube(f"tube tetrahedron {tube.tet} out of range")
    tc = S.tets[tube.tet]
    for ref in (tube.piece_a, tube.piece_b):
        if not tc.has_piece(ref):
            return InvalidTube(f"tetrahedron {tube.tet} has no piece {ref}")
    try:
        adjacent = tc.layout.neighbours()
    except QuadConditionViolated:
        return None  # already reported
    pair = tuple(sorted((tube.piece_a, tube.piece_b), key=_ref_key))
    if pair not in adjacent:
        return InvalidTube(f"pieces {tube.piece_a} and {tube.piece_b} are separated by other pieces")
    return None


def require_valid(T: Triangulation, S: SurfaceConfig) -> None:
    validate(T, S).raise_for_problems()


# ---------------------------------------------------------------------------
# components


def components(T: Triangulation, S: SurfaceConfig) -> list:
    require_valid(T, S)
    uf = UnionFind()
    for t, tc in enumerate(S.tets):
        for ref in tc.piece_refs():
            uf.add((t, ref))
    for (t, f), g in T.interior_face_pairs():
        m = g.vertex_map(f)
        own, other = S.tets[t].layout.arc_owner, S.tets[g.tet].layout.arc_owner
        for v in FACES[f]:
            n = S.tets[t].arc_counts[ARC_INDEX[(f, v)]]
            for d in range(n):
                uf.union((t, own[(f, v, d)]), (g.tet, other[(g.face, m[v], d)]))
    if S.tube is not None:
        uf.union((S.tube.tet, S.tube.piece_a), (S.tube.tet, S.tube.piece_b))
    groups = [sorted(g, key=lambda x: (x[0], _ref_key(x[1]))) for g in uf.groups()]
    groups.sort(key=lambda g: (g[0][0], _ref_key(g[0][1])))
    return [_restrict(S, g) for g in groups]


def _restrict(S: SurfaceConfig, members) -> SurfaceConfig:
    per_tet = {}
    for t, ref in members:
        per_tet.setdefault(t, []).append(ref)
    tets = []
    renumber = {}
    for t, tc in enumerate(S.tets):
        refs = per_tet.get(t, [])
        tt, q, o, disks = [0] * 4, [0] * 3, [0] * 3, []
        for ref in sorted(refs, key=_ref_key):
            if ref.kind == "t":
                renumber[(t, ref)] = PieceRef("t", ref.type, tt[ref.type])
                tt[ref.type] += 1
            elif ref.kind == "q":
                renumber[(t, ref)] = PieceRef("q", ref.type, q[ref.type])
                q[ref.type] += 1
            elif ref.kind == "o":
                renumber[(t, ref)] = PieceRef("o", ref.type, o[ref.type])
                o[ref.type] += 1
            else:
                renumber[(t, ref)] = PieceRef("d", len(disks))
                disks.append(tc.disks[ref.type])
        tets.append(TetCoords(tuple(tt), tuple(q), tuple(o), tuple(disks)))
    tube = None
    if S.tube is not None and (S.tube.tet, S.tube.piece_a) in renumber:
        tube = TubeDescriptor(
            S.tube.tet, renumber[(S.tube.tet, S.tube.piece_a)], renumber[(S.tube.tet, S.tube.piece_b)]
        )
    return SurfaceConfig(tuple(tets), tube)


# ---------------------------------------------------------------------------
# Euler characteristic, weights, width


def euler_characteristic(T: Triangulation, S: SurfaceConfig) -> int:
    """Vertices on edges minus normal arcs plus pieces, less 2 for a tube."""
    require_valid(T, S)
    return _euler(T, S)


def _euler(T, S) -> int:
    points = sum(_class_weight(T, S, c) for c in T.edge_classes)
    arcs = sum(sum(S.tets[t].arc_counts[ARC_INDEX[(f, v)]] for v in FACES[f]) for t in range(T.tet_count) for f in range(4))
    for (t, f), g in T.interior_face_pairs():
        arcs -= sum(S.tets[t].arc_counts[ARC_INDEX[(f, v)]] for v in FACES[f])
    pieces = S.piece_count()
    return points - arcs + pieces - (2 if S.tube is not None else 0)


def _class_weight(T, S, c: EdgeClass) -> int:
    t, e, _ = c.embeddings[0]
    return S.tets[t].layout.packing.weights[e]


def edge_weight(T: Triangulation, S: SurfaceConfig, e) -> int:
    require_valid(T, S)
    if not isinstance(e, EdgeClass):
        e = T.edge_classes[e]
    return _class_weight(T, S, e)


def total_weight(T: Triangulation, S: SurfaceConfig) -> int:
    require_valid(T, S)
    return sum(_class_weight(T, S, c) for c in T.edge_classes)


def edge_weights(T: Triangulation, S: SurfaceConfig) -> list:
    require_valid(T, S)
    return [_class_weight(T, S, c) for c in T.edge_classes]


@dataclass(frozen=True, order=True)
class Width:
    """Width of a surface: a non-increasing tuple of ``(-chi, weight)`` pairs.

    The empty tuple is the width of the empty surface; a connected surface has
    a single pair.  Tuples compare lexicographically, and a proper prefix is
    smaller than its extensions.
    """

    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(sorted((tuple(int(x) for x in p) for p in self.terms), reverse=True))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def empty(cls) -> Width:
        return cls(())

    @classmethod
    def of(cls, *pairs) -> Width:
        return cls(tuple(pairs))

    @property
    def is_empty(self) -> bool:
        return not self.terms

    @property
    def is_connected(self) -> bool:
        return len(self.terms) == 1

    def __str__(self):
        if not self.terms:
            return "empty"
        return ";".join(f"{a},{b}" for a, b in self.terms)

    @classmethod
    def parse(cls, text: str) -> Width:
        text = text.strip()
        if text == "empty":
            return cls.empty()
        pairs = []
        for chunk in text.split(";"):
            a, b = chunk.split(",")
            b = int(b)
            if b < 0:
                raise ValueError("edge weight must be nonnegative")
            pairs.append((int(a), b))
        return cls(tuple(pairs))


def compare_width(a: Width, b: Width) -> int:
    return (a > b) - (a < b)


def width(T: Triangulation, S: SurfaceConfig) -> Width:
    require_valid(T, S)
    if S.is_empty:
        return Width.empty()
    return Width(tuple((-_euler(T, c), sum(_class_weight(T, c, e) for e in T.edge_classes)) for c in components(T, S)))


# ---------------------------------------------------------------------------
# file format


def surface_to_json(S: SurfaceConfig) -> dict:
    out = {}
    for t, tc in enumerate(S.tets):
        rec = {"t": list(tc.t), "q": list(tc.q), "o": list(tc.o)}
        if tc.disks:
            rec["disks"] = [format_word(d.word) for d in tc.disks]
        if S.tube is not None and S.tube.tet == t:
            rec["tube"] = {
                key: {"kind": r.kind, "type": r.type, "depth": r.depth}
                for key, r in (("a", S.tube.piece_a), ("b", S.tube.piece_b))
            }
        out[str(t)] = rec
    return out


def parse_surface_json(data, tet_count: int | None = None) -> SurfaceConfig:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("surface document must be an object keyed by tetrahedron index")
    try:
        keys = {int(k): v for k, v in data.items()}
    except ValueError:
        raise ParseError("surface keys must be tetrahedron indices") from None
    n = tet_count if tet_count is not None else (max(keys) + 1 if keys else 0)
    if keys and (min(keys) < 0 or max(keys) >= n):
        raise ParseError(f"tetrahedron index out of range 0..{n - 1}")
    tets, tube = [], None
    for t in range(n):
        rec = keys.get(t, {})
        try:
            tc = TetCoords(
                tuple(rec.get("t", (0,) * 4)), tuple(rec.get("q", (0,) * 3)), tuple(rec.get("o", (0,) * 3)),
                tuple(rec.get("disks", ())),
            )
        except (ValueError, TypeError) as exc:
            raise ParseError(f"tetrahedron {t}: {exc}") from None
        tets.append(tc)
        if "tube" in rec:
            if tube is not None:
                raise ParseError("at most one tube is supported")
            try:
                refs = [PieceRef(str(rec["tube"][k]["kind"]), int(rec["tube"][k]["type"]), int(rec["tube"][k].get("depth", 0))) for k in ("a", "b")]
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"tetrahedron {t}: malformed tube record ({exc})") from None
            if any(r.kind not in PIECE_KINDS for r in refs):
                raise ParseError(f"tetrahedron {t}: tube piece kind must be one of {PIECE_KINDS}")
            try:
                tube = TubeDescriptor(t, *refs)
            except InvalidTube as exc:
                raise ParseError(f"tetrahedron {t}: {exc}") from None
    return SurfaceConfig(tuple(tets), tube)


def load_surface(path, tet_count: int | None = None) -> SurfaceConfig:
    with open(path) as fh:
        return parse_surface_json(fh.read(), tet_count)
