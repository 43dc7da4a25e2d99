"""Disk complexes inside one tetrahedron and the almost normal certificate.

For a disk whose boundary is a normal curve ``c``, edge-compressing disks are
modelled by triples: an interior sub-edge (``edge``, ``gap``) of the boundary
sphere with both ends on ``c``, the hemisphere (``side``) containing it, and
the half of that hemisphere which is tilted into the tetrahedron.  The half
is named by the tetrahedron vertex it contains (``tilt``).  Each such disk
meets the spanning disk in a chord joining the two ends of its sub-edge.

Two vertices are joined when the pair is
  * coincident: same side, same sub-edge;
  * canceling: opposite sides, sub-edges sharing exactly one endpoint;
  * disjoint: chords with four distinct, non-interleaved endpoints on ``c``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .curves import NormalCurve, sphere_pieces
from .surface import (
    InvalidTube,
    MatchingFailure,
    QuadConditionViolated,
    SurfaceConfig,
    TetCoords,
    validate,
)
from .tetra import EDGES, UnionFind
from .triangulation import Triangulation


class InvalidConfig(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DiskVertex:
    edge: int
    gap: int
    side: int  # hemisphere index, 0 for the hemisphere containing vertex 0
    tilt: int  # tetrahedron vertex inside the tilted half-hemisphere

    def endpoints(self) -> tuple:
        return ((self.edge, self.gap), (self.edge, self.gap + 1))

    def __str__(self):
        a, b = EDGES[self.edge]
        return f"edge={a}{b} gap={self.gap} side={self.side} tilt={self.tilt}"


DISJOINT, CANCELING, COINCIDENT = "disjoint", "canceling", "coincident"


@dataclass(frozen=True)
class DiskComplexGraph:
    curve: NormalCurve
    vertices: tuple
    edges: tuple  # (i, j, tag) with i < j

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def components(self) -> list:
        uf = UnionFind()
        for i in range(len(self.vertices)):
            uf.add(i)
        for i, j, _ in self.edges:
            uf.union(i, j)
        return sorted(sorted(g) for g in uf.groups())

    @property
    def component_count(self) -> int:
        return len(self.components())

    @property
    def is_connected(self) -> bool:
        return self.component_count == 1

    @property
    def is_disconnected(self) -> bool:
        return self.component_count >= 2

    def side_components(self, side: int) -> list:
        """Components of the subgraph spanned by one side's vertices."""
        keep = [i for i, v in enumerate(self.vertices) if v.side == side]
        uf = UnionFind()
        for i in keep:
            uf.add(i)
        for i, j, _ in self.edges:
            if i in uf.parent and j in uf.parent:
                uf.union(i, j)
        return sorted(sorted(g) for g in uf.groups())

    def to_json(self) -> dict:
        return {
            "curve": str(self.curve),
            "vertices": [
                {"id": i, "edge": list(EDGES[v.edge]), "gap": v.gap, "side": v.side, "tilt": v.tilt}
                for i, v in enumerate(self.vertices)
            ],
            "edges": [{"a": i, "b": j, "tag": tag} for i, j, tag in self.edges],
            "components": self.components(),
        }

    def to_text(self) -> str:
        lines = [f"curve {self.curve}"]
        lines += [f"v {i} {v}" for i, v in enumerate(self.vertices)]
        lines += [f"e {i} {j} {tag}" for i, j, tag in self.edges]
        comps = self.components()
        lines.append(f"components {len(comps)}")
        lines += ["c " + " ".join(map(str, c)) for c in comps]
        return "\n".join(lines) + "\n"


def _interleaved(p, q, r, s, n) -> bool:
    """Do chords {p, q} and {r, s} (distinct positions on an n-cycle) cross?"""
    def between(x, a, b):
        return 0 < (x - a) % n < (b - a) % n

    return between(r, p, q) != between(s, p, q)


def build_disk_complex(c: NormalCurve) -> DiskComplexGraph:
    if not isinstance(c, NormalCurve):
        c = NormalCurve.from_word(c)
    counts, weights = c.arc_counts, c.edge_crossings
    halves = sphere_pieces(counts, weights)
    position = {p: i for i, p in enumerate(c.points)}
    n = len(c.points)

    vertices = []
    for side, (_, subs) in enumerate(halves):
        for e, j in subs:
            if not 0 < j < weights[e]:
                continue
            beta = (e, j)
            parts = [p for p in sphere_pieces(counts, weights, cut=[beta]) if beta in p[1]]
            for verts, _ in parts:
                vertices.append(DiskVertex(e, j - 1, side, verts[0] if verts else -1))
    vertices.sort()

    edges = []
    for i, a in enumerate(vertices):
        ends_a = [position[p] for p in a.endpoints()]
        for j in range(i + 1, len(vertices)):
            b = vertices[j]
            ends_b = [position[p] for p in b.endpoints()]
            shared = set(ends_a) & set(ends_b)
            if a.side == b.side:
                if (a.edge, a.gap) == (b.edge, b.gap):
                    edges.append((i, j, COINCIDENT))
                elif not shared and not _interleaved(*ends_a, *ends_b, n):
                    edges.append((i, j, DISJOINT))
            elif len(shared) == 1:
                edges.append((i, j, CANCELING))
            elif not shared and not _interleaved(*ends_a, *ends_b, n):
                edges.append((i, j, DISJOINT))
    return DiskComplexGraph(c, tuple(vertices), tuple(edges))


# ---------------------------------------------------------------------------
# tetrahedron classification


class TetClass(str, Enum):
    EMPTY = "Empty"
    DISCONNECTED = "Disconnected"
    CONNECTED = "Connected"


@dataclass(frozen=True)
class TetPieces:
    """Everything one tetrahedron contains: normal coordinates, extra disks, a tube."""

    coords: TetCoords
    tube: tuple | None = None  # (PieceRef, PieceRef)

    @classmethod
    def of(cls, t=(0, 0, 0, 0), q=(0, 0, 0), o=(0, 0, 0), disks=(), tube=None) -> TetPieces:
        return cls(TetCoords(tuple(t), tuple(q), tuple(o), tuple(disks)), tube)


def _exceptional(tp: TetPieces):
    tc = tp.coords
    octagons = sum(tc.o) + sum(1 for d in tc.disks if d.length == 8)
    long_disks = [d for d in tc.disks if d.length >= 12]
    return octagons, long_disks


def classify_tet(pieces: TetPieces) -> TetClass:
    tc = pieces.coords
    if not tc.quad_condition_ok():
        raise InvalidConfig(f"quad condition violated: q={list(tc.q)} o={list(tc.o)}")
    try:
        tc.layout
    except QuadConditionViolated as exc:
        raise InvalidConfig(exc.detail) from None
    octagons, long_disks = _exceptional(pieces)
    tubes = 0 if pieces.tube is None else 1
    if pieces.tube is not None and not all(tc.has_piece(r) for r in pieces.tube):
        raise InvalidConfig("tube refers to a missing piece")
    if long_disks:
        return TetClass.CONNECTED
    if tubes and max(tc.boundary_length(r) for r in pieces.tube) > 4:
        return TetClass.CONNECTED
    if octagons + tubes > 1:
        raise InvalidConfig("more than one exceptional piece")
    if tubes:
        return TetClass.DISCONNECTED
    if octagons:
        return TetClass.DISCONNECTED
    return TetClass.EMPTY


# ---------------------------------------------------------------------------
# certificate


class Status(str, Enum):
    NORMAL = "Normal"
    ALMOST_NORMAL = "AlmostNormal"
    REJECTED = "Rejected"


@dataclass(frozen=True)
class Certificate:
    status: Status
    exceptional_tet: int | None = None
    exceptional_kind: str | None = None  # "Octagon" | "TubedAnnulus"
    reason: str | None = None
    tet: int | None = None  # first violating tetrahedron, when rejected
    detail: str = ""
    classes: tuple = field(default=(), compare=False)

    @property
    def accepted(self) -> bool:
        return self.status is not Status.REJECTED

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "exceptional_tet": self.exceptional_tet,
            "exceptional_kind": self.exceptional_kind,
            "reason": self.reason,
            "tet": self.tet,
            "detail": self.detail,
            "tet_classes": [c.value for c in self.classes],
        }

    def __str__(self):
        if self.status is Status.REJECTED:
            where = f" at tetrahedron {self.tet}" if self.tet is not None else ""
            return f"Rejected({self.reason}){where}: {self.detail}"
        if self.status is Status.ALMOST_NORMAL:
            return f"AlmostNormal(tet {self.exceptional_tet}, {self.exceptional_kind})"
        return "Normal"


def _reject(reason, tet=None, detail="", classes=()):
    return Certificate(Status.REJECTED, reason=reason, tet=tet, detail=detail, classes=tuple(classes))


def tet_pieces(S: SurfaceConfig, t: int) -> TetPieces:
    tube = None
    if S.tube is not None and S.tube.tet == t:
        tube = (S.tube.piece_a, S.tube.piece_b)
    return TetPieces(S.tets[t], tube)


def certify_almost_normal(T: Triangulation, S: SurfaceConfig) -> Certificate:
    report = validate(T, S)
    if not report.ok:
        problem = report.problems[0]
        if isinstance(problem, QuadConditionViolated):
            return _reject("QuadConditionViolated", problem.tet, str(problem))
        if isinstance(problem, MatchingFailure):
            return _reject("MatchingFailure", problem.face[0], str(problem))
        if isinstance(problem, InvalidTube):
            return _reject("InvalidTube", S.tube.tet, str(problem))
        return _reject("InvalidSurface", None, str(problem))

    classes = []
    for t in range(T.tet_count):
        tp = tet_pieces(S, t)
        try:
            classes.append(classify_tet(tp))
        except InvalidConfig as exc:
            return _reject("MultipleExceptionalPieces", t, str(exc))
    for t, cls in enumerate(classes):
        if cls is TetClass.CONNECTED:
            tp = tet_pieces(S, t)
            _, long_disks = _exceptional(tp)
            if long_disks:
                return _reject("LongDiskPresent", t, f"disk with boundary length {long_disks[0].length}", classes)
            lengths = [tp.coords.boundary_length(r) for r in tp.tube]
            return _reject("OversizedTube", t, f"tubed pieces have boundary lengths {lengths}", classes)
    exceptional = [t for t, cls in enumerate(classes) if cls is TetClass.DISCONNECTED]
    if len(exceptional) > 1:
        return _reject(
            "MultipleExceptionalTets", exceptional[1],
            f"exceptional pieces in tetrahedra {exceptional}", classes,
        )
    if not exceptional:
        return Certificate(Status.NORMAL, classes=tuple(classes))
    t = exceptional[0]
    kind = "TubedAnnulus" if S.tube is not None and S.tube.tet == t else "Octagon"
    return Certificate(Status.ALMOST_NORMAL, exceptional_tet=t, exceptional_kind=kind, classes=tuple(classes))
