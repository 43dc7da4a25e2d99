"""Triangulations as tetrahedra with face gluings.

Text format, one line per tetrahedron with four face entries (faces 0..3)::

    # comment
    1:0:123  1:1:023  bdry  bdry

An entry is ``bdry`` or ``t:f:perm``: face ``f`` of tetrahedron ``t`` is glued
to this face, and ``perm`` lists the images of this face's vertices taken in
increasing order.  The JSON form is ``{"tetrahedra": [[entry, ...], ...]}``
with entries ``"bdry"`` or ``{"tet": t, "face": f, "perm": [a, b, c]}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .errors import ParseError
from .tetra import EDGES, FACES, edge_index


class TriangulationError(ValueError):
    pass


class NonInvolutiveGluing(TriangulationError):
    pass


class SelfGluedFace(TriangulationError):
    pass


class MissingFaceRecord(TriangulationError):
    pass


class InvalidGluing(TriangulationError):
    pass


@dataclass(frozen=True)
class Gluing:
    tet: int
    face: int
    perm: tuple  # images of FACES[source face], in order

    def vertex_map(self, source_face: int) -> dict:
        return dict(zip(FACES[source_face], self.perm))


@dataclass(frozen=True)
class EdgeClass:
    id: int
    embeddings: tuple  # (tet, edge, orientation) with orientation +1 or -1
    is_boundary: bool
    valid: bool = True  # False if the edge is identified with itself reversed

    @property
    def degree(self) -> int:
        return len(self.embeddings)


@dataclass(frozen=True)
class VertexClass:
    id: int
    embeddings: tuple  # (tet, vertex)
    is_boundary: bool


@dataclass(frozen=True)
class Triangulation:
    tet_count: int
    gluings: tuple  # gluings[t][f] is a Gluing or None for a boundary face

    def glued(self, t: int, f: int) -> Gluing | None:
        return self.gluings[t][f]

    @cached_property
    def boundary_faces(self) -> tuple:
        return tuple((t, f) for t in range(self.tet_count) for f in range(4) if self.gluings[t][f] is None)

    @property
    def is_closed(self) -> bool:
        return not self.boundary_faces

    def interior_face_pairs(self) -> list:
        """Each glued face pair once, as ``((t, f), gluing)`` with (t, f) the smaller side."""
        out = []
        for t in range(self.tet_count):
            for f in range(4):
                g = self.gluings[t][f]
                if g is not None and (t, f) < (g.tet, g.face):
                    out.append(((t, f), g))
        return out

    @cached_property
    def edge_classes(self) -> tuple:
        return _edge_orbits(self)

    @cached_property
    def vertex_classes(self) -> tuple:
        return _vertex_orbits(self)

    @cached_property
    def edge_class_of(self) -> dict:
        """Map ``(tet, edge)`` slot to the id of its edge class."""
        return {(t, e): c.id for c in self.edge_classes for t, e, _ in c.embeddings}

    @cached_property
    def vertex_class_of(self) -> dict:
        return {(t, v): c.id for c in self.vertex_classes for t, v in c.embeddings}

    def to_table(self) -> list:
        return [
            [None if g is None else (g.tet, g.face, g.perm) for g in row]
            for row in self.gluings
        ]

    def to_text(self) -> str:
        lines = []
        for row in self.gluings:
            cells = ["bdry" if g is None else f"{g.tet}:{g.face}:{''.join(map(str, g.perm))}" for g in row]
            lines.append("  ".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "tetrahedra": [
                ["bdry" if g is None else {"tet": g.tet, "face": g.face, "perm": list(g.perm)} for g in row]
                for row in self.gluings
            ]
        }


def build_triangulation(table) -> Triangulation:
    """Validate a gluing table and derive its skeleta.

    ``table[t][f]`` is ``None`` (or ``"bdry"``) for a boundary face, or a
    triple ``(tet, face, perm)``.
    """
    n = len(table)
    rows = []
    for t, record in enumerate(table):
        record = list(record)
        if len(record) != 4:
            raise MissingFaceRecord(f"tetrahedron {t} has {len(record)} face records, expected 4")
        row = []
        for f, entry in enumerate(record):
            if entry is None or entry == "bdry":
                row.append(None)
                continue
            if isinstance(entry, Gluing):
                entry = (entry.tet, entry.face, entry.perm)
            t2, f2, perm = entry
            perm = tuple(int(x) for x in perm)
            if not (0 <= t2 < n and 0 <= f2 < 4):
                raise InvalidGluing(f"face ({t},{f}) glued to nonexistent face ({t2},{f2})")
            if sorted(perm) != list(FACES[f2]):
                raise InvalidGluing(
                    f"face ({t},{f}) perm {perm} is not a bijection onto the vertices of face {f2}"
                )
            if (t2, f2) == (t, f):
                raise SelfGluedFace(f"face ({t},{f}) is glued to itself")
            row.append(Gluing(t2, f2, perm))
        rows.append(tuple(row))

    for t, row in enumerate(rows):
        for f, g in enumerate(row):
            if g is None:
                continue
            back = rows[g.tet][g.face]
            if back is None or (back.tet, back.face) != (t, f):
                where = "boundary" if back is None else f"({back.tet},{back.face})"
                raise NonInvolutiveGluing(
                    f"({t},{f}) -> ({g.tet},{g.face}) but ({g.tet},{g.face}) -> {where}"
                )
            fwd = g.vertex_map(f)
            bwd = back.vertex_map(g.face)
            if any(bwd[fwd[v]] != v for v in FACES[f]):
                raise NonInvolutiveGluing(
                    f"vertex maps of ({t},{f}) and ({g.tet},{g.face}) are not mutually inverse"
                )
    return Triangulation(n, tuple(rows))


def _edge_orbits(T: Triangulation) -> tuple:
    seen = {}
    classes = []
    for t in range(T.tet_count):
        for e in range(6):
            if (t, e) in seen:
                continue
            cid = len(classes)
            seen[(t, e)] = 1
            order = [(t, e, 1)]
            boundary = False
            valid = True
            stack = [(t, e, 1)]
            while stack:
                tt, ee, sign = stack.pop()
                a, b = EDGES[ee]
                for f in range(4):
                    if f in (a, b):
                        continue
                    g = T.gluings[tt][f]
                    if g is None:
                        boundary = True
                        continue
                    m = g.vertex_map(f)
                    a2, b2 = m[a], m[b]
                    e2 = edge_index(a2, b2)
                    s2 = sign if a2 < b2 else -sign
                    if (g.tet, e2) in seen:
                        if seen[(g.tet, e2)] != s2:
                            valid = False
                        continue
                    seen[(g.tet, e2)] = s2
                    order.append((g.tet, e2, s2))
                    stack.append((g.tet, e2, s2))
            classes.append(EdgeClass(cid, tuple(order), boundary, valid))
    return tuple(classes)


def _vertex_orbits(T: Triangulation) -> tuple:
    seen = set()
    classes = []
    for t in range(T.tet_count):
        for v in range(4):
            if (t, v) in seen:
                continue
            seen.add((t, v))
            order = [(t, v)]
            stack = [(t, v)]
            boundary = False
            while stack:
                tt, vv = stack.pop()
                for f in range(4):
                    if f == vv:
                        continue
                    g = T.gluings[tt][f]
                    if g is None:
                        boundary = True
                        continue
                    nxt = (g.tet, g.vertex_map(f)[vv])
                    if nxt not in seen:
                        seen.add(nxt)
                        order.append(nxt)
                        stack.append(nxt)
            classes.append(VertexClass(len(classes), tuple(order), boundary))
    return tuple(classes)


def edge_classes(T: Triangulation) -> list:
    return list(T.edge_classes)


# ---------------------------------------------------------------------------
# file formats


def parse_triangulation_text(text: str) -> Triangulation:
    table = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        record = []
        pos = 0
        for tok in body.split():
            col = body.index(tok, pos) + 1
            pos = col - 1 + len(tok)
            if tok == "bdry":
                record.append(None)
                continue
            parts = tok.split(":")
            if len(parts) != 3 or not all(p.isdigit() for p in parts) or len(parts[2]) != 3:
                raise ParseError(f"bad face entry {tok!r}, expected bdry or t:f:perm", lineno, col)
            record.append((int(parts[0]), int(parts[1]), tuple(int(c) for c in parts[2])))
        if len(record) != 4:
            raise ParseError(f"expected 4 face entries, found {len(record)}", lineno, 1)
        table.append(record)
    return build_triangulation(table)


def parse_triangulation_json(data) -> Triangulation:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        rows = data["tetrahedra"]
        table = []
        for row in rows:
            record = []
            for entry in row:
                if entry == "bdry" or entry is None:
                    record.append(None)
                else:
                    record.append((int(entry["tet"]), int(entry["face"]), tuple(entry["perm"])))
            table.append(record)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed triangulation document: {exc}") from None
    return build_triangulation(table)


def load_triangulation(path) -> Triangulation:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return parse_triangulation_json(data)
    return parse_triangulation_text(text)
