"""Search closed two-tetrahedron triangulations for certifier fixtures.

For each gluing of the 8 faces in pairs that gives a connected closed
3-manifold (valid edges, sphere vertex links) we solve the matching equations
by brute force over small coordinates, looking for

  * octagon: one octagon in tetrahedron 0, normal pieces in tetrahedron 1;
  * disk12: a length-12 disk in tetrahedron 0, normal pieces in tetrahedron 1;
  * two_octagons: an octagon in each tetrahedron.

Usage: PYTHONPATH=src python scripts/search_fixtures.py [--out DIR]
"""
import argparse
import itertools
import json
from pathlib import Path

from almostnormal.curves import ARC_INDEX, enumerate_curves
from almostnormal.surface import SurfaceConfig, TetCoords, euler_characteristic, surface_to_json, validate
from almostnormal.tetra import FACES
from almostnormal.triangulation import TriangulationError, build_triangulation

SLOTS = [(t, f) for t in range(2) for f in range(4)]


def matchings(slots):
    if not slots:
        yield []
        return
    a = slots[0]
    for i in range(1, len(slots)):
        for rest in matchings(slots[1:i] + slots[i + 1:]):
            yield [(a, slots[i])] + rest


def gluings():
    for pairs in matchings(SLOTS):
        for perms in itertools.product(itertools.permutations(range(3)), repeat=4):
            table = [[None] * 4 for _ in range(2)]
            for ((t, f), (u, g)), p in zip(pairs, perms):
                src, dst = FACES[f], FACES[g]
                image = tuple(dst[i] for i in p)
                table[t][f] = (u, g, image)
                inv = dict(zip(image, src))
                table[u][g] = (t, f, tuple(inv[v] for v in dst))
            yield table


def is_manifold(T) -> bool:
    if not all(c.valid for c in T.edge_classes):
        return False
    for vc in T.vertex_classes:
        t = [[0] * 4 for _ in range(T.tet_count)]
        for tt, v in vc.embeddings:
            t[tt][v] += 1
        S = SurfaceConfig.from_coords([(tuple(r),) for r in t])
        if not validate(T, S).ok or euler_characteristic(T, S) != 2:
            return False
    return True


def options(kind, long12):
    small = list(itertools.product(range(3), repeat=4))
    if kind == "octagon":
        return [TetCoords(t, (0, 0, 0), tuple(int(i == p) for i in range(3))) for p in range(3) for t in small]
    if kind == "disk12":
        return [TetCoords(t, disks=(c,)) for c in long12 for t in itertools.product(range(2), repeat=4)]
    normal = [TetCoords(t, tuple(n * int(i == p) for i in range(3))) for p in range(3) for n in range(3) for t in small]
    return normal


def solve(T, first, second):
    """Pairs (a, b) from first x second that satisfy every matching equation."""
    own = {0: [], 1: []}
    cross = []
    for (t, f), g in T.interior_face_pairs():
        m = g.vertex_map(f)
        for v in FACES[f]:
            eq = ((t, ARC_INDEX[(f, v)]), (g.tet, ARC_INDEX[(g.face, m[v])]))
            if t == g.tet:
                own[t].append(eq)
            else:
                cross.append(eq if t == 0 else eq[::-1])

    def ok_self(tc, eqs):
        c = tc.arc_counts
        return all(c[i] == c[j] for (_, i), (_, j) in eqs)

    first = [a for a in first if ok_self(a, own[0])]
    index = {}
    for b in second:
        if ok_self(b, own[1]):
            index.setdefault(tuple(b.arc_counts[j] for _, (_, j) in cross), []).append(b)
    for a in first:
        for b in index.get(tuple(a.arc_counts[i] for (_, i), _ in cross), ()):
            yield a, b


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    long12 = [c for c in enumerate_curves(12) if c.length == 12]
    opts = {k: options(k, long12) for k in ("octagon", "disk12", "normal")}
    wanted = {"octagon": ("octagon", "normal"), "disk12": ("disk12", "normal"), "two_octagons": ("octagon", "octagon")}
    found = {}
    seen = set()
    examined = 0
    for table in gluings():
        try:
            T = build_triangulation(table)
        except TriangulationError:
            continue
        if all(g.tet == 0 for g in T.gluings[0]):
            continue  # disconnected
        key = T.to_text()
        if key in seen:
            continue
        seen.add(key)
        if not is_manifold(T):
            continue
        examined += 1
        for kind, (x, y) in wanted.items():
            if kind in found:
                continue
            best = None
            for a, b in solve(T, opts[x], opts[y]):
                S = SurfaceConfig((a, b))
                if validate(T, S).ok:
                    score = S.piece_count()
                    if best is None or score < best[0]:
                        best = (score, S)
            if best:
                found[kind] = (T, best[1])
                print(kind, "|", T.to_text().replace("\n", " | "), surface_to_json(best[1]))
        if len(found) == len(wanted):
            break
    print("closed manifold gluings examined:", examined)
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        for kind, (T, S) in found.items():
            (args.out / f"{kind}.tri").write_text(T.to_text())
            (args.out / f"{kind}.srf").write_text(json.dumps(surface_to_json(S)) + "\n")


if __name__ == "__main__":
    main()
