"""Census of connected normal curves on the boundary of a tetrahedron.

Prints, per length, the number of curves, symmetry classes, hemisphere
statistics and disk complex component counts, for both enumerators.

Usage: python scripts/curve_census.py [--max-length N]
"""
import argparse
import time
from collections import Counter, defaultdict

from almostnormal.curves import classify_curve, enumerate_curves, hemispheres, symmetry_classes
from almostnormal.diskcomplex import build_disk_complex


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-length", type=int, default=24)
    args = ap.parse_args()
    runs = {}
    for method in ("packing", "words"):
        start = time.perf_counter()
        runs[method] = enumerate_curves(args.max_length, method=method)
        print(f"{method:8s} {len(runs[method]):4d} curves in {time.perf_counter() - start:.3f}s")
    curves = runs["packing"]
    print("methods agree:", runs["packing"] == runs["words"])
    classes = symmetry_classes(curves)
    print(f"symmetry classes: {len(classes)}")
    rows = defaultdict(Counter)
    for c in curves:
        stats = tuple((h.vertex_count, h.parallel_count) for h in hemispheres(c))
        g = build_disk_complex(c)
        rows[c.length][(classify_curve(c).kind, stats, len(g.vertices), g.component_count)] += 1
    print("length  count  class        hemispheres         disk vertices  components")
    for length in sorted(rows):
        for (kind, stats, nv, nc), n in sorted(rows[length].items()):
            print(f"{length:6d} {n:6d}  {kind:12s} {str(stats):20s} {nv:13d} {nc:11d}")


if __name__ == "__main__":
    main()
