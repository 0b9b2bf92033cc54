"""Graded characters of gr W(lambda) and their grade-wise decompositions.

usage: python3 scripts/graded_characters.py [--n 2] [--max-total 2] [--json out.json]
"""
import argparse
import itertools
import json

from hyperspecial.affine_roots import DominantWeight
from hyperspecial.rep_builder import g_decompose
from hyperspecial.weyl_engine import PiSpec, associated_graded, build_generic_weyl

POINTS = [1, 2, 3, 5, 7]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--max-total", type=int, default=2)
    ap.add_argument("--json", default=None)
    args = ap.parse_args()
    rows = []
    for lam in itertools.product(range(args.max_total + 1), repeat=args.n):
        if not 0 < sum(lam) <= args.max_total:
            continue
        spec = PiSpec.from_weight(args.n, DominantWeight(lam), POINTS)
        gm = associated_graded(build_generic_weyl(args.n, spec))
        dec = g_decompose(gm.character(), args.n)
        pieces = {g: {str(w): c for w, c in sorted(d.items())} for g, d in sorted(dec.items())}
        rows.append({"lambda": list(lam), "dim": gm.dim, "grades": pieces})
        print(f"lambda={lam} dim={gm.dim}")
        for g, d in pieces.items():
            print(f"   grade {g}: " + " + ".join(f"{c}*V({w})" for w, c in d.items()))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1, sort_keys=True)


if __name__ == "__main__":
    main()
