"""Rank of the truncated evaluation map as the grade cutoff grows.

usage: python3 scripts/surjectivity_table.py [--n 1]
"""
import argparse

from hyperspecial.weyl_engine import verify_surjectivity

CASES = [[1], [1, 2], [1, 2, 3], [1, -1], [2, -2, 3]]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=1)
    args = ap.parse_args()
    for pts in CASES:
        for N in (1, 2):
            rep = verify_surjectivity(args.n, pts, N)
            w = rep["witness"]
            print(f"points={pts} N={N}: rank {w['rank']}/{w['target']} "
                  f"minimal cutoff {w['minimal_cutoff']}  ranks {w['rank_by_cutoff']}")


if __name__ == "__main__":
    main()
