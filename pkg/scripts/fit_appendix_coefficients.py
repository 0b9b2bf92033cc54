"""Fit the coefficients of y(l, m) on the graded module gr W(n Lambda), n = 1 algebra.

For every (l, m) with l + m <= n the words of S(l, m) applied to w are
linearly independent, so the identity
    y(l, m) w = (-1)^{l+m} x_{a/2+d/2}^{(2m)} x_{-a}^{(l+m)} w
determines each coefficient.  Printed next to the fit are the displayed and
realized conventions.

usage: python3 scripts/fit_appendix_coefficients.py [--weight 4]
"""
import argparse
from fractions import Fraction

from hyperspecial.a22_combinatorics import (
    DISPLAYED, REALIZED, OperatorSum, build_y, default_module_builder, enumerate_S,
    lemma_a2_sides,
)
from hyperspecial.linalg import rank, solve_in_span


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--weight", type=int, default=4)
    args = ap.parse_args()
    gm = default_module_builder(args.weight)
    w = gm.cyclic_vector()
    print(f"gr W({args.weight} Lambda): dim {gm.dim}")
    for s in range(1, args.weight + 1):
        for l2 in range(1, 2 * s + 1):
            l, m = Fraction(l2, 2), Fraction(2 * s - l2, 2)
            seqs = enumerate_S(l, m)
            vecs = [OperatorSum({q.values: Fraction(1)}).act(gm, w) for q in seqs]
            _, rhs = lemma_a2_sides(gm, l, m, w)
            sol = solve_in_span(vecs, rhs)
            shown = build_y(l, m, convention=DISPLAYED).terms
            real = build_y(l, m, convention=REALIZED).terms
            print(f"(l, m) = ({l}, {m})  independent={rank(vecs) == len(vecs)}")
            for q, c in zip(seqs, sol or [None] * len(seqs)):
                print(f"   {str(q):28s} fit {str(c):6s} displayed {str(shown[q.values]):6s}"
                      f" realized {real[q.values]}")


if __name__ == "__main__":
    main()
