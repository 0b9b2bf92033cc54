"""Fit the coefficients of the half-root straightening identity.

For the long root a = 2e_i, solve
    x_{(a+d)/2}^{(2r+1)} (e_i x_{-a})^{(r+1)} v = sum_s c_{r,s} x_{(-a+(2(r-s)+1)d)/2} Q_s v
simultaneously over several generic modules, where Q_s is the literal
(-1)^s p(x_{(a+d)/2}^{(2s)} (e_i x_{-a})^{(s)}).  The fitted c_{r,s} are
(-1)^r 2^{s-r}.

usage: python3 scripts/fit_half_straightening.py [--n 1] [--rmax 3]
"""
import argparse
from fractions import Fraction

from hyperspecial.affine_roots import AffineRoot, DominantWeight, half_root, long_root
from hyperspecial.linalg import solve_in_span
from hyperspecial.weyl_engine import (
    PiSpec, apply_divided_power, build_generic_weyl, half_sign, weight_part,
)


def stacked(mods, f):
    out = {}
    for k, m in enumerate(mods):
        for key, c in f(m).items():
            out[(k, key)] = c
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--rmax", type=int, default=3)
    args = ap.parse_args()
    n = args.n
    pts = [1, 2, 3, 5]
    for i in range(1, n + 1):
        lam_list = [tuple(3 if j == i else 0 for j in range(1, n + 1)),
                    tuple(2 if j == i else (1 if j == 1 else 0) for j in range(1, n + 1))]
        mods = [build_generic_weyl(n, PiSpec.from_weight(n, DominantWeight(lam), pts)) for lam in lam_list]
        eps = half_sign(n, i)
        up = AffineRoot(1, half_root(n, i))
        down = AffineRoot(0, long_root(n, i, -1))

        def Q(m, s):
            v = m.cyclic_vector()
            w = apply_divided_power(m, up, 2 * s, apply_divided_power(m, down, s, v, eps))
            return {k: (-1) ** s * c for k, c in weight_part(m, w, m.weights[m.cyclic_index]).items()}

        print(f"long root 2e{i}, sign {eps}")
        for r in range(args.rmax + 1):
            lhs = stacked(mods, lambda m: apply_divided_power(
                m, up, 2 * r + 1, apply_divided_power(m, down, r + 1, m.cyclic_vector(), eps)))
            cols = [stacked(mods, lambda m, s=s: m.apply(
                AffineRoot(2 * (r - s) + 1, half_root(n, i, -1)), Q(m, s))) for s in range(r + 1)]
            sol = solve_in_span(cols, lhs)
            want = [Fraction((-1) ** r, 2 ** (r - s)) for s in range(r + 1)]
            print(f"  r={r}: fitted {[str(c) for c in sol] if sol else None}  expected {[str(c) for c in want]}")


if __name__ == "__main__":
    main()
