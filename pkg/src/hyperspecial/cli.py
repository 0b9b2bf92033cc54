"""Command-line front end: basis dumps, Weyl-module pipelines, appendix checks, surjectivity.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .affine_roots import DominantWeight, positive_roots
from .exact_arith import as_rational
from .loop_lie import VerificationFailed

DEFAULT_POINTS = ("1", "2", "3", "5", "7", "11", "13", "17", "19", "23")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    n: int = 1
    lam: tuple[int, ...] = ()
    points: list[Fraction] = field(default_factory=list)
    grade_cutoff: int | None = None
    seed: int = 0
    output: str | None = None

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("--n must be at least 1")
        if self.lam and len(self.lam) != self.n:
            raise UsageError(f"--lambda needs {self.n} entries")
        if any(c < 0 for c in self.lam):
            raise UsageError("--lambda entries must be non-negative")
        if any(z == 0 for z in self.points):
            raise UsageError("points must be nonzero")

    @property
    def weight(self) -> DominantWeight:
        return DominantWeight(self.lam or (0,) * self.n)


def _ints(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {s!r}") from exc


def _rats(s: str) -> list[Fraction]:
    try:
        return [as_rational(x.strip()) for x in s.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational list {s!r}") from exc


def _emit(payload, cfg: RunConfig, text: str | None = None) -> None:
    blob = json.dumps(payload, indent=1, sort_keys=True)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(blob + "\n")
    print(text if text is not None else blob)


def _config(args) -> RunConfig:
    return RunConfig(
        n=args.n,
        lam=getattr(args, "lam", None) or (),
        points=getattr(args, "points", None) or [],
        grade_cutoff=getattr(args, "max_grade", None),
        seed=getattr(args, "seed", 0),
        output=getattr(args, "json", None),
    )


# subcommands ---------------------------------------------------------------

def cmd_basis(args) -> int:
    from .current_algebra import basis_records, basis_text, build_basis, verify_basis

    cfg = _config(args)
    g = 6 if cfg.grade_cutoff is None else cfg.grade_cutoff
    if g < 0:
        raise UsageError("--max-grade must be non-negative")
    basis = build_basis(cfg.n, g)
    try:
        rep = verify_basis(cfg.n, g)
    except VerificationFailed as exc:
        rep = {"check": "basis", "params": {"n": cfg.n, "max_grade": g}, "pass": False,
               "witness": str(exc)}
    _emit({"report": rep, "basis": basis_records(basis)}, cfg,
          basis_text(basis) + f"\n{len(basis)} elements, pass={rep['pass']}")
    return 0 if rep["pass"] else 1


def _weyl_setup(cfg: RunConfig):
    from .weyl_engine import PiSpec

    need = sum(cfg.weight.coeffs)
    pts = cfg.points or [as_rational(p) for p in DEFAULT_POINTS[:need]]
    if len(pts) < need:
        raise UsageError(f"need {need} points for lambda={list(cfg.weight.coeffs)}")
    return PiSpec.from_weight(cfg.n, cfg.weight, pts[:need])


def _alternate_points(spec, seed: int) -> list[Fraction]:
    """A second generic point set, drawn from a seeded generator."""
    rng = random.Random(seed)
    k = len(spec.factors)
    taken = {abs(z) for z in spec.points()}
    pool = [Fraction(p, q) for p in range(1, 30) for q in (1, 2, 3)
            if Fraction(p, q) not in taken and Fraction(p, q).denominator == q]
    chosen: list[Fraction] = []
    while len(chosen) < k:
        z = rng.choice(pool)
        if z not in chosen:
            chosen.append(z)
    return chosen


def cmd_weyl(args) -> int:
    from .weyl_engine import (
        CheckFailed, GenericityViolated, PiSpec, associated_graded, build_generic_weyl,
        p_generating_series, verify_demazure_relations, verify_garland_recurrence,
        verify_straightening,
    )

    cfg = _config(args)
    spec = _weyl_setup(cfg)
    try:
        m = build_generic_weyl(cfg.n, spec)
    except GenericityViolated as exc:
        raise UsageError(str(exc)) from exc
    lam = cfg.weight
    if args.mode == "dim":
        want = spec.expected_dim()
        _emit({"n": cfg.n, "lambda": list(lam.coeffs), "points": [str(z) for z in spec.points()],
               "dim": m.dim, "predicted": want, "pass": m.dim == want}, cfg,
              f"{m.dim} = {want}" if m.dim == want else f"{m.dim} != {want}")
        return 0 if m.dim == want else 1
    gm = associated_graded(m)
    if args.mode == "char":
        ch = gm.character()
        _emit({"n": cfg.n, "lambda": list(lam.coeffs), "total": ch.total,
               "character": ch.records()}, cfg)
        return 0
    cutoff = cfg.grade_cutoff if cfg.grade_cutoff is not None else 2 * sum(lam.coeffs) + 4
    r_max = max(lam.coeffs, default=0) + 1
    reports = []
    try:
        table = p_generating_series(m, m.cyclic_vector(), spec, r_max)
        reports.append({"check": "p_series", "pass": True, "witness": table.records()})
        for i in range(1, cfg.n + 1):
            reports.append(verify_garland_recurrence(m, i, r_max))
        for root in positive_roots(cfg.n):
            reports.append(verify_straightening(m, root, min(r_max, 3)))
        reports.append(verify_demazure_relations(gm, lam, cutoff))
        alt = PiSpec.from_weight(cfg.n, lam, _alternate_points(spec, cfg.seed))
        same = associated_graded(build_generic_weyl(cfg.n, alt)).character() == gm.character()
        reports.append({"check": "character_independence", "pass": same,
                        "params": {"seed": cfg.seed, "points": [str(z) for z in alt.points()]}})
    except CheckFailed as exc:
        _emit({"pass": False, "failure": exc.report or str(exc), "reports": reports}, cfg)
        return 1
    ok = all(r["pass"] for r in reports)
    _emit({"pass": ok, "reports": reports}, cfg)
    return 0 if ok else 1


def cmd_appendix(args) -> int:
    from .a22_combinatorics import (
        LemmaFailed, ParityViolation, SplitMismatch, enumerate_S, verify_appendix_lemmas,
        verify_splitting,
    )

    cfg = RunConfig(n=1, seed=args.seed, output=args.json)
    if args.action == "enumerate":
        try:
            seqs = enumerate_S(args.l, args.m)
        except (ParityViolation, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        _emit({"l": str(args.l), "m": str(args.m), "count": len(seqs),
               "sequences": [s.records() for s in seqs]}, cfg)
        return 0
    if args.weight < 0:
        raise UsageError("--weight must be non-negative")
    lmax = args.lmax if args.lmax is not None else args.weight + 2
    try:
        splits = []
        for s in range(min(lmax, 5) + 1):
            for l2 in range(2 * s + 1):
                for k in range(4):
                    splits.append(verify_splitting(Fraction(l2, 2), Fraction(2 * s - l2, 2), k)["pass"])
        rep = verify_appendix_lemmas(args.weight, lmax=lmax)
    except LemmaFailed as exc:
        _emit({"pass": False, "failure": {"tag": exc.tag, "params": exc.params}}, cfg)
        return 1
    except SplitMismatch as exc:
        _emit({"pass": False, "failure": str(exc)}, cfg)
        return 1
    _emit({"pass": True, "splitting_checks": len(splits), "lemmas": rep}, cfg)
    return 0


def cmd_surjectivity(args) -> int:
    from .weyl_engine import verify_surjectivity

    cfg = _config(args)
    pts = cfg.points or [Fraction(1)]
    rep = verify_surjectivity(cfg.n, pts, args.order, cfg.grade_cutoff)
    _emit(rep, cfg)
    return 0 if rep["pass"] else 1


# parser --------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, lam: bool = True) -> None:
    p.add_argument("--n", type=int, default=1)
    if lam:
        p.add_argument("--lambda", dest="lam", type=_ints, default=None)
    p.add_argument("--points", type=_rats, default=None)
    p.add_argument("--max-grade", dest="max_grade", type=int, default=None)
    p.add_argument("--json", default=None, metavar="PATH")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperspecial",
                                     description="Hyperspecial current algebras of type A_2n^(2).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="list and verify the graded basis")
    _common(p, lam=False)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("weyl", help="local Weyl module pipelines")
    p.add_argument("mode", choices=["dim", "char", "verify"])
    _common(p)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("appendix", help="rank-one sequence sets and lemma checks")
    p.add_argument("action", nargs="?", choices=["verify", "enumerate"], default="verify")
    p.add_argument("--weight", type=int, default=1)
    p.add_argument("--lmax", type=int, default=None)
    p.add_argument("--l", type=Fraction, default=Fraction(0))
    p.add_argument("--m", type=Fraction, default=Fraction(0))
    p.add_argument("--json", default=None, metavar="PATH")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("surjectivity", help="rank of the evaluation map")
    _common(p, lam=False)
    p.add_argument("--order", type=int, default=1, help="truncation order N")
    p.set_defaults(func=cmd_surjectivity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
