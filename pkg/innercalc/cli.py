# -*- coding: utf-8 -*-
"""
The innercalc command line

Verbs:
    gen      sample colligations, unitaries, Krein-Shmul'yan morphisms or points
    eval     evaluate a characteristic function at a point
    op       sum | prod | tensor | compose | split | restrict
    repn     build | apply | compose with polynomial representations
    verify   run theorem suites and emit JSON line reports
    report   aggregate JSON line reports

Machine output goes to stdout or --out. The exit code is 0 iff every
requested report passes; errors raised by the calculus exit with 2.

Examples:
    .. code:: bash

        innercalc gen colligation 2 1 2 --seed 3 --out g.json
        innercalc eval g.json point.json
        innercalc verify T2 --trials 100 --seed 7 --out reports.jsonl
        innercalc report reports.jsonl
"""

# Standard imports
from __future__ import annotations

from pathlib import Path
import argparse
import json
import sys

# Third party imports
import numpy as np

# Local imports
from ._colligations import (
    Colligation,
    Signature,
    SplitSpec,
    build_irrep,
    compose,
    direct_sum,
    odot_product,
    random_colligation,
    rep_apply,
    rep_compose_colligation,
    restrict_to_component,
    split_off,
    tensor_product,
    theta_eval,
)
from ._geometry import KSMorphism, ToleranceConfig, haar_unitary, sample_ball_point
from ._globals import __globals as _globals
from ._io import load, serialize, to_document
from ._verify import aggregate_reports, run_verify, theorems
from .utils import InnerCalcError

# Typing
from typing import (
    Any,
    Optional,
    Sequence,
)


def _common() -> argparse.ArgumentParser:
    """Flags shared by every verb"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=int, default=None, help="master seed (default: $COLLIG_SEED or 0)")
    parser.add_argument("--tol", type=float, default=None, help="tolerance; the pass threshold for verify")
    parser.add_argument("--trials", type=int, default=None, help="number of trials for verify")
    parser.add_argument("--out", type=Path, default=None, help="write output to this file")
    parser.add_argument("--timing", action="store_true", help="include runtime_ms in reports")
    parser.add_argument("--workers", type=int, default=None, help="worker processes for verify")
    parser.add_argument("--verbose", action="store_true", help="print measurements to stderr")
    return parser


def build_parser() -> argparse.ArgumentParser:
    """The argument parser of the innercalc command"""
    common = _common()
    parser = argparse.ArgumentParser(
        prog="innercalc",
        description="Colligations, characteristic functions and their calculus.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    gen = verbs.add_parser("gen", help="sample random objects")
    kinds = gen.add_subparsers(dest="kind", required=True)
    p = kinds.add_parser("colligation", parents=[common], help="Haar random colligation")
    p.add_argument("alpha", type=int)
    p.add_argument("m", type=int)
    p.add_argument("j", type=int)
    p = kinds.add_parser("unitary", parents=[common], help="Haar random unitary matrix")
    p.add_argument("n", type=int)
    p = kinds.add_parser("ks", parents=[common], help="Haar random Krein-Shmul'yan morphism B_m -> B_n")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p = kinds.add_parser("point", parents=[common], help="random point of the open ball")
    p.add_argument("m", type=int)
    p.add_argument("--radius", type=float, default=0.9)

    ev = verbs.add_parser("eval", parents=[common], help="evaluate Theta at a point")
    ev.add_argument("colligation", type=Path)
    ev.add_argument("point", type=Path)

    op = verbs.add_parser("op", help="calculus operations")
    ops = op.add_subparsers(dest="op", required=True)
    for name, helptext in [
        ("sum", "direct sum"),
        ("prod", "pointwise product"),
        ("tensor", "pointwise tensor product"),
        ("compose", "composition Theta[first] o Theta[second]"),
    ]:
        p = ops.add_parser(name, parents=[common], help=helptext)
        p.add_argument("first", type=Path)
        p.add_argument("second", type=Path)
    p = ops.add_parser("split", parents=[common], help="split a block diagonal function")
    p.add_argument("colligation", type=Path)
    p.add_argument("alpha1", type=int)
    p = ops.add_parser("restrict", parents=[common], help="restrict to a boundary component")
    p.add_argument("colligation", type=Path)
    p.add_argument("k", type=int)
    p.add_argument("--reducer", type=Path, default=None, help="element of U(m, m) locating the component")

    repn = verbs.add_parser("repn", help="polynomial representations of GL(n)")
    actions = repn.add_subparsers(dest="action", required=True)
    p = actions.add_parser("build", parents=[common], help="realize an irreducible representation")
    p.add_argument("signature", type=int, nargs="+")
    p = actions.add_parser("apply", parents=[common], help="the matrix of g in the representation")
    p.add_argument("matrix", type=Path)
    p.add_argument("signature", type=int, nargs="+")
    p = actions.add_parser("compose", parents=[common], help="colligation of the representation of Theta")
    p.add_argument("colligation", type=Path)
    p.add_argument("signature", type=int, nargs="+")

    verify = verbs.add_parser("verify", parents=[common], help="run theorem suites")
    verify.add_argument("theorems", nargs="+", help="theorem ids, or 'all'")
    verify.add_argument("--colligation", type=Path, default=None, help="colligation for the INNER suite")

    report = verbs.add_parser("report", parents=[common], help="aggregate JSON line reports")
    report.add_argument("reports", type=Path, nargs="+")
    return parser


def _emit(text: str, out: Optional[Path], append: bool = False) -> None:
    if out is None:
        sys.stdout.write(text + "\n")
        return
    with open(out, "a" if append else "w") as f:
        f.write(text + "\n")


def _log(args: argparse.Namespace, message: str) -> None:
    if args.verbose:
        print(message, file=sys.stderr)


def _load_as(path: Path, kind: type) -> Any:
    value = load(path)
    if not isinstance(value, kind):
        raise TypeError(f"{path} does not hold a {kind.__name__}")
    return value


def _matrix(path: Path) -> np.ndarray:
    return _load_as(path, np.ndarray)


def _tolerance(args: argparse.Namespace) -> Optional[ToleranceConfig]:
    if args.tol is None or args.verb == "verify":
        return None
    return ToleranceConfig(atol=args.tol, cond_cap=ToleranceConfig.default().cond_cap)


def _seed(args: argparse.Namespace) -> int:
    return _globals.seed if args.seed is None else args.seed


def _gen(args: argparse.Namespace) -> int:
    seed = _seed(args)
    value: Any
    if args.kind == "colligation":
        value = random_colligation(args.alpha, args.m, args.j, seed)
    elif args.kind == "unitary":
        value = haar_unitary(args.n, seed)
    elif args.kind == "ks":
        value = KSMorphism(args.n, args.m, haar_unitary(args.n + args.m, seed))
    else:
        value = sample_ball_point(args.m, args.radius, seed)
    _emit(serialize(value), args.out)
    return 0


def _eval(args: argparse.Namespace) -> int:
    g = _load_as(args.colligation, Colligation)
    _emit(serialize(theta_eval(g, _matrix(args.point), _tolerance(args))), args.out)
    return 0


def _op(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    if args.op in ("split", "restrict"):
        F = _load_as(args.colligation, Colligation)
        if args.op == "split":
            parts = split_off(F, SplitSpec(args.alpha1, F.alpha - args.alpha1), tol)
            _emit(json.dumps([to_document(part) for part in parts], indent=2), args.out)
            return 0
        reducer = None if args.reducer is None else _matrix(args.reducer)
        _emit(serialize(restrict_to_component(F, args.k, reducer=reducer, tol=tol)), args.out)
        return 0

    first = _load_as(args.first, Colligation)
    second = _load_as(args.second, Colligation)
    if args.op == "sum":
        result = direct_sum(first, second)
    elif args.op == "prod":
        result = odot_product(first, second)
    elif args.op == "tensor":
        result = tensor_product(first, second)
    else:
        result = compose(first, second, tol=tol)
        _log(args, f"internal multiplicity {result.j} = {second.j} x {first.j}")
    _emit(serialize(result), args.out)
    return 0


def _repn(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    sig = Signature(tuple(args.signature))
    rep = build_irrep(sig, seed=_seed(args), tol=tol)
    _log(args, f"{rep!r} inside a tensor space of dimension {rep.ambient_dim}")
    if args.action == "build":
        doc = {"signature": list(sig.parts), "n": rep.n, "dim": rep.dim, "ambient_dim": rep.ambient_dim}
        _emit(json.dumps(doc), args.out)
    elif args.action == "apply":
        _emit(serialize(rep_apply(rep, _matrix(args.matrix))), args.out)
    else:
        F = _load_as(args.colligation, Colligation)
        _emit(serialize(rep_compose_colligation(rep, F, seed=_seed(args), tol=tol)), args.out)
    return 0


def _verify(args: argparse.Namespace) -> int:
    ids = theorems.ids() if args.theorems == ["all"] else args.theorems
    kwargs: dict[str, Any] = {}
    if args.colligation is not None:
        kwargs["colligation"] = _load_as(args.colligation, Colligation)
    passed = True
    for theorem_id in ids:
        report = run_verify(
            theorem_id,
            trials=args.trials,
            seed=_seed(args),
            tol=args.tol,
            workers=args.workers,
            verbose=args.verbose,
            **(kwargs if theorem_id == "INNER" else {}),
        )
        line = report.to_json(timing=args.timing)
        sys.stdout.write(line + "\n")
        if args.out is not None:
            _emit(line, args.out, append=True)
        passed = passed and report.passed
    return 0 if passed else 1


def _report(args: argparse.Namespace) -> int:
    summary, passed = aggregate_reports(args.reports)
    _emit(summary.to_string() if not summary.empty else "no reports", args.out)
    return 0 if passed else 1


_VERBS = {
    "gen": _gen,
    "eval": _eval,
    "op": _op,
    "repn": _repn,
    "verify": _verify,
    "report": _report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the innercalc command

    Returns:
        The exit code: 0 on success, 1 if a report failed, 2 on errors
    """
    args = build_parser().parse_args(argv)
    try:
        return _VERBS[args.verb](args)
    except (InnerCalcError, ValueError, TypeError, OSError) as e:
        print(f"innercalc {args.verb}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
