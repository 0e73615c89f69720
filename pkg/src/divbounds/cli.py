"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .catalog import Measure, closed_bounds, evaluate, evaluate_all, generator
from .errors import BadDimension, BadFloor, DivergenceError, NoClosedForm
from .fdiv import dragomir_bounds
from .harness import BOUND_GENERATORS, fuzz, run_suite
from .relations import Relation, cross_check
from .report import Report
from .simplex import DEFAULT_FLOOR, load, pair

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_SUFFIX_FORMATS = {".json": "json-array", ".csv": "csv-column"}


def _load(path: str, normalize: bool = False):
    fmt = _SUFFIX_FORMATS.get(Path(path).suffix.lower(), "lines")
    return load(path, fmt, normalize=normalize)


def _load_pair(args, normalize: bool = False):
    return pair(_load(args.p, normalize), _load(args.q, normalize))


def _metadata(pr, **extra) -> dict:
    meta = {"r": pr.r, "R": pr.R, "n": pr.n} if pr is not None else {}
    meta.update(extra)
    meta["version"] = __version__
    return meta


def agrees(x: float | None, y: float | None, rtol: float = 1e-8) -> bool:
    """Relative agreement; two absent values agree."""
    if x is None or y is None:
        return x is None and y is None
    return abs(x - y) <= rtol * max(abs(x), abs(y))


def cmd_compute(args) -> tuple[Report, int]:
    pr = _load_pair(args, args.normalize)
    names = args.measures.split(",") if args.measures else [m.value for m in Measure]
    measures = [Measure.parse(n.strip()) for n in names if n.strip()]
    rep = Report(measures={m.value: evaluate(m, pr) for m in measures},
                 metadata=_metadata(pr))
    return rep, EXIT_OK


def cmd_bounds(args) -> tuple[Report, int]:
    measure = Measure.parse(args.measure)
    gen = generator(measure)
    pr = _load_pair(args)
    generic = dragomir_bounds(gen, pr)
    rep = Report(measures={measure.value: generic.value},
                 bounds={measure.value: generic.as_dict()},
                 checks=generic.checks(f"bounds.{measure.value}."),
                 metadata=_metadata(pr))
    try:
        closed = closed_bounds(measure, pr)
    except NoClosedForm:
        rep.details["closed_form"] = None
    else:
        rep.bounds[measure.value + ":closed"] = closed.as_dict()
        rep.details["agreement"] = {
            k: agrees(getattr(generic, k), getattr(closed, k)) for k in ("value", "e", "a", "b")
        }
    return rep, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args) -> tuple[Report, int]:
    pr = _load_pair(args)
    result = run_suite(pr)
    rep = Report(
        measures={m.value: v for m, v in evaluate_all(pr).items()},
        bounds={m.value: dragomir_bounds(generator(m), pr).as_dict() for m in BOUND_GENERATORS},
        checks=result.checks,
        metadata=_metadata(pr),
        details={"certificates": result.certificates or result.certificate_status},
    )
    return rep, EXIT_OK if rep.passed else EXIT_FAIL


def _parse_dims(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        dims = (int(lo), int(hi if sep else lo))
    except ValueError:
        raise BadDimension(f"--dims must look like LO..HI, got {text!r}") from None
    if dims[0] < 2 or dims[1] < dims[0]:
        raise BadDimension(f"need 2 <= LO <= HI, got {text!r}")
    return dims


def cmd_fuzz(args) -> tuple[Report, int]:
    if args.trials < 1:
        raise BadDimension(f"--trials must be >= 1, got {args.trials}")
    dims = _parse_dims(args.dims)
    if not 0 < args.floor < 1.0 / dims[1]:
        raise BadFloor(f"--floor must lie in (0, 1/{dims[1]}), got {args.floor!r}")
    worst = fuzz(args.trials, dims, args.seed, args.floor, workers=max(1, args.workers))
    rep = Report(
        checks=[w.check for w in worst.values()],
        metadata=_metadata(None, trials=args.trials, dims=list(dims), seed=args.seed,
                           floor=args.floor),
        details={name: {"trial": w.trial, "margin": w.check.margin, "count": w.count,
                        "violations": w.violations}
                 for name, w in worst.items()},
    )
    return rep, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_relate(args) -> tuple[Report, int]:
    rel = Relation.parse(args.relation)
    cc = cross_check(rel, args.r, args.R)
    rep = Report(
        checks=cc.checks,
        metadata=_metadata(None, relation=rel.label, r=args.r, R=args.R),
        details={
            "analytic": {"m": cc.analytic.m, "M": cc.analytic.M},
            "numeric": {"m": cc.numeric.m, "M": cc.numeric.M},
            "agree": cc.passed,
        },
    )
    return rep, EXIT_OK if rep.passed else EXIT_FAIL


def _finite(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divbounds",
        description="Divergence measures, f-divergence bounds and inequality checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_pair(p):
        p.add_argument("--p", required=True, help="file holding P (.json, .csv or one value per line)")
        p.add_argument("--q", required=True, help="file holding Q")
        return p

    p = with_pair(sub.add_parser("compute", help="evaluate divergence measures"))
    p.add_argument("--measures", help="comma-separated measure names (default: all)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--normalize", action="store_true", help="rescale inputs to sum to one")
    p.set_defaults(func=cmd_compute)

    p = with_pair(sub.add_parser("bounds", help="E/A/B bounds for one measure"))
    p.add_argument("--measure", required=True)
    p.set_defaults(func=cmd_bounds)

    p = with_pair(sub.add_parser("verify", help="run every check on one pair"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="run the check suite on random pairs")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--dims", default="2..50", help="dimension range LO..HI")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--floor", type=_finite, default=DEFAULT_FLOOR)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("relate", help="analytic vs numeric coefficients of a relation")
    p.add_argument("--relation", required=True)
    p.add_argument("--r", type=_finite, required=True)
    p.add_argument("--R", type=_finite, required=True)
    p.set_defaults(func=cmd_relate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        rep, code = args.func(args)
    except (DivergenceError, OSError) as exc:
        print(f"divbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "format", "json") == "csv":
        sys.stdout.write(rep.measures_csv())
    else:
        sys.stdout.write(rep.dumps())
    return code
