#!/usr/bin/env python3
"""
Planar maps - command line entry point
Exact two- and three-point functions, brute-force oracles, verification suites and scaling tables
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from dotenv import load_dotenv

import settings
from bijection_lab import verify_pointed_bijections
from golden_checks import GOLDEN_CHECKS, run_golden_checks
from identities import identity_registry, verify_all
from map_formulas import DistanceSpec, Route, three_point, two_point
from map_oracle import PointKind, compare_with_series, count_pointed, sum_rule
from parametrization import Family, Mode, solve
from power_series import TruncatedSeries
import scaling_limit

logger = logging.getLogger("planar_maps")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

Payload = Union[Dict[str, Any], pd.DataFrame]


class UsageError(ValueError):
    """Flag combination rejected before any computation starts."""


def _common_options(suppress: bool = False) -> argparse.ArgumentParser:
    # Subcommand copies must not overwrite values given before the subcommand.
    def default(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=default(None), help="write the result to this path instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=default("json"))
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"),
        default=default(None),
    )
    common.add_argument(
        "--threads", type=int, default=default(1), help="accepted for compatibility; runs sequentially"
    )
    return common


def _family_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=[f.value for f in Family], default=Family.GENERAL.value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planar-maps", description=__doc__, parents=[_common_options()])
    common = _common_options(suppress=True)
    parser.add_argument(
        "--seed-paper-checks",
        action="store_true",
        help="run the golden checks scoreboard (same as the golden-checks command)",
    )
    sub = parser.add_subparsers(dest="command")

    two = sub.add_parser("two-point", parents=[common], help="exact two-point series G_d")
    _family_option(two)
    two.add_argument("--d", type=int, required=True)
    two.add_argument("--ring", choices=("q", "qz"), default="q")
    two.add_argument("--order", type=int)
    two.add_argument("--route", choices=[r.value for r in Route], default=Route.DIRECT.value)
    two.add_argument("--split", type=int, nargs=2, metavar=("S", "T"))

    three = sub.add_parser("three-point", parents=[common], help="exact three-point series")
    _family_option(three)
    three.add_argument("--d", type=int, nargs=3, required=True, metavar=("D12", "D13", "D23"))
    three.add_argument("--ring", choices=("q", "qz"), default="q")
    three.add_argument("--order", type=int)

    series = sub.add_parser("series", parents=[common], help="parametrization series x or alpha")
    _family_option(series)
    series.add_argument("--what", choices=("x", "alpha"), default="x")
    series.add_argument("--ring", choices=("q", "qz"), default="q")
    series.add_argument("--order", type=int)

    oracle = sub.add_parser("oracle", parents=[common], help="brute-force pointed map counts")
    oracle.add_argument("action", nargs="?", choices=("count", "compare"), default="count")
    oracle.add_argument("--edges", type=int, required=True)
    oracle.add_argument("--kind", choices=[k.value for k in PointKind], default=PointKind.BIPOINTED.value)
    oracle.add_argument("--bipartite", action="store_true")

    identities = sub.add_parser("verify-identities", parents=[common], help="coefficient-exact identity suite")
    identities.add_argument("--order", type=int)
    identities.add_argument("--bivariate-order", type=int)
    identities.add_argument("--limit", type=int)
    identities.add_argument("--bivariate-limit", type=int)
    identities.add_argument("--id", dest="ids", action="append", metavar="NAME")

    bijections = sub.add_parser("verify-bijections", parents=[common], help="exhaustive bijection checks")
    bijections.add_argument("--faces", type=int, default=None)

    scaling = sub.add_parser("scaling", parents=[common], help="critical line and continuum limits")
    scaling.add_argument("what", choices=("critical", "two-point", "three-point", "observables", "converge"))
    _family_option(scaling)
    scaling.add_argument("--z", type=float, nargs="+", default=[1.0])
    scaling.add_argument("--D", type=float)
    scaling.add_argument("--D12", type=float)
    scaling.add_argument("--D13", type=float)
    scaling.add_argument("--D23", type=float)
    scaling.add_argument("--eps", type=float, nargs="+", default=[0.05, 0.02, 0.01])
    scaling.add_argument("--three-point", action="store_true", help="converge the three-point function")
    scaling.add_argument("--n", type=int, help="also report the large-n map count asymptotics at n edges")

    golden = sub.add_parser("golden-checks", parents=[common], help="scoreboard of published values")
    golden.add_argument("--check", dest="checks", action="append", choices=sorted(GOLDEN_CHECKS))
    return parser


# -- helpers ---------------------------------------------------------------


def _mode(family: str, ring: str) -> Mode:
    return Mode.of(Family(family), bivariate=ring == "qz")


def _order(args: argparse.Namespace, bivariate: bool) -> int:
    if args.order is not None:
        if args.order < 0:
            raise UsageError(f"order must be non-negative, got {args.order}")
        return args.order
    return settings.bivariate_order() if bivariate else settings.series_order()


def _series_payload(series: TruncatedSeries, **meta: Any) -> Dict[str, Any]:
    return {**meta, "series": series.to_json()}


def _series_frame(series: TruncatedSeries) -> pd.DataFrame:
    payload = series.to_json()
    return pd.DataFrame(
        {"g_power": range(len(payload["coeffs"])), "coefficient": [json.dumps(c) for c in payload["coeffs"]]}
    )


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _render(payload: Payload, fmt: str) -> str:
    if isinstance(payload, pd.DataFrame):
        if fmt == "csv":
            return payload.to_csv(index=False)
        payload = {"rows": payload.to_dict(orient="records")}
    elif fmt == "csv":
        if "series" in payload:
            return _series_frame(TruncatedSeries.from_json(payload["series"])).to_csv(index=False)
        return pd.json_normalize(payload).to_csv(index=False)
    return json.dumps(payload, indent=2, sort_keys=True, default=_json_default) + "\n"


def _emit(payload: Payload, args: argparse.Namespace) -> None:
    text = _render(payload, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------


def _two_point(args: argparse.Namespace) -> int:
    mode = _mode(args.family, args.ring)
    spec = DistanceSpec.two(args.d)
    route = Route(args.route)
    if route is Route.TYPE_B and mode.family is Family.BIPARTITE:
        raise UsageError("type B route does not exist for bipartite maps")
    params = solve(mode, _order(args, mode.bivariate))
    split = tuple(args.split) if args.split else None
    series = two_point(spec, params, route, split=split)
    _emit(_series_payload(series, family=args.family, ring=args.ring, distances=[args.d], route=route.value), args)
    return EXIT_OK


def _three_point(args: argparse.Namespace) -> int:
    mode = _mode(args.family, args.ring)
    spec = DistanceSpec.three(*args.d, bipartite=mode.family is Family.BIPARTITE)
    params = solve(mode, _order(args, mode.bivariate))
    series = three_point(spec, params)
    _emit(
        _series_payload(series, family=args.family, ring=args.ring, distances=list(spec.distances), parity=spec.parity),
        args,
    )
    return EXIT_OK


def _series(args: argparse.Namespace) -> int:
    mode = _mode(args.family, args.ring)
    if args.what == "alpha" and not mode.bivariate:
        raise UsageError("alpha is only defined in the bivariate ring (use --ring qz)")
    params = solve(mode, _order(args, mode.bivariate))
    series = params.x if args.what == "x" else params.alpha
    _emit(_series_payload(series, family=args.family, ring=args.ring, what=args.what), args)
    return EXIT_OK


def _oracle(args: argparse.Namespace) -> int:
    bound = settings.max_edges()
    if not 1 <= args.edges <= bound:
        raise UsageError(f"--edges must be between 1 and {bound} (PLANAR_MAPS_MAX_EDGES)")
    if args.action == "count":
        table = count_pointed(args.edges, args.kind, bipartite=args.bipartite)
        _emit(table.to_json(), args)
        return EXIT_OK

    families = [Family.BIPARTITE] if args.bipartite else [Family.GENERAL, Family.BIPARTITE]
    runs: List[Dict[str, Any]] = []
    for family in families:
        for n in range(1, args.edges + 1):
            for kind in PointKind:
                mismatches = compare_with_series(n, kind, family)
                runs.append(
                    {
                        "family": family.value,
                        "n": n,
                        "kind": kind.value,
                        "mismatches": [m.to_dict() for m in mismatches],
                    }
                )
            rule = sum_rule(n, family)
            runs.append({"family": family.value, "n": n, "kind": "sum-rule", "holds": rule.holds})
    failed = [run for run in runs if run.get("mismatches") or run.get("holds") is False]
    _emit({"status": "fail" if failed else "pass", "runs": runs}, args)
    return EXIT_FAILED if failed else EXIT_OK


def _verify_identities(args: argparse.Namespace) -> int:
    if args.ids:
        for name in args.ids:
            identity_registry.get(name)
    reports = verify_all(
        args.order,
        bivariate_order=args.bivariate_order,
        limit=args.limit,
        bivariate_limit=args.bivariate_limit,
        names=args.ids,
    )
    failed = [report.identity for report in reports if not report.passed]
    _emit(
        {
            "status": "fail" if failed else "pass",
            "failed": failed,
            "reports": [report.to_dict() for report in reports],
        },
        args,
    )
    return EXIT_FAILED if failed else EXIT_OK


def _verify_bijections(args: argparse.Namespace) -> int:
    bound = settings.max_faces()
    faces = bound if args.faces is None else args.faces
    if not 1 <= faces <= bound:
        raise UsageError(f"--faces must be between 1 and {bound} (PLANAR_MAPS_MAX_FACES)")
    report = verify_pointed_bijections(faces)
    _emit(report.to_dict(), args)
    return EXIT_OK if report.passed else EXIT_FAILED


def _scaling_distances(args: argparse.Namespace) -> Sequence[float]:
    triple = (args.D12, args.D13, args.D23)
    if any(value is None for value in triple):
        if args.D is None:
            raise UsageError("three-point scaling needs --D12 --D13 --D23 (or --D for an equilateral triple)")
        return (args.D, args.D, args.D)
    return triple


def _scaling(args: argparse.Namespace) -> int:
    family = Family(args.family)
    z_values = args.z
    if args.what == "critical":
        _emit(scaling_limit.critical_line(family, z_values), args)
        return EXIT_OK
    if len(z_values) != 1:
        raise UsageError(f"scaling {args.what} takes a single --z value")
    z = z_values[0]

    if args.what == "observables":
        payload = scaling_limit.observables(family, z).to_dict()
        if args.n is not None:
            payload["asymptotic_counts"] = scaling_limit.asymptotic_counts(family, z, args.n)
        _emit(payload, args)
    elif args.what == "two-point":
        if args.D is None:
            raise UsageError("scaling two-point needs --D")
        value = scaling_limit.continuous_two_point(family, args.D, z)
        _emit({"family": family.value, "z": z, "D": args.D, "value": value}, args)
    elif args.what == "three-point":
        distances = _scaling_distances(args)
        point = scaling_limit.ContinuumPoint.from_distances(*distances)
        value = scaling_limit.continuous_three_point(family, *distances, z)
        check = scaling_limit.three_point_cross_check(family, *distances, z)
        _emit(
            {
                "family": family.value,
                "z": z,
                "D": list(distances),
                "STU": [point.S, point.T, point.U],
                "value": value,
                "cross_check": check,
            },
            args,
        )
    else:
        if args.three_point:
            D: Union[float, Sequence[float]] = _scaling_distances(args)
        else:
            if args.D is None:
                raise UsageError("scaling converge needs --D")
            D = args.D
        _emit(scaling_limit.convergence_table(family, D, z, args.eps, three_point=args.three_point), args)
    return EXIT_OK


def _golden(args: argparse.Namespace) -> int:
    results = run_golden_checks(getattr(args, "checks", None))
    frame = pd.DataFrame([result.to_dict() for result in results], columns=["name", "passed", "detail"])
    _emit(frame, args)
    passed = int(frame["passed"].sum())
    sys.stderr.write(f"golden checks: {passed}/{len(frame)} passed\n")
    return EXIT_OK if passed == len(frame) else EXIT_FAILED


JSON_ONLY = {"oracle", "verify-identities", "verify-bijections"}

COMMANDS = {
    "two-point": _two_point,
    "three-point": _three_point,
    "series": _series,
    "oracle": _oracle,
    "verify-identities": _verify_identities,
    "verify-bijections": _verify_bijections,
    "scaling": _scaling,
    "golden-checks": _golden,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse *argv*, run the command and return the process exit code."""

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    logging.basicConfig(
        level=args.log_level or settings.log_level(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if args.threads < 1:
        sys.stderr.write("Error: --threads must be positive\n")
        return EXIT_USAGE
    if args.threads > 1:
        logger.debug("threads=%s requested; computations run sequentially", args.threads)

    command = "golden-checks" if args.seed_paper_checks else args.command
    if command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.format == "csv" and command in JSON_ONLY:
        sys.stderr.write(f"Error: csv output is not available for {command}\n")
        return EXIT_USAGE
    try:
        return COMMANDS[command](args)
    except (ValueError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"Error: {message}\n")
        return EXIT_USAGE
    except scaling_limit.RootFindingError as exc:
        sys.stderr.write(f"Error: {exc}\n")
        return EXIT_FAILED


def main() -> None:
    """Console entry point; reads a .env file before dispatching."""
    load_dotenv()
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
