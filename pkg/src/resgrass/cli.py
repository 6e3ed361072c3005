"""Command-line front end.

Exit codes: 0 success, 1 property falsified, 2 bad input or configuration,
3 points on different orbits, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from . import io, lab
from .errors import InvalidInput, NotSameOrbit, NumericalFailure
from .grassmannian import solve_geodesic
from .unitary import unitary_distance, unitary_log_bv

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT, EXIT_ORBIT, EXIT_NUMERICAL = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(text, args):
    if args.out:
        io.write_text(text, args.out)
    else:
        sys.stdout.write(text)


def _require_json(args):
    if args.format != "json":
        raise InvalidInput(f"{args.command} only writes json")


def cmd_geodesic(args):
    _require_json(args)
    q0, q1 = io.load_projection(args.p), io.load_projection(args.q)
    sol = solve_geodesic(q0, q1, branch=args.branch)
    _emit(io.dumps(io.geodesic_to_obj(sol)), args)
    return EXIT_OK


def cmd_distance(args):
    objs = [io.read_json(args.a), io.read_json(args.b)]
    if all("rank" in o for o in objs):
        q0, q1 = (io.projection_from_obj(o) for o in objs)
        space, value = "grassmannian", solve_geodesic(q0, q1).norm_2
    elif any("rank" in o for o in objs):
        raise InvalidInput("cannot compare a projection with a unitary")
    else:
        u0, u1 = (io.matrix_from_obj(o) for o in objs)
        space, value = "unitary", unitary_distance(u0, u1)
    if args.format == "csv":
        _emit(f"space,distance\n{space},{value!r}\n", args)
    else:
        _emit(io.dumps({"space": space, "distance": value}), args)
    return EXIT_OK


def cmd_log_unitary(args):
    _require_json(args)
    if len(args.u) > 2:
        raise InvalidInput("log-unitary takes one or two matrix files")
    u1 = io.load_matrix(args.u[-1])
    u0 = io.load_matrix(args.u[0]) if len(args.u) == 2 else np.eye(u1.shape[0])
    _emit(io.dumps(io.matrix_to_obj(unitary_log_bv(u0, u1))), args)
    return EXIT_OK


def cmd_random_pair(args):
    _require_json(args)
    q0, q1 = lab.random_projection_pair(args.dim, args.rank, args.mode, args.seed)
    if args.paths:
        if len(args.paths) != 2:
            raise InvalidInput("random-pair takes zero or two output paths")
        io.save_projection(q0, args.paths[0])
        io.save_projection(q1, args.paths[1])
    else:
        _emit(io.dumps({"q0": io.projection_to_obj(q0), "q1": io.projection_to_obj(q1)}), args)
    return EXIT_OK


def _write_reports(reports, args):
    if args.format == "csv":
        _emit(io.reports_to_csv(reports), args)
    else:
        _emit(io.dumps([dataclasses.asdict(r) for r in reports]), args)


def _summary(min_margin, n):
    print(f"min_margin={float(min_margin)!r} trials={n}")


def _finish_minimality(reports, args):
    _write_reports(reports, args)
    _summary(min(r.margin for r in reports), args.trials)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FALSIFIED


def _check_ks(ks):
    for k in ks:
        if not (2 <= k < np.inf):
            raise InvalidInput(f"minimality commands need 2 <= k < inf, got {k}")


def cmd_verify_minimality(args):
    _check_ks(args.k)
    reports = lab.minimality_experiment(
        args.dim,
        args.rank,
        k=args.k,
        trials=args.trials,
        competitors_per_trial=args.competitors,
        m=args.m,
        amplitude=args.amplitude,
        seed=args.seed,
        mode=args.mode,
    )
    return _finish_minimality(reports, args)


def cmd_verify_unitary_minimality(args):
    _check_ks(args.k)
    reports = lab.unitary_minimality_experiment(
        args.dim,
        trials=args.trials,
        competitors_per_trial=args.competitors,
        m=args.m,
        amplitude=args.amplitude,
        seed=args.seed,
        k=args.k,
        direction=args.direction,
    )
    return _finish_minimality(reports, args)


def cmd_verify_inequalities(args):
    for r in args.r:
        if not r >= 1:
            raise InvalidInput(f"inequality commands need r >= 1, got {r}")
    report = lab.inequality_experiment(args.trials, seed=args.seed, rs=args.r, max_dim=args.max_dim)
    records = [dataclasses.asdict(rec) for rec in report.records]
    if args.format == "csv":
        fields = list(records[0])
        lines = [",".join(fields)] + [",".join(repr(rec[f]) for f in fields) for rec in records]
        _emit("\n".join(lines) + "\n", args)
    else:
        _emit(io.dumps(records), args)
    _summary(report.min_slack, args.trials)
    return EXIT_OK if report.passed() else EXIT_FALSIFIED


def cmd_verify_sandwich(args):
    report = lab.metric_sandwich_experiment(args.dim, args.trials, seed=args.seed)
    rows = zip(report.distances, report.chords, report.lower_slack, report.upper_slack)
    if args.format == "csv":
        lines = ["distance,chord,lower_slack,upper_slack"]
        lines += [",".join(repr(float(v)) for v in row) for row in rows]
        _emit("\n".join(lines) + "\n", args)
    else:
        keys = ("distance", "chord", "lower_slack", "upper_slack")
        _emit(io.dumps({"constant": report.constant, "pairs": [dict(zip(keys, row)) for row in rows]}), args)
    _summary(float(min(report.lower_slack.min(), report.upper_slack.min())), args.trials)
    return EXIT_OK if report.passed() else EXIT_FALSIFIED


def _common(p, fmt="json"):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default=fmt)


def _experiment_args(p, m=512):
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--competitors", type=int, default=20)
    p.add_argument("--m", type=int, default=m)
    p.add_argument("--amplitude", type=float, default=0.3)
    p.add_argument("--k", type=float, nargs="+", default=[2.0])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="resgrass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("geodesic", help="minimal geodesic between two projections")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--branch", choices=("A", "B"), default=None)
    _common(p)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("distance", help="2-norm geodesic distance (projections or unitaries)")
    p.add_argument("a")
    p.add_argument("b")
    _common(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("log-unitary", help="minimal logarithm of u, or of u0* u1")
    p.add_argument("u", nargs="+", metavar="U")
    _common(p)
    p.set_defaults(func=cmd_log_unitary)

    p = sub.add_parser("verify-minimality", help="projection geodesics against competitors")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--mode", choices=("generic", "boundary"), default="generic")
    _experiment_args(p)
    _common(p, "csv")
    p.set_defaults(func=cmd_verify_minimality)

    p = sub.add_parser("verify-unitary-minimality", help="unitary geodesics against competitors")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--direction", choices=("random", "rank-one"), default="random")
    _experiment_args(p)
    _common(p, "csv")
    p.set_defaults(func=cmd_verify_unitary_minimality)

    p = sub.add_parser("verify-inequalities", help="sweep the Jensen-type trace inequalities")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--r", type=float, nargs="+", default=[1.5, 2.0, 3.0])
    p.add_argument("--max-dim", type=int, default=12)
    _common(p, "csv")
    p.set_defaults(func=cmd_verify_inequalities)

    p = sub.add_parser("verify-sandwich", help="chord versus geodesic distance for unitaries")
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--trials", type=int, default=100)
    _common(p, "csv")
    p.set_defaults(func=cmd_verify_sandwich)

    p = sub.add_parser("random-pair", help="write a random pair of equal-rank projections")
    p.add_argument("paths", nargs="*", metavar="PATH", help="q0 and q1 output files")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--mode", choices=("generic", "boundary"), default="generic")
    _common(p)
    p.set_defaults(func=cmd_random_pair)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotSameOrbit as exc:
        print(f"resgrass: {exc}", file=sys.stderr)
        return EXIT_ORBIT
    except InvalidInput as exc:
        print(f"resgrass: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalFailure as exc:
        print(f"resgrass: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"resgrass: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
