"""Command-line front end: validate | run | fixture.

Exit codes: 0 all checks pass, 1 a check failed, 2 validation or parse
error, 3 internal numerical inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import numeric
from .errors import (
    DegenerateSample,
    NumericalInconsistency,
    ParseError,
    SkewGroupError,
    UnknownFixture,
)
from .fixtures import FIXTURE_NAMES, fixture
from .jobs import instance_to_job, load_job
from .runner import EXIT_NUMERICAL, EXIT_VALIDATION, run_job


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewgroup",
        description="Construct skew group algebras and machine-verify their "
                    "structural theorems on job-file instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="parse and validate a job file")
    p_validate.add_argument("path")
    p_validate.add_argument("--tol", type=float, default=None)

    p_run = sub.add_parser("run", help="run the tasks of a job file")
    p_run.add_argument("path")
    p_run.add_argument("--json", action="store_true", dest="as_json",
                       help="emit a deterministic machine-readable report")
    p_run.add_argument("--tol", type=float, default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--task", default=None, help="run only this task")
    p_run.add_argument("--quiet", action="store_true")

    p_fixture = sub.add_parser("fixture", help="emit a built-in instance as a job file")
    p_fixture.add_argument("name", choices=FIXTURE_NAMES)
    return parser


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cmd_validate(args) -> int:
    try:
        load_job(args.path, tol=args.tol)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SkewGroupError as exc:
        print(f"validation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"{args.path}: OK")
    return 0


def cmd_run(args) -> int:
    try:
        job = load_job(args.path, tol=args.tol, seed=args.seed)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SkewGroupError as exc:
        print(f"validation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        results, exit_code = run_job(job, task_filter=args.task)
    except (NumericalInconsistency, DegenerateSample) as exc:
        print(f"numerical inconsistency: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    if args.as_json:
        # Timing is intentionally excluded so reports are byte-identical for
        # identical (job, seed, tol).
        payload = {
            "job": job.raw,
            "tol": job.tol,
            "seed": job.seed,
            "passed": exit_code == 0,
            "tasks": [rep.to_dict() for _, rep, _ in results],
        }
        print(_dump(payload))
        return exit_code

    for rec, rep, elapsed in results:
        status = "PASS" if rep.passed else "FAIL"
        if not args.quiet:
            for c in rep.checks:
                mark = "ok" if c.passed else "FAIL"
                extra = ""
                if c.dims:
                    extra += " " + " ".join(f"{k}={v}" for k, v in sorted(c.dims.items()))
                if c.residual is not None:
                    extra += f" residual={c.residual:.3e}"
                if c.witness:
                    extra += f" [{c.witness}]"
                print(f"  {mark:4s} {rep.name}::{c.name}{extra}")
        print(f"[{status}] {rec['task']} ({elapsed:.3f}s)")
    print(f"overall: {'PASS' if exit_code == 0 else 'FAIL'}")
    return exit_code


def cmd_fixture(args) -> int:
    try:
        inst = fixture(args.name)
    except UnknownFixture as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VALIDATION
    print(_dump(instance_to_job(inst, tol=numeric.DEFAULT_TOL,
                                seed=numeric.DEFAULT_SEED)))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args)
    if args.command == "run":
        return cmd_run(args)
    return cmd_fixture(args)


if __name__ == "__main__":
    sys.exit(main())
