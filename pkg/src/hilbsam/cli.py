"""Command-line interface.

Two composite entry points plus one subcommand per library operation:

  hilbsam run FILE            execute the task blocks of a problem file
  hilbsam suite paper         run the built-in reproduction suite
  hilbsam gb|colength|hilb|coeffs|kernel-e1|ann-length|slice-e1|dseq|
          superficial|unmixed|reduction|sample-reductions|lambda|sally|
          sally-rank|kplusj  --file FILE ...   run one operation against
                              the named objects of a problem file

Polynomial grammar: integer literals, variable names, + - * ^ and
parentheses; ^ binds tightest, then *, then + and -; unary minus is
allowed; implicit multiplication is forbidden.

Exit codes: 0 success, 1 expectation failure, 2 input error, 3 resource
limit (including non-stabilizing colengths).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import HilbsamError, InputError, ResourceLimit, SamplingExhausted
from .problem import Report, load_problem, run_problem
from .suite import run_paper_suite

_OP_COMMANDS = [
    "gb",
    "colength",
    "sat-quotient-length",
    "hilb",
    "ideal-hilb",
    "coeffs",
    "ideal-coeffs",
    "kernel-e1",
    "ann-length",
    "slice-e1",
    "dseq",
    "superficial",
    "unmixed",
    "reduction",
    "sample-reductions",
    "sampled-coeffs",
    "lambda",
    "sally",
    "sally-rank",
    "kplusj",
]

_TASK_OPTIONS = {
    "ideal": str,
    "quotient": str,
    "params": str,
    "artinian": str,
    "a": str,
    "b": str,
    "f": str,
    "order": str,
    "e0": int,
    "count": int,
    "ncap": int,
    "expect": str,
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--field", default=None, help="coefficient field: fp:P or qq")
    parser.add_argument("--seed", type=int, default=None, help="seed for sampled reductions")
    parser.add_argument("--nmax", type=int, default=None, help="largest sampled power index")
    parser.add_argument("--cutoff", type=int, default=None, help="truncation cutoff cap")
    parser.add_argument("--threads", type=int, default=1, help="worker pool size for sampling fans")
    parser.add_argument("--json", action="store_true", help="emit the JSON report")
    parser.add_argument("--timings", action="store_true", help="include timings in the JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbsam",
        description="Exact Hilbert-Samuel functions and Hilbert coefficients of parameter ideals",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_run = sub.add_parser("run", help="execute the task blocks of a problem file")
    p_run.add_argument("file")
    _add_common(p_run)

    p_suite = sub.add_parser("suite", help="run a built-in suite")
    p_suite.add_argument("name", choices=["paper"])
    _add_common(p_suite)

    for cmd in _OP_COMMANDS:
        p = sub.add_parser(cmd, help=f"run the {cmd} operation against a problem file")
        p.add_argument("--file", required=True, help="problem file with the named objects")
        for opt, typ in _TASK_OPTIONS.items():
            p.add_argument(f"--{opt}", type=typ, default=None)
        p.add_argument("--elems", nargs="*", default=None, help="polynomials for dseq")
        p.add_argument("--named", nargs="*", default=None, help="named parameter ideals")
        p.add_argument("--all-orders", action="store_true")
        p.add_argument("--check-dseq", action="store_true")
        p.add_argument("--window", type=int, nargs=2, default=None)
        _add_common(p)
    return parser


def _emit(report: Report, args) -> int:
    if args.json:
        print(json.dumps(report.to_json(timings=args.timings), sort_keys=True, indent=2))
    else:
        print(report.render_table())
        summary = report.to_json()["summary"]
        print(
            f"\n{summary['total']} tasks, {summary['checked']} checked, "
            f"{summary['failed']} failed"
        )
    return 0 if report.ok else 1


def _single_task(args) -> dict:
    task: dict = {"command": args.subcommand, "name": args.subcommand}
    for opt in _TASK_OPTIONS:
        value = getattr(args, opt.replace("-", "_"), None)
        if value is not None:
            task[opt] = value
    if args.elems:
        task["elems"] = args.elems
    if args.named:
        task["named"] = args.named
    if args.all_orders:
        task["all_orders"] = True
    if args.check_dseq:
        task["check_dseq"] = True
    if args.window:
        task["window"] = args.window
    if args.nmax is not None:
        task["nmax"] = args.nmax
    if args.cutoff is not None:
        task["cutoff"] = args.cutoff
    if args.seed is not None:
        task["seed"] = args.seed
    if "expect" in task:
        task["expect"] = json.loads(task["expect"])
    return task


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.subcommand == "suite":
            report = run_paper_suite(
                field=args.field or "fp:32003", seed=args.seed or 0, threads=args.threads
            )
            return _emit(report, args)
        if args.subcommand == "run":
            with open(args.file, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            problem = load_problem(
                doc,
                field_override=args.field,
                seed=args.seed,
                cutoff=args.cutoff,
                threads=args.threads,
            )
            return _emit(run_problem(problem), args)
        # single-operation commands reuse the problem-file objects
        with open(args.file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        doc = dict(doc)
        doc["tasks"] = [_single_task(args)]
        problem = load_problem(
            doc,
            field_override=args.field,
            seed=args.seed,
            cutoff=args.cutoff,
            threads=args.threads,
        )
        return _emit(run_problem(problem), args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimit, SamplingExhausted) as exc:  # NotLocallyFinite, NotFinite, budgets
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except HilbsamError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
