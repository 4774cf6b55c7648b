"""Command line interface: ``qsocle {analyze,sweep,closure,semigroup,verify}``.

Exit codes: 0 all cases agree, 1 a predictor/oracle disagreement, 2 usage or
IO error, 3 a cap was hit and ``--strict`` was given.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .box import BoxCapExceeded
from .closure import closure_diagonal, closure_general, in_closure_diagonal, in_closure_general
from .harness import DescriptorError, RunReport, SweepSpec, render, run_case, run_sweep
from .monomial import MonomialIdeal

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "csv", "json-lines"), default="text")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.add_argument("--strict", action="store_true", help="exit 3 when any case hits a cap")
    p.add_argument("--no-timestamp", action="store_true", help="omit the run timestamp")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsocle", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qsocle {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one case")
    p.add_argument("--model", choices=("regular", "predictor-only"), default="regular")
    p.add_argument("--a", type=int, nargs="+", help="exponents a_1 ... a_d")
    p.add_argument("--q", type=int)
    p.add_argument("--gm-a-invariant", type=int, help="a-invariant of the tangent cone")
    p.add_argument("--descriptor", type=Path, help="JSON case descriptor (overrides flags)")
    p.add_argument("--box-cap", type=int)
    _add_output(p)

    p = sub.add_parser("semigroup", help="analyze one k[[t^a, t^b]] case")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="Q = (t^{an})")
    p.add_argument("--q", type=int, required=True)
    _add_output(p)

    p = sub.add_parser("sweep", help="run a parameter sweep")
    p.add_argument("--model", choices=("regular", "semigroup", "predictor-only"), default="regular")
    p.add_argument("--spec", type=Path, help="JSON sweep spec (overrides range flags)")
    p.add_argument("--d", type=int, nargs="+", default=[2, 3])
    p.add_argument("--a", type=int, nargs=2, metavar=("LO", "HI"), help="exponent range")
    p.add_argument("--q", type=int, nargs=2, metavar=("LO", "HI"), help="q range (default 1..rho)")
    p.add_argument("--b", type=int, nargs=2, metavar=("LO", "HI"), default=[3, 13])
    p.add_argument("--n", type=int, nargs=2, metavar=("LO", "HI"), default=[1, 4])
    p.add_argument("--gm-a-invariant", type=int)
    p.add_argument("--box-cap", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--time-budget", type=float, help="seconds; later cases are skipped")
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("closure", help="integral closure membership and generators")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--a", type=int, nargs="+", help="diagonal ideal exponents")
    group.add_argument("--ideal", help="generators as '2,0;1,1;0,3'")
    p.add_argument("--point", type=int, nargs="+", help="query one exponent vector")
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("verify", help="run the built-in acceptance suites")
    p.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _finish(run: RunReport, args) -> int:
    _emit(render(run, args.format), args.out)
    if not run.passed:
        return EXIT_DISAGREE
    if args.strict and run.summary["skipped"]:
        return EXIT_CAP
    return EXIT_OK


def _stamp(args) -> str | None:
    if args.no_timestamp:
        return None
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def cmd_analyze(args) -> int:
    if args.descriptor is not None:
        desc = json.loads(args.descriptor.read_text())
    else:
        if args.a is None or args.q is None:
            raise DescriptorError("analyze needs --a and --q, or --descriptor")
        desc = {"model": args.model, "a": args.a, "q": args.q}
        if args.gm_a_invariant is not None:
            desc["gm_a_invariant"] = args.gm_a_invariant
    report = run_case(desc, box_cap=args.box_cap)
    return _finish(RunReport([report], timestamp=_stamp(args)), args)


def cmd_semigroup(args) -> int:
    report = run_case({"model": "semigroup", "a": args.a, "b": args.b, "n": args.n, "q": args.q})
    return _finish(RunReport([report], timestamp=_stamp(args)), args)


def cmd_sweep(args) -> int:
    if args.spec is not None:
        spec = SweepSpec.from_mapping(json.loads(args.spec.read_text()))
    else:
        spec = SweepSpec(
            model=args.model,
            d=tuple(args.d),
            a_range=None if args.a is None else tuple(args.a),
            q_range=(1, None) if args.q is None else tuple(args.q),
            b_range=tuple(args.b),
            n_range=tuple(args.n),
            gm_a_invariant=args.gm_a_invariant,
            box_cap=args.box_cap,
            n_max=args.n_max,
            time_budget=args.time_budget,
        )
    run = run_sweep(spec, workers=args.workers, timestamp=not args.no_timestamp)
    return _finish(run, args)


def _parse_ideal(text: str) -> MonomialIdeal:
    gens = [tuple(int(c) for c in part.split(",")) for part in text.split(";") if part.strip()]
    if not gens:
        raise DescriptorError("--ideal needs at least one generator")
    return MonomialIdeal(gens)


def cmd_closure(args) -> int:
    if args.a is not None:
        dim, member = len(args.a), (lambda p: in_closure_diagonal(args.a, p))
        closure = lambda: closure_diagonal(args.a)  # noqa: E731
    else:
        J = _parse_ideal(args.ideal)
        dim, member = J.dim, (lambda p: in_closure_general(J, p))
        closure = lambda: closure_general(J)  # noqa: E731
    if args.point is not None:
        if len(args.point) != dim:
            raise DescriptorError(f"--point needs {dim} coordinates")
        result = {"point": args.point, "in_closure": member(args.point)}
    else:
        result = {"generators": [list(g) for g in closure().generators]}
    if args.format == "json-lines":
        text = json.dumps(result, sort_keys=True) + "\n"
    elif "point" in result:
        text = f"{tuple(args.point)} in closure: {result['in_closure']}\n"
    else:
        text = "closure generators: " + " ".join(str(tuple(g)) for g in result["generators"]) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import acceptance

    lines, ok = [], True
    numbers = args.only or [c[0] for c in acceptance.CRITERIA]
    for number in numbers:
        res = acceptance.run_criterion(number, workers=args.workers)
        ok &= res.ok
        lines.append(res.line())
        if args.out is None:
            print(res.line(), flush=True)
    if args.out is not None:
        args.out.write_text("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_DISAGREE


COMMANDS = {
    "analyze": cmd_analyze,
    "semigroup": cmd_semigroup,
    "sweep": cmd_sweep,
    "closure": cmd_closure,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BoxCapExceeded as exc:
        print(f"qsocle: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError, OSError) as exc:
        print(f"qsocle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
