"""Command line front end.

Subcommands: validate, check, invariant, markov, selftest.  Algebra
arguments are JSON files; a bare name (sl2, so3, heisenberg3, nambu4,
abelian1, abelian2) falls back to the bundled documents.  Exit codes:
0 success / all checks pass, 1 check failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path

from .algebra import (
    AlgebraError,
    AlgebraSpec,
    ValidationReport,
    builtin_algebra,
    load_algebra,
    load_algebra_file,
    validate_algebra,
)
from .braiding import check_braiding, make_braiding_kit
from .braids import BraidSyntaxError, FramedBraidWord, parse_braid_word
from .fields import FieldError
from .invariant import (
    DimensionCapError,
    check_framed_braid_relations,
    markov_report,
    trace_invariant,
)
from .tsd import check_tsd_properties, make_tsd_pair

CHECK_PROPERTIES = (
    "jacobi",
    "filippov",
    "tsd",
    "coalgebra",
    "reversibility",
    "mixed",
    "ybe",
    "slide",
    "fb-relations",
    "all",
)

_TSD_PROPERTY_MAP = {
    "tsd": ("tsd", "tsd-tilde"),
    "coalgebra": ("coalgebra-morphism",),
    "reversibility": ("reversibility",),
    "mixed": ("mixed",),
}


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _resolve_algebra(path_text: str) -> AlgebraSpec:
    path = Path(path_text)
    if path.exists():
        return load_algebra_file(path)
    name = path.name if path.suffix else f"{path.name}.json"
    bundled = resources.files("tsdlink").joinpath("algebras").joinpath(name)
    if bundled.is_file():
        return load_algebra(json.loads(bundled.read_text()))
    raise CliError(f"cannot read algebra {path_text!r}: no such file or bundled algebra")


def _parse_word(args) -> FramedBraidWord:
    word = parse_braid_word(args.word, args.strands)
    if args.framings:
        try:
            override = tuple(int(f) for f in args.framings.split(","))
        except ValueError:
            raise CliError(f"bad --framings {args.framings!r}: need comma-separated integers")
        if len(override) != args.strands:
            raise CliError(f"--framings needs {args.strands} entries, got {len(override)}")
        word = FramedBraidWord(word.strands, override, word.letters)
    return word


def _failure_payload(report: ValidationReport) -> list[dict]:
    return [
        {"check": r.name, "witness": repr(r.witness), "residual": repr(r.residual)}
        for r in report.failures
    ]


def _emit(args, command, passed, lines, failures, value, started, out) -> int:
    timing_ms = int((time.monotonic() - started) * 1000)
    if args.format == "json":
        payload = {"command": command, "passed": passed, "failures": failures, "timing_ms": timing_ms}
        if value is not None:
            payload["value"] = value
        print(json.dumps(payload), file=out)
    else:
        for line in lines:
            print(line, file=out)
        if value is not None:
            print(f"value: {value}", file=out)
    return 0 if passed else 1


def _cmd_validate(args, out) -> int:
    started = time.monotonic()
    spec = _resolve_algebra(args.algebra)
    report = validate_algebra(spec)
    return _emit(args, "validate", report.passed, report.lines(), _failure_payload(report), None, started, out)


def _cmd_check(args, out) -> int:
    started = time.monotonic()
    spec = _resolve_algebra(args.algebra)
    prop = args.property
    report = ValidationReport()

    if prop in ("jacobi", "filippov", "all"):
        if prop == "jacobi" and spec.arity != 2:
            raise CliError("jacobi applies to arity-2 algebras")
        if prop == "filippov" and spec.arity != 3:
            raise CliError("filippov applies to arity-3 algebras")
        for r in validate_algebra(spec).results:
            report.add(r)

    tsd_checks: set[str] = set()
    for key, names in _TSD_PROPERTY_MAP.items():
        if prop in (key, "all"):
            tsd_checks.update(names)
    if prop == "all" and spec.arity == 2:
        tsd_checks.add("q-self-distributive")
    if tsd_checks:
        pair = make_tsd_pair(spec)
        for r in check_tsd_properties(pair, sorted(tsd_checks)).results:
            report.add(r)

    if prop in ("ybe", "slide", "fb-relations", "all"):
        kit = make_braiding_kit(spec)
        if prop in ("ybe", "slide", "all"):
            braiding_report = check_braiding(kit)
            keep = {
                "ybe": ("ybe", "braiding-invertible", "twist-invertible", "far-commutation"),
                "slide": ("slide-under", "slide-over"),
            }
            for r in braiding_report.results:
                if prop == "all" or r.name in keep[prop]:
                    report.add(r)
        if prop in ("fb-relations", "all"):
            for r in check_framed_braid_relations(kit).results:
                report.add(r)

    return _emit(args, "check", report.passed, report.lines(), _failure_payload(report), None, started, out)


def _cmd_invariant(args, out) -> int:
    started = time.monotonic()
    spec = _resolve_algebra(args.algebra)
    word = _parse_word(args)
    kit = make_braiding_kit(spec)
    result = trace_invariant(kit, word, cap=args.cap)
    lines = [
        f"algebra: {result.algebra}",
        f"word: {result.word.word_text() or '(empty)'}",
        f"framings: {','.join(map(str, result.word.framings))}",
        f"operator dimension: {result.operator_dim}",
    ]
    return _emit(args, "invariant", True, lines, [], result.value_text, started, out)


def _cmd_markov(args, out) -> int:
    started = time.monotonic()
    spec = _resolve_algebra(args.algebra)
    word = _parse_word(args)
    kit = make_braiding_kit(spec)
    report = markov_report(
        kit,
        word,
        trials=args.trials,
        seed=args.seed,
        moves=args.moves,
        stabilize=args.stabilize,
        cap=args.cap,
    )
    failures = _failure_payload(report.relations)
    if report.stabilize == "off" and not report.all_equal:
        failures.extend(
            {"check": "markov-trial", "witness": f"seed {t.seed}", "residual": t.value_text}
            for t in report.trials
            if not t.equal
        )
    return _emit(args, "markov", report.passed, report.lines(), failures, report.base.value_text, started, out)


def _cmd_selftest(args, out) -> int:
    started = time.monotonic()
    failures: list[dict] = []
    lines: list[str] = []

    def run(label: str, report: ValidationReport) -> None:
        status = "PASS" if report.passed else "FAIL"
        lines.append(f"{label}: {status}")
        for r in report.failures:
            lines.append(f"  {r}")
        failures.extend(_failure_payload(report))

    bundled = [
        builtin_algebra("abelian", dim=1),
        builtin_algebra("abelian", dim=2),
        builtin_algebra("heisenberg3"),
        builtin_algebra("so3"),
        builtin_algebra("sl2"),
        builtin_algebra("nambu4"),
    ]
    for spec in bundled:
        run(f"validate {spec.name}", validate_algebra(spec))
    for spec in bundled:
        pair = make_tsd_pair(spec)
        run(f"tsd properties {spec.name}", check_tsd_properties(pair))
    for spec in bundled:
        kit = make_braiding_kit(spec)
        run(f"braiding {spec.name}", check_braiding(kit))
        run(f"framed braid relations {spec.name}", check_framed_braid_relations(kit))
    kit = make_braiding_kit(builtin_algebra("sl2"))
    report = markov_report(kit, parse_braid_word("s1 s1 s1", 2), trials=5, seed=7, moves=4)
    lines.append(f"markov sl2 trefoil: {report.verdict()}")
    if not report.all_equal:
        failures.append({"check": "markov", "witness": "sl2 trefoil", "residual": "trace drift"})
    passed = not failures
    return _emit(args, "selftest", passed, lines, failures, None, started, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsdlink",
        description="Exact self-distributive braiding operators and framed link invariants from Lie and 3-Lie algebras.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the defining identity of an algebra file")
    p.add_argument("algebra")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("check", help="verify operator identities for an algebra")
    p.add_argument("algebra")
    p.add_argument("--property", choices=CHECK_PROPERTIES, default="all")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("invariant", help="trace invariant of a framed braid word")
    p.add_argument("algebra")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--framings", default="")
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(func=_cmd_invariant)

    p = sub.add_parser("markov", help="seeded rewriting trials with trace comparison")
    p.add_argument("algebra")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--framings", default="")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--moves", type=int, default=6)
    p.add_argument("--stabilize", choices=("off", "plain", "compensated"), default="off")
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(func=_cmd_markov)

    p = sub.add_parser("selftest", help="run the bundled-algebra verification sweep")
    p.set_defaults(func=_cmd_selftest)

    return parser


def run_cli(argv: list[str], out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args, out)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (AlgebraError, BraidSyntaxError, FieldError, DimensionCapError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
