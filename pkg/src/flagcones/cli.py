"""Command-line interface.

Subcommands:

* ``hn <config>``: filtration only.
* ``cones <config>``: cone generators and the verified pairing matrix.
* ``seshadri <config>``: full report including per-divisor Seshadri data.
* ``examples [name]``: run the built-in fixtures against frozen digests.
* ``selftest``: oracle equivalence and the randomized invariant suite.

Exit codes: 0 success, 2 parse/validation error, 3 violated mathematical
precondition, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bundles import DEFAULT_ORACLE_CAP
from .config import parse_config
from .errors import (
    EXIT_INTERNAL,
    EXIT_OK,
    FlagconesError,
    InputError,
)
from .gallery import builtin_examples, check_fixture, find_fixture
from .report import render, run, run_cones, run_hn, worst_exit_code
from .selftest import run_selftest


def _load_config(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read config {path!r}: {exc}") from None
    return parse_config(text)


def _cmd_hn(args) -> int:
    doc = run_hn(_load_config(args.config))
    print(render(doc, machine=args.machine), end="")
    return EXIT_OK


def _cmd_cones(args) -> int:
    doc = run_cones(_load_config(args.config))
    print(render(doc, machine=args.machine), end="")
    return EXIT_OK


def _cmd_seshadri(args) -> int:
    doc = run(_load_config(args.config))
    print(render(doc, machine=args.machine), end="")
    return worst_exit_code(doc)


def _digest_json(digest) -> dict:
    slope = digest.slope
    return {
        "hn_steps": [list(s) for s in digest.hn_steps],
        "slope": (
            int(slope)
            if slope.denominator == 1
            else f"{slope.numerator}/{slope.denominator}"
        ),
        "picard_rank": digest.picard_rank,
        "assumption_holds": digest.assumption_holds,
    }


def _cmd_examples(args) -> int:
    if args.name:
        fixtures = [find_fixture(args.name)]
    else:
        fixtures = list(builtin_examples())
    results = []
    any_failed = False
    for fixture in fixtures:
        doc, actual, ok = check_fixture(fixture)
        any_failed = any_failed or not ok
        results.append((fixture, doc, actual, ok))
    if args.machine:
        payload = [
            {
                "name": fixture.name,
                "pass": ok,
                "expected": _digest_json(fixture.digest),
                "actual": _digest_json(actual),
            }
            for fixture, _, actual, ok in results
        ]
        print(json.dumps(payload, indent=2))
    else:
        if args.name:
            fixture, doc, actual, ok = results[0]
            print(render(doc, machine=False), end="")
            print()
        width = max(len(fixture.name) for fixture, _, _, _ in results)
        for fixture, _, actual, ok in results:
            verdict = "PASS" if ok else "FAIL"
            condition = "holds" if actual.assumption_holds else "fails"
            print(
                f"{verdict}  {fixture.name.ljust(width)}  slope {actual.slope}  "
                f"picard rank {actual.picard_rank}  divisibility {condition}"
            )
    if any_failed:
        print("fixture digest mismatch", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def _cmd_selftest(args) -> int:
    results = run_selftest(
        seed=args.seed, oracle_cap=args.oracle_cap, trials=args.trials
    )
    if args.machine:
        payload = [
            {
                "name": r.name,
                "trials": r.trials,
                "failures": r.failures,
                "detail": r.detail,
            }
            for r in results
        ]
        print(json.dumps(payload, indent=2))
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            mark = "ok  " if r.ok else "FAIL"
            line = f"{mark}  {r.name.ljust(width)}  {r.trials} trials"
            if r.detail:
                line += f"  ({r.detail})"
            print(line)
    if any(not r.ok for r in results):
        print("selftest failed", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagcones",
        description=(
            "Exact nef/curve cones and Seshadri constants of flag bundles "
            "built from Harder-Narasimhan data on a curve."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--machine", action="store_true", help="structured JSON output"
        )

    p_hn = sub.add_parser("hn", help="filtration only")
    p_hn.add_argument("config", help="path to a JSON problem config")
    add_common(p_hn)
    p_hn.set_defaults(func=_cmd_hn)

    p_cones = sub.add_parser("cones", help="cone generators and pairing matrix")
    p_cones.add_argument("config", help="path to a JSON problem config")
    add_common(p_cones)
    p_cones.set_defaults(func=_cmd_cones)

    p_ses = sub.add_parser("seshadri", help="full Seshadri report")
    p_ses.add_argument("config", help="path to a JSON problem config")
    add_common(p_ses)
    p_ses.set_defaults(func=_cmd_seshadri)

    p_ex = sub.add_parser("examples", help="run built-in fixtures")
    p_ex.add_argument("name", nargs="?", help="run a single fixture by name")
    add_common(p_ex)
    p_ex.set_defaults(func=_cmd_examples)

    p_self = sub.add_parser("selftest", help="oracle equivalence + invariants")
    add_common(p_self)
    p_self.add_argument(
        "--oracle-cap",
        type=int,
        default=DEFAULT_ORACLE_CAP,
        metavar="N",
        help=f"brute-force rank cap (default {DEFAULT_ORACLE_CAP})",
    )
    p_self.add_argument(
        "--seed", type=int, default=0, metavar="S", help="randomization seed"
    )
    p_self.add_argument(
        "--trials",
        type=int,
        default=200,
        metavar="T",
        help="trials per randomized check (default 200)",
    )
    p_self.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FlagconesError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
