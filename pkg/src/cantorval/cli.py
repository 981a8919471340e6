"""Command-line front end.

Subcommands:
  validate   family admissibility conditions with exact witnesses
  analyze    composite report: classification, iterations, measure bounds,
             tight-diameter trend, standardness, uniqueness

Exit codes: 0 ok, 1 condition failure, 2 usage or parse error, 3 capacity
exhausted.  Reports are deterministic: identical invocations produce
byte-identical output (no timestamps, exact rationals only).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .classify import Verdict, classify, resolve_stream
from .engine import iterate, measure_bounds
from .families import (
    GFSpec,
    KyivSpec,
    MMSpec,
    MultigeometricSpec,
    gf_validate,
    kyiv_validate,
    spec_from_json,
    standardness_ratio,
)
from .series import DEFAULT_CAP, CapacityError, kakeya_split
from .tightness import tight_trend
from .uniqueness import (
    RepeatedTermSpec,
    repetition_report,
    representation_uniqueness_oracle,
    semifast_check,
    tail_sum_unique,
)

EXIT_OK = 0
EXIT_CONDITION_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


def _load_spec(args: argparse.Namespace):
    if bool(args.spec) == bool(args.inline):
        raise ValueError("provide exactly one of --spec PATH or --inline JSON")
    raw = Path(args.spec).read_text() if args.spec else args.inline
    return spec_from_json(json.loads(raw))


def _default_cap(args: argparse.Namespace) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("CANTORVAL_CAP")
    if env is not None:
        return int(env)
    return DEFAULT_CAP


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _validation_conditions(spec) -> list[dict]:
    """Per-condition pass/fail with exact witnesses, per family."""
    if isinstance(spec, KyivSpec):
        return kyiv_validate(spec).to_json()["conditions"]
    if isinstance(spec, GFSpec):
        report = gf_validate(spec)
        doc = report.to_json()
        conditions = [
            {
                "name": "GF1: q_n <= (s_{n+1} - m_{n+1} + 1) q_{n+1}",
                "passed": report.gf1_holds,
                "witness": "all indices" if report.gf1_holds else str(doc["gf1_failure"]),
            },
            {
                "name": "GF2: m_n q_n > tail of (s_i + m_i) q_i",
                "passed": report.gf2_holds,
                "witness": "all indices" if report.gf2_holds else str(doc["gf2_failure"]),
            },
            {
                "name": "run totals s_n",
                "passed": True,
                "witness": str(doc["s"]),
            },
        ]
        return conditions
    if isinstance(spec, MMSpec):
        return [
            {
                "name": "gap parameters n_s >= 1, eventually periodic",
                "passed": True,
                "witness": str(spec.gaps.to_json()),
            }
        ]
    if isinstance(spec, MultigeometricSpec):
        return [
            {
                "name": "coefficients nonincreasing positive, ratio in (0,1)",
                "passed": True,
                "witness": str(spec.to_json()),
            }
        ]
    if isinstance(spec, RepeatedTermSpec):
        report = semifast_check(spec)
        return [
            {
                "name": "semi-fast: y_k > tail of K_i y_i",
                "passed": report.semifast,
                "witness": (
                    "all indices"
                    if report.semifast
                    else f"fails at k={report.first_violation}"
                ),
            }
        ]
    raise ValueError(f"no validator for {type(spec).__name__}")


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        spec = _load_spec(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    conditions = _validation_conditions(spec)
    passed = all(c["passed"] for c in conditions)
    if args.format == "json":
        doc = {"spec": spec.to_json(), "passed": passed, "conditions": conditions}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = [
            f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}: {c['witness']}"
            for c in conditions
        ]
        lines.append("all conditions pass" if passed else "some conditions fail")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if passed else EXIT_CONDITION_FAILURE


def _uniqueness_section(spec, stream, depth: int, cap: int) -> dict:
    k = min(depth, 12)
    report = repetition_report(stream, k, cap)
    section = {
        "repetition": report.to_json(),
        "tail_unique": [[n, tail_sum_unique(stream, n)] for n in range(1, k + 1)],
        "semifast": None,
        "representation_oracle": None,
    }
    if isinstance(spec, RepeatedTermSpec):
        section["semifast"] = semifast_check(spec).to_json()
        try:
            section["representation_oracle"] = representation_uniqueness_oracle(
                spec, min(depth, 6), cap
            )
        except CapacityError:
            section["representation_oracle"] = None
    return section


def build_report(spec, depth: int, horizon: int, cap: int, budget: int) -> dict:
    """The composite analysis document; everything exact and deterministic."""
    stream, _ = resolve_stream(spec)
    classification = classify(spec, horizon=horizon, cap=cap, budget=budget)
    iterations = [iterate(stream, n, cap).to_json() for n in range(depth + 1)]
    bounds = measure_bounds(
        spec if isinstance(spec, MultigeometricSpec) else stream, depth, budget, cap
    )
    trend = tight_trend(stream, max(horizon, 1), cap)
    try:
        standardness = standardness_ratio(spec, 1).to_json()
    except ValueError:
        standardness = None
    return {
        "spec": spec.to_json(),
        "config": {"depth": depth, "horizon": horizon, "cap": cap, "budget": budget},
        "classification": classification.to_json(),
        "kakeya": kakeya_split(stream, horizon).to_json(),
        "iterations": iterations,
        "measure_bounds": bounds.to_json(),
        "tight_trend": trend.to_json(),
        "standardness": standardness,
        "uniqueness": _uniqueness_section(spec, stream, depth, cap),
    }


def validate_report_document(doc: dict) -> None:
    """Light schema check used by tests and round-trip validation."""
    required = {
        "spec",
        "config",
        "classification",
        "kakeya",
        "iterations",
        "measure_bounds",
        "tight_trend",
        "standardness",
        "uniqueness",
    }
    missing = required - doc.keys()
    if missing:
        raise ValueError(f"report missing sections: {sorted(missing)}")
    if doc["classification"]["verdict"] not in {v.value for v in Verdict}:
        raise ValueError("bad verdict")
    for row in doc["iterations"]:
        for key in ("n", "measure", "parts", "gaps"):
            if key not in row:
                raise ValueError(f"iteration row missing {key}")
        for token in [row["measure"]] + [x for p in row["parts"] for x in p]:
            if "/" not in token:
                raise ValueError(f"rational not in p/q form: {token}")


def _csv_tables(doc: dict) -> dict[str, str]:
    tables = {}
    tables["iterations.csv"] = "\n".join(
        ["n,measure,brick_count,gap_count"]
        + [
            f"{row['n']},{row['measure']},{row['brick_count']},{row['gap_count']}"
            for row in doc["iterations"]
        ]
    ) + "\n"
    tables["tight_trend.csv"] = "\n".join(
        ["n,delta"] + [f"{n},{v}" for n, v in doc["tight_trend"]["rows"]]
    ) + "\n"
    if doc["standardness"] is not None:
        s = doc["standardness"]
        tables["standardness.csv"] = (
            "k,ratio,limit\n" + f"{s['index']},{s['at_index']},{s['limit']}\n"
        )
    return tables


def _human_summary(doc: dict) -> str:
    c = doc["classification"]
    b = doc["measure_bounds"]
    lines = [
        f"spec: {json.dumps(doc['spec'])}",
        f"classification: {c['verdict']} ({c['tier']}, horizon {c['horizon']})",
        f"measure bounds at depth {b['depth']}: "
        f"upper {b['upper_lambda_e']}, lower {b['lower_interior']}, gap {b['boundary_gap']}",
        f"tight trend final: {doc['tight_trend']['rows'][-1][1]}"
        f" (interval evidence: {doc['tight_trend']['interval_evidence']})",
    ]
    if doc["standardness"] is not None:
        lines.append(
            f"standardness ratio: {doc['standardness']['at_index']}"
            f" (limit {doc['standardness']['limit']})"
        )
    collisions = doc["uniqueness"]["repetition"]["collisions"]["values"]
    lines.append(f"certified collisions at depth {doc['uniqueness']['repetition']['k']}: "
                 f"{collisions if collisions else 'none'}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        spec = _load_spec(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    cap = _default_cap(args)
    try:
        doc = build_report(spec, args.depth, args.horizon or args.depth, cap, args.budget)
    except CapacityError as exc:
        sys.stderr.write(f"capacity exhausted in {exc.stage}: {exc}\n")
        return EXIT_CAPACITY
    if args.format == "json":
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    elif args.format == "csv":
        if not args.out:
            sys.stderr.write("error: --format csv requires --out DIRECTORY\n")
            return EXIT_USAGE
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, text in _csv_tables(doc).items():
            (outdir / name).write_text(text)
        (outdir / "report.json").write_text(json.dumps(doc, indent=2) + "\n")
    else:
        _emit(_human_summary(doc), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantorval",
        description="Exact analysis of achievement sets of convergent series",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler in (("validate", cmd_validate), ("analyze", cmd_analyze)):
        p = sub.add_parser(name)
        p.add_argument("--spec", help="path to a family spec JSON file")
        p.add_argument("--inline", help="family spec JSON as a literal argument")
        p.add_argument("--depth", type=int, default=8)
        p.add_argument("--horizon", type=int, default=None)
        p.add_argument("--cap", type=int, default=None,
                       help="dedup capacity (env CANTORVAL_CAP overrides the default)")
        p.add_argument("--budget", type=int, default=12)
        p.add_argument("--format", choices=("json", "csv", "human"), default="json")
        p.add_argument("--out", default=None)
        p.set_defaults(handler=handler)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
