"""Command line front end.

Three subcommands: lattice-info prints the invariants of a named or
JSON-described lattice, fibration prints the per-place report of a
Weierstrass or fibration description, and verify-all runs the whole
built-in verification pipeline.  Exit codes: 0 success, 1 verification
failure, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .fibration import (
    FibrationAnalysis,
    analyze_k3,
    fibration_from_json,
    kodaira_data,
    weierstrass_from_json,
)
from .fixtures import WEIERSTRASS_NAMES, weierstrass_model
from .lattices import (
    direct_sum,
    discriminant_group,
    lattice_from_json,
    make_named,
    signature,
)
from .verify import run_verification


def _load_lattice(source: str):
    path = Path(source)
    if path.is_file():
        return lattice_from_json(path.read_text())
    parts = [p.strip() for p in source.split("+")]
    if not all(parts):
        raise ValueError(f"unknown lattice {source!r}")
    lattices = [make_named(p) for p in parts]
    return lattices[0] if len(lattices) == 1 else direct_sum(*lattices)


def _group_name(factors: tuple[int, ...]) -> str:
    if not factors:
        return "trivial"
    return " x ".join(f"Z/{d}" for d in factors)


def cmd_lattice_info(args: argparse.Namespace) -> int:
    lattice = _load_lattice(args.lattice)
    sig = signature(lattice)
    group = discriminant_group(lattice)
    if args.json:
        data = {
            "label": lattice.label,
            "rank": str(lattice.rank),
            "det": str(lattice.det),
            "signature": [str(sig.positive), str(sig.negative), str(sig.zero)],
            "even": lattice.is_even,
            "discriminant_group": {
                "invariant_factors": [str(d) for d in group.invariant_factors],
                "qvalues": [str(q) for q in group.qvalues],
            },
        }
        print(json.dumps(data, indent=2, sort_keys=True))
        return 0
    print(lattice.label or "lattice")
    print(f"  rank        {lattice.rank}")
    print(f"  det         {lattice.det}")
    print(f"  signature   ({sig.positive}, {sig.negative}, {sig.zero})")
    print(f"  even        {'yes' if lattice.is_even else 'no'}")
    print(f"  disc group  {_group_name(group.invariant_factors)}")
    for i, q in enumerate(group.qvalues, start=1):
        print(f"  q(g{i})       {q}")
    return 0


def _fiber_row(place: str, kodaira: str, count: int) -> tuple:
    euler, components, root = kodaira_data(kodaira)
    return place, kodaira, count, euler, components, root or "-"


def _print_fiber_table(rows: list[tuple]) -> None:
    print(f"  {'place':<14}{'type':<6}{'count':<7}{'euler':<7}{'comps':<7}root")
    for place, kodaira, count, euler, components, root in rows:
        print(f"  {place:<14}{kodaira:<6}{count:<7}{euler:<7}{components:<7}{root}")


def _report_analysis(analysis: FibrationAnalysis, as_json: bool) -> int:
    rows = [_fiber_row(r.place, r.kodaira, r.count) for r in analysis.fibers]
    if as_json:
        data = {
            "label": analysis.label,
            "fibers": [
                {
                    "place": place,
                    "type": kodaira,
                    "count": str(count),
                    "euler": str(euler),
                    "components": str(components),
                    "root": root,
                }
                for place, kodaira, count, euler, components, root in rows
            ],
            "euler_total": str(analysis.euler_total),
            "ns_rank": str(analysis.ns_rank),
            "mw_rank": str(analysis.mw_rank),
            "consistent": analysis.consistent,
            "notes": list(analysis.notes),
        }
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(f"fibration {analysis.label}" if analysis.label else "fibration")
        _print_fiber_table(rows)
        print(f"  Euler total {analysis.euler_total}")
        print(f"  NS rank     {analysis.ns_rank}")
        print(f"  MW rank     {analysis.mw_rank}")
        for note in analysis.notes:
            print(f"  note: {note}")
        if not analysis.euler_ok:
            print(f"  FLAG: Euler numbers sum to {analysis.euler_total}, not 24")
    return 0 if analysis.consistent else 1


def _report_fibration_json(text: str, as_json: bool) -> int:
    data = json.loads(text)
    if not isinstance(data.get("fibers"), list):
        raise ValueError("fibers must form a list")
    rows = []
    for entry in data["fibers"]:
        if not isinstance(entry, dict) or "place" not in entry or "type" not in entry:
            raise ValueError("each fiber needs place and type")
        rows.append(_fiber_row(str(entry["place"]), str(entry["type"]),
                               int(entry.get("count", 1))))
    euler_total = sum(euler * count for _, _, count, euler, _, _ in rows)
    if euler_total != 24:
        if not as_json:
            _print_fiber_table(rows)
            print(f"  FLAG: Euler numbers sum to {euler_total}, not 24")
        else:
            print(json.dumps({"euler_total": str(euler_total),
                              "consistent": False}, sort_keys=True))
        return 1
    model = fibration_from_json(text)
    if as_json:
        out = {
            "fibers": [
                {
                    "place": place,
                    "type": kodaira,
                    "count": str(count),
                    "euler": str(euler),
                    "components": str(components),
                    "root": root,
                }
                for place, kodaira, count, euler, components, root in rows
            ],
            "euler_total": str(euler_total),
            "ns_rank": str(model.ns_rank),
            "mw_rank": str(model.mw_rank),
            "consistent": True,
        }
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print("fibration")
        _print_fiber_table(rows)
        print(f"  Euler total {euler_total}")
        print(f"  NS rank     {model.ns_rank}")
        print(f"  MW rank     {model.mw_rank}")
    return 0


def cmd_fibration(args: argparse.Namespace) -> int:
    source = args.model
    if source in WEIERSTRASS_NAMES:
        return _report_analysis(analyze_k3(weierstrass_model(source)), args.json)
    path = Path(source)
    if not path.is_file():
        known = ", ".join(WEIERSTRASS_NAMES)
        raise ValueError(
            f"unknown model {source!r}; give a built-in name ({known}) "
            "or a JSON file")
    text = path.read_text()
    data = json.loads(text)
    if isinstance(data, dict) and "fibers" in data:
        return _report_fibration_json(text, args.json)
    return _report_analysis(analyze_k3(weierstrass_from_json(text)), args.json)


def cmd_verify_all(args: argparse.Namespace) -> int:
    report = run_verification(perturb=args.perturb)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(report.render_text())
    return 0 if report.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3lattices",
        description="Exact lattice and elliptic-fibration verification tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    info = sub.add_parser(
        "lattice-info",
        help="invariants of a named lattice (A15, K7, U(7) + E8, ...) or "
             "a lattice JSON file")
    info.add_argument("lattice")
    info.add_argument("--json", action="store_true", help="machine-readable output")
    info.set_defaults(func=cmd_lattice_info)

    fib = sub.add_parser(
        "fibration",
        help="per-place fiber report for a built-in model or a JSON file")
    fib.add_argument("model")
    fib.add_argument("--json", action="store_true", help="machine-readable output")
    fib.set_defaults(func=cmd_fibration)

    ver = sub.add_parser("verify-all", help="run every built-in check")
    ver.add_argument("--json", action="store_true", help="machine-readable output")
    ver.add_argument("--perturb", action="store_true",
                     help="negative control: flip one Gram entry first")
    ver.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
