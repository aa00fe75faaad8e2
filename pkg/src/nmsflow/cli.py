"""Command-line front end.

Subcommands mirror the library: decision commands (`admissible`,
`equiv`, `canon`, `manifold`, `homology`, `lens-homeo`, `seifert-iso`),
census generation (`census`), the grid audit (`audit`) and the JSONL
catalog writer (`catalog`).  Human-readable text goes to stdout by
default; `--json` switches to a single JSON document.

Exit codes: 0 on completion (negative decisions included), 2 on
malformed input, 3 on a precondition violation (e.g. an inadmissible
tuple where admissibility is required).

Note for window flags: values starting with a dash need the equals
form, e.g. `--n=-2..2`.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import census as census_mod
from .errors import ParseError
from .homology import h1_match_report, h1_of_descriptor
from .invariant import (
    admissibility_failure,
    canonical_form,
    consistency_witness,
    parse_invariant,
    render_invariant,
)
from .manifold import (
    LensSpace,
    SeifertFibration,
    ambient_branch,
    ambient_manifold,
    lens_homeomorphic,
    manifold_normal_form,
    parse_manifold,
    render_manifold,
    seifert_isomorphism,
)

DEFAULT_BOUND_ENV = "NMS_AUDIT_BOUND"


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ParseError("expected a range like -2..2", 0)
    try:
        lo_val, hi_val = int(lo), int(hi)
    except ValueError:
        raise ParseError(f"invalid range bound in {text!r}", 0) from None
    if lo_val > hi_val:
        raise ParseError(f"empty range {text!r}", 0)
    return lo_val, hi_val


def _window(args) -> census_mod.CensusWindow:
    n = _parse_range(args.n) if args.n else (0, 0)
    k = _parse_range(args.k) if args.k else (0, 0)
    return census_mod.CensusWindow(n[0], n[1], k[0], k[1])


def _default_bound() -> int:
    raw = os.environ.get(DEFAULT_BOUND_ENV)
    if raw is None:
        return 5
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"invalid {DEFAULT_BOUND_ENV}={raw!r}", 0) from None


def _emit(args, doc, human_lines) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _group_json(group) -> dict:
    return group.to_json()


def cmd_admissible(args) -> int:
    inv = parse_invariant(args.invariant)
    reason = admissibility_failure(inv)
    doc = {"admissible": reason is None, "reason": reason}
    _emit(args, doc, ["admissible" if reason is None else f"inadmissible: {reason}"])
    return 0


def cmd_equiv(args) -> int:
    a = parse_invariant(args.first)
    b = parse_invariant(args.second)
    witness = consistency_witness(a, b)
    doc = {"consistent": witness is not None, "delta": witness.delta if witness else None}
    if witness:
        human = [f"consistent (delta={witness.delta:+d}, shift={witness.shift})"]
    else:
        human = ["not consistent"]
    _emit(args, doc, human)
    return 0


def cmd_canon(args) -> int:
    inv = parse_invariant(args.invariant)
    canon = canonical_form(inv)
    _emit(args, list(canon), [render_invariant(canon)])
    return 0


def cmd_manifold(args) -> int:
    inv = parse_invariant(args.invariant)
    descriptor = ambient_manifold(inv)
    branch = ambient_branch(inv)
    group = h1_of_descriptor(descriptor)
    normal = manifold_normal_form(descriptor)
    doc = {
        "manifold": render_manifold(descriptor),
        "normal_form": render_manifold(normal),
        "branch": branch,
        "h1": _group_json(group),
    }
    _emit(
        args,
        doc,
        [
            f"manifold: {doc['manifold']}",
            f"normal form: {doc['normal_form']}",
            f"branch: {branch}",
            f"h1: {group.render()}",
        ],
    )
    return 0


def cmd_homology(args) -> int:
    inv = parse_invariant(args.invariant)
    report = h1_match_report(inv)
    signs = {"+1": (1,), "-1": (-1,), "both": (1, -1)}[args.saddle_sign]
    doc = {
        "invariant": list(inv),
        "branch": report.branch,
        "descriptor": render_manifold(report.descriptor),
        "descriptor_h1": _group_json(report.descriptor_group),
        "surgery": None,
        "formula_orders": None,
        "matching_signs": list(report.matching_signs),
    }
    human = [
        f"descriptor: {doc['descriptor']} (branch {report.branch})",
        f"descriptor h1: {report.descriptor_group.render()}",
    ]
    if report.surgery_groups is None:
        human.append("surgery model: none for (l1,b1) = (0,+-2)")
    else:
        doc["surgery"] = {
            f"{s:+d}": _group_json(report.surgery_groups[s]) for s in signs
        }
        doc["formula_orders"] = {f"{s:+d}": report.formula_orders[s] for s in signs}
        for s in signs:
            mark = "matches" if s in report.matching_signs else "differs"
            human.append(
                f"surgery h1 at sign {s:+d}: {report.surgery_groups[s].render()} "
                f"(order formula {report.formula_orders[s]}; {mark})"
            )
    _emit(args, doc, human)
    return 0


def cmd_lens_homeo(args) -> int:
    first = LensSpace(args.p, args.q)
    second = LensSpace(args.p2, args.q2)
    result = lens_homeomorphic(first, second)
    _emit(args, {"homeomorphic": result}, ["homeomorphic" if result else "not homeomorphic"])
    return 0


def cmd_seifert_iso(args) -> int:
    first = parse_manifold(args.first)
    second = parse_manifold(args.second)
    if not isinstance(first, SeifertFibration) or not isinstance(second, SeifertFibration):
        raise ValueError("seifert-iso expects two SFS(...) descriptors")
    witness = seifert_isomorphism(first, second)
    doc = {
        "isomorphic": witness is not None,
        "delta": witness[0] if witness else None,
        "permutation": list(witness[1]) if witness else None,
    }
    if witness:
        human = [f"isomorphic (delta={witness[0]:+d}, permutation={list(witness[1])})"]
    else:
        human = ["not isomorphic"]
    _emit(args, doc, human)
    return 0


def cmd_census(args) -> int:
    target = parse_manifold(args.target)
    window = _window(args)
    report = census_mod.census_report(target, window)
    doc = report.to_json()
    human = [
        f"target: {doc['target']}",
        "count: countable" if report.count.kind == "countable" else f"count: {report.count.value}",
        f"representatives ({len(report.representatives)}):",
    ]
    human.extend(f"  {render_invariant(r)}" for r in report.representatives)
    if args.audit:
        human.append(f"duplicate pairs ({len(report.duplicate_pairs)}):")
        human.extend(
            f"  {render_invariant(a)} ~ {render_invariant(b)}" for a, b in report.duplicate_pairs
        )
        human.append(f"mismatches ({len(report.mismatches)}):")
        human.extend(f"  {render_invariant(r)}" for r in report.mismatches)
    _emit(args, doc, human)
    return 0


def _write_or_print(args, payload: str, human_summary: list[str]) -> None:
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
        if not args.json:
            for line in human_summary:
                print(line)
    elif args.json:
        sys.stdout.write(payload)
    else:
        for line in human_summary:
            print(line)


def cmd_audit(args) -> int:
    bound = args.bound if args.bound is not None else _default_bound()
    window = _window(args)
    report = census_mod.audit(bound, window)
    summary = [
        f"grid: {report['grid_size']} admissible tuples, {report['class_count']} classes",
        f"violations: {len(report['violations'])}",
        f"targets: {len(report['targets'])} "
        f"({sum(1 for t in report['targets'] if t['covered'])} covered)",
    ]
    if args.figures:
        if not args.output:
            raise ParseError("--figures requires -o/--output", 0)
        from .figures import save_audit_figures

        paths = save_audit_figures(report, Path(args.output))
        summary.extend(f"figure: {p}" for p in paths)
    _write_or_print(args, census_mod.render_audit_json(report), summary)
    return 0


def catalog_rows(bound: int) -> list[dict]:
    rows = []
    for inv in census_mod.admissible_grid(bound):
        descriptor = ambient_manifold(inv)
        rows.append(
            {
                "invariant": list(inv),
                "canonical": list(canonical_form(inv)),
                "manifold": render_manifold(descriptor),
                "h1": _group_json(h1_of_descriptor(descriptor)),
                "branch": ambient_branch(inv),
            }
        )
    return rows


def cmd_catalog(args) -> int:
    bound = args.bound if args.bound is not None else _default_bound()
    rows = catalog_rows(bound)
    lines = "".join(
        json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n" for row in rows
    )
    out = Path(args.output)
    out.write_text(lines, encoding="utf-8")
    messages = [f"wrote {len(rows)} rows to {out}"]
    if args.figures:
        from .figures import save_catalog_figures

        paths = save_catalog_figures(rows, out)
        messages.extend(f"figure: {p}" for p in paths)
    for message in messages:
        print(message)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nmsflow",
        description=(
            "Classify flows with one twisted saddle orbit from their integer "
            "invariant tuples: equivalence decisions, ambient 3-manifold "
            "identification, homology cross-checks, censuses and audits."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit a JSON document")
        p.set_defaults(func=func)
        return p

    p = add("admissible", cmd_admissible, "check admissibility of an invariant tuple")
    p.add_argument("invariant", help='tuple "l1,b1,l2,b2"')

    p = add("equiv", cmd_equiv, "decide topological equivalence of two invariants")
    p.add_argument("first")
    p.add_argument("second")

    p = add("canon", cmd_canon, "canonical form of the consistency class")
    p.add_argument("invariant")

    p = add("manifold", cmd_manifold, "identify the ambient manifold")
    p.add_argument("invariant")

    p = add("homology", cmd_homology, "first-homology cross-check report")
    p.add_argument("invariant")
    p.add_argument(
        "--saddle-sign", choices=["+1", "-1", "both"], default="both",
        help="which saddle orientation(s) to evaluate (default: both)",
    )

    p = add("lens-homeo", cmd_lens_homeo, "decide homeomorphism of two lens spaces")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("p2", type=int)
    p.add_argument("q2", type=int)

    p = add("seifert-iso", cmd_seifert_iso, "decide isomorphism of two Seifert fibrations")
    p.add_argument("first", help='descriptor like "SFS((3,1),(5,2),(2,1))"')
    p.add_argument("second")

    p = add("census", cmd_census, "equivalence-class representatives for a manifold")
    p.add_argument("target", help='manifold spec: L(p,q), L(p,q)+RP3 or SFS(...)')
    p.add_argument("--n", help="n window as a..b (default 0..0)")
    p.add_argument("--k", help="k window as a..b (default 0..0)")
    p.add_argument("--audit", action="store_true", help="also list duplicates and mismatches")

    p = add("audit", cmd_audit, "audit the identification map over the admissible grid")
    p.add_argument("--bound", type=int, default=None,
                   help=f"grid bound (default ${DEFAULT_BOUND_ENV} or 5)")
    p.add_argument("--n", help="census window as a..b (default 0..0)")
    p.add_argument("--k", help="census window as a..b (default 0..0)")
    p.add_argument("-o", "--output", help="write the JSON report to this path")
    p.add_argument("--figures", action="store_true",
                   help="render summary figures next to the output file")

    p = add("catalog", cmd_catalog, "write the JSONL catalog of the admissible grid")
    p.add_argument("--bound", type=int, default=None,
                   help=f"grid bound (default ${DEFAULT_BOUND_ENV} or 5)")
    p.add_argument("-o", "--output", required=True, help="output JSONL path")
    p.add_argument("--figures", action="store_true",
                   help="render summary figures next to the output file")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
