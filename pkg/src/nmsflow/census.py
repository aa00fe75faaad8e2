"""Equivalence-class censuses and the grid audit.

For each supported manifold the census emits the representative
invariant tuples of its equivalence classes, instantiated over a finite
(n, k) window:

* lens targets L(p, q): one of five families selected by |p| and by
  whether q*q == +-1 (mod p); for |p| != 2 the families are genuinely
  two-parameter (countably many classes), for |p| = 2 the list is the
  six projective-space tuples;
* connected sums L(p, q) # RP3: finite lists (no window parameters);
* Seifert targets with fibers (a1, b1), (a2, b2), (2, 1): the tuple
  (a1, b1, a2, b2), plus its swap when the two fibers differ.

Lists are emitted exactly as the families define them; duplicate pairs
(list entries that are consistent with each other) are *reported*,
never silently removed -- `count_classes` is the one place where
deduplication is the documented semantic.

`audit` sweeps the full admissible grid: it groups tuples into
consistency classes, flags class members whose identified manifolds
disagree (this happens on branches 1ii/1iii, where the literal
identification formula is not constant on classes), and checks that
every manifold arising on the grid is covered by some census
representative.  Its output is deterministic and byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .intlat import congruent, least_residue, symmetric_inverse, symmetric_residue
from .invariant import (
    FlowInvariant,
    canonical_form,
    consistent,
    is_admissible,
)
from .manifold import (
    LensSpace,
    LensSumRP3,
    Manifold,
    SeifertFibration,
    ambient_branch,
    ambient_manifold,
    euler_sum,
    lens_normal_form,
    manifold_homeomorphic,
    render_manifold,
    seifert_normalize,
)


@dataclass(frozen=True)
class CensusWindow:
    n_min: int
    n_max: int
    k_min: int
    k_max: int

    def __post_init__(self):
        if self.n_min > self.n_max or self.k_min > self.k_max:
            raise ValueError("empty census window")

    def n_values(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def k_values(self) -> range:
        return range(self.k_min, self.k_max + 1)

    def enlarged(self, margin: int) -> "CensusWindow":
        return CensusWindow(
            self.n_min - margin, self.n_max + margin, self.k_min - margin, self.k_max + margin
        )


@dataclass(frozen=True)
class ClassCount:
    kind: str  # "finite" | "countable"
    value: int | None = None

    @classmethod
    def finite(cls, n: int) -> "ClassCount":
        return cls("finite", n)

    @classmethod
    def countable(cls) -> "ClassCount":
        return cls("countable")

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.value is not None:
            out["value"] = self.value
        return out


def _lens_case(p: int, q: int) -> str:
    if p == 0:
        return "c"
    if abs(p) == 1:
        return "d"
    if abs(p) == 2:
        return "e"
    if congruent(q * q, 1, p) or congruent(q * q, -1, p):
        return "b"
    return "a"


def _lens_families(p: int, q: int, window: CensusWindow) -> list[FlowInvariant]:
    case = _lens_case(p, q)
    reps: list[FlowInvariant] = []
    if case in ("a", "b"):
        p_bar = abs(p)
        residues = [symmetric_residue(p, q)]
        if case == "a":
            residues.append(symmetric_inverse(p, q))
        # Non-mirrored templates (l1 = +-1), then their mirrors, in the
        # family's printed order: +p/-p alternating over +q/-q.
        templates = []
        for q_base in residues:
            for q_sign in (1, -1):
                for p_sign in (1, -1):
                    templates.append((p_sign, q_sign * q_base))
        for mirrored in (False, True):
            for p_sign, q_off in templates:
                for eps in (1, -1):
                    for n in window.n_values():
                        for k in window.k_values():
                            q_val = q_off + k * p_bar
                            l_val = p_sign * p_bar + 2 * q_val
                            if mirrored:
                                reps.append(FlowInvariant(l_val, q_val, eps, n))
                            else:
                                reps.append(FlowInvariant(eps, n, l_val, q_val))
    elif case == "c":
        for eps in (1, -1):
            for n in window.n_values():
                reps.append(FlowInvariant(eps, n, 2, 1))
                reps.append(FlowInvariant(eps, n, -2, -1))
        for n in window.n_values():
            for eps in (1, -1):
                reps.append(FlowInvariant(2, 1, eps, n))
                reps.append(FlowInvariant(-2, -1, eps, n))
    elif case == "d":
        for eps in (1, -1):
            for n in window.n_values():
                for k in window.k_values():
                    reps.append(FlowInvariant(eps, n, 1 + 2 * k, k))
        for k in window.k_values():
            for eps in (1, -1):
                for n in window.n_values():
                    reps.append(FlowInvariant(1 + 2 * k, k, eps, n))
    else:  # case "e": projective space, six tuples
        for eps in (1, -1):
            reps.append(FlowInvariant(eps, 0, 0, 1))
        for eps in (1, -1):
            reps.append(FlowInvariant(0, 1, eps, 0))
        for eps in (1, -1):
            reps.append(FlowInvariant(0, 2, eps, 0))
    return reps


def _sum_families(p: int, q: int) -> list[FlowInvariant]:
    if abs(p) == 1:
        raise ValueError(
            "lens summand with |p| = 1 is the projective space itself; use target L(2,1)"
        )
    reps: list[FlowInvariant] = []
    if p == 0:
        for c in (2, 1):
            for d in (1, -1):
                reps.append(FlowInvariant(0, c, 0, d))
        return reps
    if abs(p) == 2:
        for c in (2, 1):
            for p_sign in (1, -1):
                for d in (1, -1):
                    reps.append(FlowInvariant(0, c, p_sign * 2, d))
        for p_sign in (1, -1):
            for d in (1, -1):
                reps.append(FlowInvariant(p_sign * 2, d, 0, 1))
        return reps
    p_bar = abs(p)
    residues = [symmetric_residue(p, q)]
    if _lens_case(p, q) == "a":
        residues.append(symmetric_inverse(p, q))
    for c in (2, -2, 1, -1):
        for q_base in residues:
            for p_sign in (1, -1):
                for q_sign in (1, -1):
                    reps.append(FlowInvariant(0, c, p_sign * p_bar, q_sign * q_base))
    for q_base in residues:
        for p_sign in (1, -1):
            for q_sign in (1, -1):
                for d in (1, -1):
                    reps.append(FlowInvariant(p_sign * p_bar, q_sign * q_base, 0, d))
    return reps


def _seifert_census_pairs(target: SeifertFibration) -> tuple[tuple[int, int], tuple[int, int]]:
    """Extract the two non-(2,1) fibers of a supported Seifert target.

    The normalized target must have exactly three fibers including a
    multiplicity-2 one; a (2, beta) fiber with beta != 1 is shifted to
    (2, 1) with the wrapping moved onto the first other fiber, which
    stays within the same equivalence class.
    """
    normal = seifert_normalize(target)
    pairs = list(normal.pairs)
    if len(pairs) != 3:
        raise ValueError(
            f"unsupported Seifert target: expected three fibers, got {len(pairs)}"
        )
    two_index = next((i for i, (a, _) in enumerate(pairs) if a == 2), None)
    if two_index is None:
        raise ValueError("unsupported Seifert target: no multiplicity-2 fiber")
    a2, b2 = pairs[two_index]
    if b2 != 1:
        shift = (b2 - 1) // 2
        pairs[two_index] = (2, 1)
        other = next(i for i in range(3) if i != two_index)
        oa, ob = pairs[other]
        pairs[other] = (oa, ob + shift * oa)
    rest = [pairs[i] for i in range(3) if i != two_index]
    for a, _ in rest:
        if abs(a) <= 1:
            raise ValueError("unsupported Seifert target: fiber multiplicities must exceed 1")
    return rest[0], rest[1]


def representatives(target: Manifold, window: CensusWindow) -> list[FlowInvariant]:
    """The census family for the target, instantiated over the window.

    Families without free parameters (|p| = 2 lens targets, connected
    sums, Seifert targets) ignore the window.
    """
    if isinstance(target, LensSpace):
        return _lens_families(target.p, target.q, window)
    if isinstance(target, LensSumRP3):
        return _sum_families(target.p, target.q)
    (a1, b1), (a2, b2) = _seifert_census_pairs(target)
    reps = [FlowInvariant(a1, b1, a2, b2)]
    if (a1, b1) != (a2, b2):
        reps.append(FlowInvariant(a2, b2, a1, b1))
    return reps


def count_classes(target: Manifold) -> ClassCount:
    """Number of equivalence classes on the target manifold.

    Lens spaces other than the projective space carry countably many;
    every other supported target carries finitely many, counted after
    deduplicating its census list by consistency.
    """
    if isinstance(target, LensSpace) and abs(lens_normal_form(target).p) != 2:
        return ClassCount.countable()
    reps = representatives(target, CensusWindow(0, 0, 0, 0))
    return ClassCount.finite(len(_consistency_classes(reps)))


def _consistency_classes(reps: list[FlowInvariant]) -> list[list[FlowInvariant]]:
    classes: list[list[FlowInvariant]] = []
    for rep in reps:
        for cls in classes:
            if consistent(rep, cls[0]):
                cls.append(rep)
                break
        else:
            classes.append([rep])
    return classes


def family_duplicates(reps: list[FlowInvariant]) -> list[tuple[FlowInvariant, FlowInvariant]]:
    """Consistent pairs inside one generated family, in sorted order."""
    by_l: dict[tuple[int, int], list[FlowInvariant]] = {}
    for rep in reps:
        by_l.setdefault((rep.l1, rep.l2), []).append(rep)
    pairs = set()
    for bucket in by_l.values():
        ordered = sorted(set(bucket))
        for i, first in enumerate(ordered):
            for second in ordered[i + 1 :]:
                if consistent(first, second):
                    pairs.add((first, second))
    return sorted(pairs)


@dataclass(frozen=True)
class CensusReport:
    target: Manifold
    representatives: list[FlowInvariant]
    duplicate_pairs: list[tuple[FlowInvariant, FlowInvariant]]
    mismatches: list[FlowInvariant]
    count: ClassCount

    def to_json(self) -> dict:
        return {
            "target": render_manifold(self.target),
            "representatives": [list(r) for r in self.representatives],
            "duplicates": [[list(a), list(b)] for a, b in self.duplicate_pairs],
            "mismatches": [list(r) for r in self.mismatches],
            "count": self.count.to_json(),
        }


def census_report(target: Manifold, window: CensusWindow) -> CensusReport:
    reps = representatives(target, window)
    mismatches = [r for r in reps if not manifold_homeomorphic(ambient_manifold(r), target)]
    return CensusReport(
        target=target,
        representatives=reps,
        duplicate_pairs=family_duplicates(reps),
        mismatches=mismatches,
        count=count_classes(target),
    )


def admissible_grid(bound: int) -> list[FlowInvariant]:
    """All admissible tuples with |l_i|, |b_i| <= bound, sorted."""
    if bound < 1:
        raise ValueError("bound must be positive")
    values = range(-bound, bound + 1)
    grid = []
    for l1 in values:
        for b1 in values:
            for l2 in values:
                for b2 in values:
                    inv = FlowInvariant(l1, b1, l2, b2)
                    if is_admissible(inv):
                        grid.append(inv)
    return grid


def _manifold_key(m: Manifold):
    """Canonical key constant exactly on homeomorphism classes."""
    if isinstance(m, LensSpace):
        normal = lens_normal_form(m)
        return ("lens", normal.p, normal.q)
    if isinstance(m, LensSumRP3):
        normal = lens_normal_form(LensSpace(m.p, m.q))
        return ("sum", normal.p, normal.q)
    normal = seifert_normalize(m)
    total = euler_sum(normal)
    variants = []
    for delta in (1, -1):
        pairs = tuple(sorted((a, least_residue(delta * b, a)) for a, b in normal.pairs))
        variants.append((pairs, delta * total))
    pairs, total = min(variants)
    return ("sfs", pairs, total.numerator, total.denominator)


def audit(bound: int, window: CensusWindow) -> dict:
    """Full grid audit; returns a JSON-ready report with deterministic ordering.

    * `violations`: consistent same-class pairs whose literally
      identified manifolds are not homeomorphic, with the class branch;
    * `targets`: one census report per manifold arising on the grid,
      extended with a coverage check (does some representative,
      generated over the window enlarged by the grid bound, land in the
      grid's classes for that manifold?).
    """
    grid = admissible_grid(bound)
    classes: dict[FlowInvariant, list[FlowInvariant]] = {}
    for inv in grid:
        classes.setdefault(canonical_form(inv), []).append(inv)

    violations = []
    for canon in sorted(classes):
        members = sorted(classes[canon])
        rendered = {m: render_manifold(ambient_manifold(m)) for m in members}
        descriptors = {m: ambient_manifold(m) for m in members}
        for i, first in enumerate(members):
            for second in members[i + 1 :]:
                if not manifold_homeomorphic(descriptors[first], descriptors[second]):
                    violations.append(
                        {
                            "class": list(canon),
                            "branches": [ambient_branch(first), ambient_branch(second)],
                            "members": [list(first), list(second)],
                            "manifolds": [rendered[first], rendered[second]],
                        }
                    )

    by_target: dict[object, dict] = {}
    for inv in grid:
        descriptor = ambient_manifold(inv)
        key = _manifold_key(descriptor)
        entry = by_target.setdefault(key, {"descriptor": descriptor, "members": []})
        entry["members"].append(inv)

    coverage_window = window.enlarged(bound)
    target_reports = []
    for key in sorted(by_target, key=str):
        descriptor = by_target[key]["descriptor"]
        members = sorted(by_target[key]["members"])
        report = census_report(descriptor, window)
        members_by_l: dict[tuple[int, int], list[FlowInvariant]] = {}
        for m in members:
            members_by_l.setdefault((m.l1, m.l2), []).append(m)
        witness = None
        for rep in representatives(descriptor, coverage_window):
            for member in members_by_l.get((rep.l1, rep.l2), ()):
                if consistent(rep, member):
                    witness = {"representative": list(rep), "member": list(member)}
                    break
            if witness:
                break
        doc = report.to_json()
        doc["grid_members"] = len(members)
        doc["covered"] = witness is not None
        doc["coverage_witness"] = witness
        target_reports.append(doc)

    return {
        "bound": bound,
        "window": {
            "n": [window.n_min, window.n_max],
            "k": [window.k_min, window.k_max],
        },
        "coverage_window": {
            "n": [coverage_window.n_min, coverage_window.n_max],
            "k": [coverage_window.k_min, coverage_window.k_max],
        },
        "grid_size": len(grid),
        "class_count": len(classes),
        "violations": violations,
        "targets": target_reports,
    }


def render_audit_json(report: dict) -> str:
    """Byte-stable JSON rendering of an audit report, one record per line.

    Top-level keys are sorted; list entries (violations, target reports)
    are each compacted onto a single line so goldens stay diffable.
    """
    lines = ["{"]
    keys = sorted(report)
    for pos, key in enumerate(keys):
        value = report[key]
        comma = "," if pos < len(keys) - 1 else ""
        if isinstance(value, list):
            if not value:
                lines.append(f'"{key}": []{comma}')
                continue
            lines.append(f'"{key}": [')
            for j, item in enumerate(value):
                tail = "," if j < len(value) - 1 else ""
                lines.append(json.dumps(item, sort_keys=True, separators=(",", ":")) + tail)
            lines.append(f"]{comma}")
        else:
            lines.append(
                f'"{key}": ' + json.dumps(value, sort_keys=True, separators=(",", ":")) + comma
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
