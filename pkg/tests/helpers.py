"""Shared test oracles and JSON shape validators.

The consistency oracle here re-evaluates the defining conditions
directly and independently of the library's witness machinery, so the
two can legitimately check each other.
"""

from __future__ import annotations

from math import gcd as _gcd

from nmsflow import FlowInvariant


def congruent_oracle(a: int, b: int, m: int) -> bool:
    if m == 0:
        return a == b
    return (a - b) % m == 0


def admissible_oracle(inv) -> bool:
    l1, b1, l2, b2 = inv
    first = (l1, b1) in ((0, 2), (0, -2)) or _gcd(abs(l1), abs(b1)) == 1
    return first and _gcd(abs(l2), abs(b2)) == 1


def consistent_oracle(a, b) -> bool:
    """Direct evaluation of the defining conditions for consistency."""
    if a.l1 != b.l1 or a.l2 != b.l2:
        return False
    l1, l2 = a.l1, a.l2
    for delta in (1, -1):
        if not congruent_oracle(a.b1, delta * b.b1, l1):
            continue
        if not congruent_oracle(a.b2, delta * b.b2, l2):
            continue
        inner = (
            2 * l2 * (a.b1 - delta * b.b1)
            + 2 * l1 * (a.b2 - delta * b.b2)
            + l1 * l2 * (1 - delta)
        )
        if l1 * l2 * inner == 0:
            return True
    return False


def grid_tuples(bound: int) -> list[FlowInvariant]:
    out = []
    rng = range(-bound, bound + 1)
    for l1 in rng:
        for b1 in rng:
            for l2 in rng:
                for b2 in rng:
                    inv = FlowInvariant(l1, b1, l2, b2)
                    if admissible_oracle(inv):
                        out.append(inv)
    return out


def is_int_list(value, length=None) -> bool:
    if not isinstance(value, list):
        return False
    if length is not None and len(value) != length:
        return False
    return all(isinstance(v, int) and not isinstance(v, bool) for v in value)


def validate_group_json(doc) -> None:
    assert set(doc) == {"rank", "torsion"}, doc
    assert isinstance(doc["rank"], int) and doc["rank"] >= 0
    assert is_int_list(doc["torsion"])
    chain = doc["torsion"]
    assert all(d >= 2 for d in chain)
    assert all(chain[i + 1] % chain[i] == 0 for i in range(len(chain) - 1))


def validate_count_json(doc) -> None:
    assert doc["kind"] in ("finite", "countable")
    if doc["kind"] == "finite":
        assert isinstance(doc["value"], int) and doc["value"] >= 0
    else:
        assert "value" not in doc


def validate_census_report_json(doc) -> None:
    assert {"target", "representatives", "duplicates", "mismatches", "count"} <= set(doc)
    assert isinstance(doc["target"], str)
    for rep in doc["representatives"]:
        assert is_int_list(rep, 4)
    for pair in doc["duplicates"]:
        assert len(pair) == 2 and all(is_int_list(r, 4) for r in pair)
    for rep in doc["mismatches"]:
        assert is_int_list(rep, 4)
    validate_count_json(doc["count"])


def validate_catalog_row_json(doc) -> None:
    assert set(doc) == {"invariant", "canonical", "manifold", "h1", "branch"}
    assert is_int_list(doc["invariant"], 4)
    assert is_int_list(doc["canonical"], 4)
    assert isinstance(doc["manifold"], str)
    assert doc["branch"] in ("1i", "1ii", "1iii", "2i", "2ii", "3")
    validate_group_json(doc["h1"])


def validate_audit_json(doc) -> None:
    assert {
        "bound",
        "window",
        "coverage_window",
        "grid_size",
        "class_count",
        "violations",
        "targets",
    } <= set(doc)
    for violation in doc["violations"]:
        assert is_int_list(violation["class"], 4)
        assert len(violation["branches"]) == 2
        assert all(b in ("1i", "1ii", "1iii", "2i", "2ii", "3") for b in violation["branches"])
        assert all(is_int_list(m, 4) for m in violation["members"])
        assert all(isinstance(m, str) for m in violation["manifolds"])
    for target in doc["targets"]:
        validate_census_report_json(target)
        assert isinstance(target["covered"], bool)
        assert isinstance(target["grid_members"], int)
