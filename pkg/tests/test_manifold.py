from fractions import Fraction

import pytest

from helpers import grid_tuples
from nmsflow import (
    FlowInvariant,
    LensSpace,
    LensSumRP3,
    SeifertFibration,
    ambient_branch,
    ambient_manifold,
    consistent,
    lens_homeomorphic,
    lens_normal_form,
    manifold_homeomorphic,
    orbit_members,
    parse_manifold,
    render_manifold,
    seifert_isomorphic,
    seifert_isomorphism,
    seifert_normalize,
    seifert_to_lens,
)
from nmsflow.errors import ParseError
from nmsflow.homology import h1_of_descriptor
from nmsflow.manifold import euler_sum


def test_lens_homeomorphic_fixtures():
    assert lens_homeomorphic(LensSpace(7, 2), LensSpace(7, 3))
    assert not lens_homeomorphic(LensSpace(5, 1), LensSpace(5, 2))
    assert lens_homeomorphic(LensSpace(5, 1), LensSpace(5, 1))
    assert lens_homeomorphic(LensSpace(7, 2), LensSpace(-7, 3))
    assert lens_homeomorphic(LensSpace(0, 1), LensSpace(0, -1))
    assert not lens_homeomorphic(LensSpace(7, 2), LensSpace(5, 2))


def test_lens_normal_form_fixtures():
    assert lens_normal_form(LensSpace(-7, 5)) == LensSpace(7, 2)
    assert lens_normal_form(LensSpace(1, 9)) == LensSpace(1, 0)
    assert lens_normal_form(LensSpace(2, -1)) == LensSpace(2, 1)
    assert lens_normal_form(LensSpace(0, -1)) == LensSpace(0, 1)


def test_lens_space_validation():
    with pytest.raises(ValueError):
        LensSpace(6, 3)
    with pytest.raises(ValueError):
        LensSumRP3(4, 2)
    with pytest.raises(ValueError):
        SeifertFibration(((4, 2),))


def test_seifert_isomorphic_fixtures():
    base = SeifertFibration(((3, 1), (3, 1), (2, 1)))
    shifted = SeifertFibration(((3, 4), (3, -2), (2, 1)))
    witness = seifert_isomorphism(base, shifted)
    assert witness is not None and witness[0] == 1
    assert euler_sum(base) == Fraction(7, 6)

    broken = SeifertFibration(((3, -2), (3, 1), (2, 1)))
    assert euler_sum(broken) == Fraction(1, 6)
    assert not seifert_isomorphic(base, broken)

    mirrored = SeifertFibration(((3, -1), (3, -1), (2, -1)))
    witness = seifert_isomorphism(base, mirrored)
    assert witness is not None and witness[0] == -1

    assert not seifert_isomorphic(base, SeifertFibration(((3, 1), (2, 1))))


def test_seifert_normalize_fixtures():
    assert seifert_normalize(SeifertFibration(((-3, -1), (2, 1)))).pairs == ((2, 1), (3, 1))
    absorbed = seifert_normalize(SeifertFibration(((1, 2), (3, 1), (2, 1))))
    assert absorbed.pairs == ((2, 1), (3, 7))
    normal = SeifertFibration(((2, 1), (3, 1), (5, 2)))
    assert seifert_normalize(normal).pairs == normal.pairs
    with pytest.raises(ValueError):
        seifert_normalize(SeifertFibration(((0, 1), (2, 1))))


def test_seifert_normalize_preserves_euler_sum():
    cases = [
        SeifertFibration(((-3, -1), (2, 1))),
        SeifertFibration(((1, 2), (3, 1), (2, 1))),
        SeifertFibration(((1, 3), (1, -2))),
        SeifertFibration(((-5, 2), (-2, 1), (3, 1))),
    ]
    for sfs in cases:
        normal = seifert_normalize(sfs)
        assert euler_sum(normal) == euler_sum(sfs)
        if len(normal.pairs) == len(sfs.pairs):
            witness = seifert_isomorphism(sfs, normal)
            assert witness is not None and witness[0] == 1


def test_seifert_to_lens_fixtures():
    assert seifert_to_lens(SeifertFibration(((3, 1), (5, 1)))) == LensSpace(8, 1)
    assert seifert_to_lens(SeifertFibration(((3, 1),))) == LensSpace(1, 3)
    assert seifert_to_lens(SeifertFibration(())) == LensSpace(0, 1)
    with pytest.raises(ValueError):
        seifert_to_lens(SeifertFibration(((3, 1), (5, 2), (2, 1))))


def test_seifert_to_lens_order_matches_h1():
    # |H1| of the descriptor presentation equals |p| for every two-fiber
    # fibration in the small grid (0 stands for infinite).
    pairs = [
        (a, b)
        for a in range(1, 8)
        for b in range(-7, 8)
        if __import__("math").gcd(a, b) == 1
    ]
    for first in pairs:
        for second in pairs:
            sfs = SeifertFibration((first, second))
            lens = seifert_to_lens(sfs)
            assert h1_of_descriptor(sfs).order() == abs(lens.p), (first, second)


@pytest.mark.parametrize(
    "tup,expected,branch",
    [
        ((1, 0, 3, 1), LensSpace(1, 1), "1ii"),
        ((0, 2, 3, 1), LensSumRP3(3, 1), "2i"),
        ((3, 1, 5, 2), SeifertFibration(((2, 1), (3, 1), (5, 2))), "3"),
        ((0, 1, 1, 0), LensSpace(2, 1), "1i"),
        ((3, 1, 1, 0), LensSpace(1, 1), "1iii"),
        ((3, 1, 0, 1), LensSumRP3(3, 1), "2ii"),
        ((0, 1, 0, 1), LensSumRP3(0, 1), "2i"),
    ],
)
def test_ambient_manifold(tup, expected, branch):
    inv = FlowInvariant(*tup)
    assert ambient_manifold(inv) == expected
    assert ambient_branch(inv) == branch


def test_ambient_manifold_rejects_inadmissible():
    with pytest.raises(ValueError):
        ambient_manifold(FlowInvariant(2, 4, 1, 1))


def test_manifold_homeomorphic_fixtures():
    assert manifold_homeomorphic(LensSpace(7, 2), LensSpace(-7, 3))
    assert not manifold_homeomorphic(
        SeifertFibration(((2, 1), (3, 1), (3, 1))), LensSpace(21, 1)
    )
    assert manifold_homeomorphic(LensSumRP3(3, 1), LensSumRP3(-3, 2))
    assert not manifold_homeomorphic(LensSpace(3, 1), LensSumRP3(3, 1))
    # A fibration that normalizes to two fibers is its lens space.
    assert manifold_homeomorphic(SeifertFibration(((3, 1), (5, 1))), LensSpace(8, 1))
    sfs = SeifertFibration(((2, 1), (3, 1), (5, 2)))
    assert manifold_homeomorphic(sfs, sfs)


def test_ambient_class_invariance_branches_1i_2_3():
    # Members of one consistency class always identify to homeomorphic
    # manifolds on branches 1i, 2i, 2ii and 3.
    for tup in grid_tuples(3):
        if ambient_branch(tup) in ("1ii", "1iii"):
            continue
        target = ambient_manifold(tup)
        for member in orbit_members(tup, range(-4, 5)):
            if not all(abs(v) <= 3 for v in member):
                continue
            assert manifold_homeomorphic(target, ambient_manifold(member)), (tup, member)


def test_seifert_branch_closed_form_moves():
    base = FlowInvariant(3, 1, 5, 2)
    target = ambient_manifold(base)
    for member in orbit_members(base, range(-3, 4)):
        assert consistent(base, member)
        assert manifold_homeomorphic(target, ambient_manifold(member))


def test_seifert_equivalence_relation_small_grid():
    from math import gcd

    pairs = [(a, b) for a in range(2, 5) for b in range(-3, 4) if gcd(a, b) == 1]
    fibrations = [
        SeifertFibration((p1, p2, (2, 1)))
        for p1 in pairs
        for p2 in pairs
    ]
    neighbors = {i: set() for i in range(len(fibrations))}
    for i, first in enumerate(fibrations):
        assert seifert_isomorphic(first, first)
        for j in range(i + 1, len(fibrations)):
            if seifert_isomorphic(first, fibrations[j]):
                assert seifert_isomorphic(fibrations[j], first)
                neighbors[i].add(j)
                neighbors[j].add(i)
    for i, adjacent in neighbors.items():
        for j in adjacent:
            for k in neighbors[j]:
                if k != i:
                    assert k in neighbors[i] or k == i


def test_parse_render_roundtrip():
    specs = [
        "L(7,2)",
        "L(-7,5)",
        "L(3,1)+RP3",
        "SFS((3,1),(5,2),(2,1))",
        "SFS((2,1))",
    ]
    for text in specs:
        manifold = parse_manifold(text)
        assert render_manifold(manifold) == text
        assert parse_manifold(render_manifold(manifold)) == manifold


def test_parse_whitespace_insensitive():
    assert parse_manifold(" L ( 3 , 1 ) + RP3 ") == LensSumRP3(3, 1)
    assert parse_manifold("SFS( (3,1) , (5,2) , (2,1) )") == SeifertFibration(
        ((3, 1), (5, 2), (2, 1))
    )


def test_parse_errors_carry_position():
    for bad in ["L(3;1)", "L(3,1)+RP4", "SFS((3,1)", "L(3,1) junk", "M(3,1)"]:
        with pytest.raises(ParseError):
            parse_manifold(bad)
    try:
        parse_manifold("L(3,x)")
    except ParseError as exc:
        assert exc.position == 4
