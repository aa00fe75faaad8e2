import pytest

from helpers import consistent_oracle, grid_tuples
from nmsflow import (
    FlowInvariant,
    apply_witness,
    canonical_form,
    consistency_witness,
    consistent,
    is_admissible,
    orbit_members,
    parse_invariant,
    render_invariant,
)
from nmsflow.errors import ParseError
from nmsflow.invariant import admissibility_failure


@pytest.mark.parametrize(
    "tup,expected",
    [
        ((0, 2, 3, 1), True),
        ((0, -2, 3, 1), True),
        ((2, 4, 1, 1), False),
        ((0, 3, 1, 0), False),
        ((0, 0, 1, 0), False),
        ((1, 0, 0, 0), False),
        ((3, 1, 5, 2), True),
    ],
)
def test_is_admissible(tup, expected):
    assert is_admissible(FlowInvariant(*tup)) is expected


def test_admissibility_failure_messages():
    assert admissibility_failure(FlowInvariant(2, 4, 1, 1)) == "gcd(l1,b1)=2"
    assert admissibility_failure(FlowInvariant(1, 1, 2, 4)) == "gcd(l2,b2)=2"
    assert admissibility_failure(FlowInvariant(3, 1, 5, 2)) is None


def test_consistent_examples():
    a = FlowInvariant(3, 1, 5, 2)
    w = consistency_witness(a, FlowInvariant(3, 4, 5, -3))
    assert w is not None and w.delta == 1
    assert not consistent(a, FlowInvariant(3, 1, 5, 7))
    assert consistent(a, a)
    assert consistency_witness(a, a).delta == 1


def test_consistent_rejects_inadmissible():
    with pytest.raises(ValueError):
        consistent(FlowInvariant(2, 4, 1, 1), FlowInvariant(2, 4, 1, 1))


def test_witness_replay_roundtrip():
    pairs = [
        (FlowInvariant(3, 1, 5, 2), FlowInvariant(3, 4, 5, -3)),
        (FlowInvariant(3, 1, 5, 2), FlowInvariant(3, 5, 5, -17)),
        (FlowInvariant(0, 2, 3, 1), FlowInvariant(0, 2, 3, 4)),
        (FlowInvariant(0, 2, 3, 1), FlowInvariant(0, -2, 3, 2)),
        (FlowInvariant(1, 0, 0, 1), FlowInvariant(1, 3, 0, 1)),
        (FlowInvariant(0, 1, 0, 1), FlowInvariant(0, -1, 0, -1)),
    ]
    for a, b in pairs:
        w = consistency_witness(a, b)
        assert w is not None, (a, b)
        assert apply_witness(a, w) == b


def test_orbit_members_examples():
    base = FlowInvariant(3, 1, 5, 2)
    members = orbit_members(base, range(-3, 4))
    assert FlowInvariant(3, 4, 5, -3) in members
    assert FlowInvariant(3, 5, 5, -17) in members
    assert base in members
    assert FlowInvariant(0, 2, 3, 4) in orbit_members(FlowInvariant(0, 2, 3, 1), range(-2, 3))
    for member in members:
        assert consistent(base, member)


def test_orbit_members_rejects_inadmissible():
    with pytest.raises(ValueError):
        orbit_members(FlowInvariant(2, 4, 1, 1), range(-1, 2))


def test_canonical_form_examples():
    assert canonical_form(FlowInvariant(3, 4, 5, -3)) == FlowInvariant(3, 1, 5, 2)
    # Candidate set for (0,2,3,4) is {(0,2,3,1), (0,-2,3,2)}; the
    # lexicographic minimum is the delta=-1 candidate.
    assert canonical_form(FlowInvariant(0, 2, 3, 4)) == FlowInvariant(0, -2, 3, 2)
    assert canonical_form(FlowInvariant(0, 2, 3, 1)) == FlowInvariant(0, -2, 3, 2)


def test_canonical_form_idempotent_and_consistent():
    for tup in grid_tuples(2):
        canon = canonical_form(tup)
        assert canonical_form(canon) == canon
        assert consistent(tup, canon)


def test_consistent_matches_direct_definition_small_grid():
    grid = grid_tuples(2)
    by_l = {}
    for tup in grid:
        by_l.setdefault((tup.l1, tup.l2), []).append(tup)
    for members in by_l.values():
        for a in members:
            for b in members:
                assert consistent(a, b) == consistent_oracle(a, b), (a, b)


def test_never_consistent_across_l_pairs():
    assert not consistent(FlowInvariant(3, 1, 5, 2), FlowInvariant(-3, 1, 5, 2))
    assert not consistent(FlowInvariant(3, 1, 5, 2), FlowInvariant(3, 1, -5, 2))


def test_parse_and_render():
    assert parse_invariant("3,1,5,2") == FlowInvariant(3, 1, 5, 2)
    assert parse_invariant(" 3 , -1 , 5 , 2 ") == FlowInvariant(3, -1, 5, 2)
    assert render_invariant(FlowInvariant(3, -1, 5, 2)) == "3,-1,5,2"
    with pytest.raises(ParseError):
        parse_invariant("3,1,5")
    with pytest.raises(ParseError):
        parse_invariant("3,x,5,2")
    exc = None
    try:
        parse_invariant("3,1,5,z")
    except ParseError as e:
        exc = e
    assert exc is not None and exc.position == 6
