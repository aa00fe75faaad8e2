"""The integer 4-tuple invariant of a flow and its consistency relation.

A flow with one twisted saddle orbit is encoded by an admissible tuple
``(l1, b1, l2, b2)``: the homotopy data of the saddle separatrix curves
on the repelling-side and attracting-side tori.  Two tuples are
*consistent* (encode topologically equivalent flows) when their l's
agree and for some delta in {-1, +1}

* ``b_i == delta * b'_i  (mod l_i)`` for i = 1, 2, and
* ``l1*l2*(2*l2*(b1 - delta*b1') + 2*l1*(b2 - delta*b2') + l1*l2*(1 - delta)) == 0``.

Congruence modulo 0 is equality throughout.

Solving the linear condition gives the consistency classes in closed
form.  For l1*l2 != 0 they are two one-parameter orbits:

* delta = +1: ``(l1, b1 + k*l1, l2, b2 - k*l2)``,
* delta = -1: ``(l1, -b1 + s*l1, l2, -b2 - (s + 1)*l2)``;

for l1*l2 = 0 the residue shifts decouple and act independently on each
coordinate with nonzero l (a coordinate with l_i = 0 is frozen at
``delta * b_i``).  `orbit_members` materialises these orbits and the
test-suite re-verifies the algebra against the raw definition.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .errors import ParseError
from .intlat import congruent, gcd, least_residue


class FlowInvariant(NamedTuple):
    l1: int
    b1: int
    l2: int
    b2: int


class ConsistencyWitness(NamedTuple):
    """A (delta, shift) pair that replays one tuple onto a consistent one."""

    delta: int
    shift: int


def parse_invariant(text: str) -> FlowInvariant:
    """Parse "l1,b1,l2,b2" (optional spaces) into a FlowInvariant."""
    parts = []
    pos = 0
    for chunk in text.split(","):
        token = chunk.strip()
        if not token:
            raise ParseError("empty component in invariant", pos)
        try:
            parts.append(int(token))
        except ValueError:
            raise ParseError(f"invalid integer {token!r}", pos + chunk.index(token)) from None
        pos += len(chunk) + 1
    if len(parts) != 4:
        raise ParseError(f"expected 4 comma-separated integers, got {len(parts)}", 0)
    return FlowInvariant(*parts)


def render_invariant(inv: FlowInvariant) -> str:
    return ",".join(str(v) for v in inv)


def is_admissible(inv: FlowInvariant) -> bool:
    l1, b1, l2, b2 = inv
    first = (l1, b1) in ((0, 2), (0, -2)) or gcd(l1, b1) == 1
    return first and gcd(l2, b2) == 1


def admissibility_failure(inv: FlowInvariant) -> str | None:
    """Human-readable reason the tuple is inadmissible, or None."""
    l1, b1, l2, b2 = inv
    if (l1, b1) not in ((0, 2), (0, -2)) and gcd(l1, b1) != 1:
        return f"gcd(l1,b1)={gcd(l1, b1)}"
    if gcd(l2, b2) != 1:
        return f"gcd(l2,b2)={gcd(l2, b2)}"
    return None


def _require_admissible(inv: FlowInvariant) -> None:
    reason = admissibility_failure(inv)
    if reason is not None:
        raise ValueError(f"inadmissible invariant {tuple(inv)}: {reason}")


def consistent(a: FlowInvariant, b: FlowInvariant) -> bool:
    return consistency_witness(a, b) is not None


def consistency_witness(a: FlowInvariant, b: FlowInvariant) -> ConsistencyWitness | None:
    """Witness for consistency of two admissible tuples, or None.

    When both delta values succeed the +1 witness is returned.
    """
    _require_admissible(a)
    _require_admissible(b)
    if a.l1 != b.l1 or a.l2 != b.l2:
        return None
    l1, l2 = a.l1, a.l2
    for delta in (1, -1):
        if not congruent(a.b1, delta * b.b1, l1):
            continue
        if not congruent(a.b2, delta * b.b2, l2):
            continue
        balance = (
            2 * l2 * (a.b1 - delta * b.b1)
            + 2 * l1 * (a.b2 - delta * b.b2)
            + l1 * l2 * (1 - delta)
        )
        if l1 * l2 * balance != 0:
            continue
        if l1 != 0:
            shift = (b.b1 - delta * a.b1) // l1 if delta == 1 else (b.b1 + a.b1) // l1
        elif l2 != 0:
            shift = (b.b2 - delta * a.b2) // l2
        else:
            shift = 0
        return ConsistencyWitness(delta, shift)
    return None


def apply_witness(inv: FlowInvariant, witness: ConsistencyWitness) -> FlowInvariant:
    """Replay a witness; consistency_witness(a, b) replayed on a gives b."""
    l1, b1, l2, b2 = inv
    delta, shift = witness
    if l1 != 0 and l2 != 0:
        if delta == 1:
            return FlowInvariant(l1, b1 + shift * l1, l2, b2 - shift * l2)
        return FlowInvariant(l1, -b1 + shift * l1, l2, -b2 - (shift + 1) * l2)
    if l1 != 0:
        return FlowInvariant(l1, delta * b1 + shift * l1, l2, delta * b2)
    if l2 != 0:
        return FlowInvariant(l1, delta * b1, l2, delta * b2 + shift * l2)
    return FlowInvariant(l1, delta * b1, l2, delta * b2)


def orbit_members(inv: FlowInvariant, shifts: Iterable[int]) -> list[FlowInvariant]:
    """All members of the consistency class reachable with shifts in the window.

    Returns a sorted, duplicate-free list; the window must contain 0 for
    the list to contain `inv` itself.
    """
    _require_admissible(inv)
    shift_list = list(shifts)
    members: set[FlowInvariant] = set()
    if inv.l1 != 0 and inv.l2 != 0:
        for k in shift_list:
            members.add(apply_witness(inv, ConsistencyWitness(1, k)))
            members.add(apply_witness(inv, ConsistencyWitness(-1, k)))
    else:
        for delta in (1, -1):
            if inv.l1 == 0 and inv.l2 == 0:
                members.add(apply_witness(inv, ConsistencyWitness(delta, 0)))
            else:
                for t in shift_list:
                    base = FlowInvariant(inv.l1, delta * inv.b1, inv.l2, delta * inv.b2)
                    if inv.l1 != 0:
                        members.add(base._replace(b1=base.b1 + t * inv.l1))
                    else:
                        members.add(base._replace(b2=base.b2 + t * inv.l2))
    return sorted(members)


def canonical_form(inv: FlowInvariant) -> FlowInvariant:
    """Deterministic least representative of the consistency class.

    For each delta the orbit member with b1 reduced to its least residue
    mod l1 (b2 then forced by the orbit, or reduced mod l2 when the
    orbit decouples) is a candidate; the lexicographically smaller of
    the two candidates is the canonical form.  Constant on classes and
    idempotent.
    """
    _require_admissible(inv)
    l1, b1, l2, b2 = inv
    candidates = []
    for delta in (1, -1):
        if l1 != 0 and l2 != 0:
            if delta == 1:
                k = (least_residue(b1, l1) - b1) // l1
                candidates.append(apply_witness(inv, ConsistencyWitness(1, k)))
            else:
                s = (least_residue(-b1, l1) + b1) // l1
                candidates.append(apply_witness(inv, ConsistencyWitness(-1, s)))
        else:
            nb1 = least_residue(delta * b1, l1) if l1 != 0 else delta * b1
            nb2 = least_residue(delta * b2, l2) if l2 != 0 else delta * b2
            candidates.append(FlowInvariant(l1, nb1, l2, nb2))
    return min(candidates)
