"""Manifold descriptors and homeomorphism deciders.

Three shapes arise as ambient manifolds of the flows in this class:
lens spaces L(p, q), connected sums L(p, q) # RP^3, and Seifert
fibrations over the 2-sphere with three special fibers, one of them a
(2, 1) fiber.  `ambient_manifold` maps an admissible invariant tuple to
its descriptor with a fixed branch precedence:

* 1i/1ii/1iii when |l1| = 1 or |l2| = 1 (lens space),
* 2i/2ii when l1*l2 = 0 otherwise (connected sum with RP^3),
* 3 otherwise (Seifert fibration (l1,b1), (l2,b2), (2,1)).

The branch formulas are applied to the tuple exactly as written; the
audit machinery in `census` measures where that literal reading fails
to be constant on consistency classes (branches 1ii/1iii).

Lens homeomorphism uses the classical criterion |p| = |p'| with
q == +-q' or q*q' == +-1 (mod p); Seifert isomorphism matches fiber
multiplicities, beta residues under a global sign, and the exact
rational Euler sum.  Cross-shape comparisons (a prime lens space
against a connected sum, or a genuinely 3-fiber Seifert space against a
lens space) are false by prime decomposition and by the at-most-two-
special-fibers characterisation of lens spaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError
from .intlat import congruent, ext_gcd, gcd, least_residue, symmetric_inverse, symmetric_residue
from .invariant import FlowInvariant, admissibility_failure


@dataclass(frozen=True)
class LensSpace:
    p: int
    q: int

    def __post_init__(self):
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"lens space needs gcd(p, q) = 1, got ({self.p}, {self.q})")


@dataclass(frozen=True)
class LensSumRP3:
    """L(p, q) # RP^3; only the lens summand is recorded."""

    p: int
    q: int

    def __post_init__(self):
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"lens summand needs gcd(p, q) = 1, got ({self.p}, {self.q})")


@dataclass(frozen=True)
class SeifertFibration:
    """Seifert fibration over the 2-sphere with the given (alpha, beta) fibers."""

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs):
        normalized = tuple((int(a), int(b)) for a, b in pairs)
        for a, b in normalized:
            if gcd(a, b) != 1:
                raise ValueError(f"fiber ({a}, {b}) is not coprime")
        object.__setattr__(self, "pairs", normalized)


Manifold = Union[LensSpace, LensSumRP3, SeifertFibration]


def euler_sum(sfs: SeifertFibration) -> Fraction:
    total = Fraction(0)
    for a, b in sfs.pairs:
        if a == 0:
            raise ValueError("Euler sum is undefined for a fiber with multiplicity 0")
        total += Fraction(b, a)
    return total


def lens_homeomorphic(a: LensSpace, b: LensSpace) -> bool:
    if abs(a.p) != abs(b.p):
        return False
    p = a.p
    return (
        congruent(a.q, b.q, p)
        or congruent(a.q, -b.q, p)
        or congruent(a.q * b.q, 1, p)
        or congruent(a.q * b.q, -1, p)
    )


def lens_normal_form(a: LensSpace) -> LensSpace:
    """The unique representative (|p|, q_c) of the homeomorphism class.

    q_c is the smaller of the least residues of +-q and of the inverses
    of +-q modulo p; in particular (0, 1), (1, 0) and (2, 1) come out
    for the sphere-product, the 3-sphere and projective space.
    """
    if a.p == 0:
        return LensSpace(0, 1)
    return LensSpace(abs(a.p), min(symmetric_residue(a.p, a.q), symmetric_inverse(a.p, a.q)))


def seifert_isomorphism(a: SeifertFibration, b: SeifertFibration):
    """Witness (delta, permutation) for fibration isomorphism, or None.

    sigma matches fiber slots (alpha_i = alpha'_sigma(i), beta_i ==
    delta*beta'_sigma(i) mod alpha_i) and the exact Euler sums satisfy
    sum = delta * sum'.  delta = +1 is preferred, then the
    lexicographically first permutation.  (-alpha, -beta) prescribes the
    same filling curve as (alpha, beta), so multiplicities are compared
    after flipping both to alpha > 0.
    """
    if len(a.pairs) != len(b.pairs):
        return None
    for alpha, _ in a.pairs + b.pairs:
        if alpha == 0:
            raise ValueError("fibration isomorphism is undefined for multiplicity-0 fibers")
    flip = lambda pairs: [(-x, -y) if x < 0 else (x, y) for x, y in pairs]
    pairs_a, pairs_b = flip(a.pairs), flip(b.pairs)
    sum_a, sum_b = euler_sum(a), euler_sum(b)
    indices = range(len(pairs_b))
    for delta in (1, -1):
        if sum_a != delta * sum_b:
            continue
        for sigma in itertools.permutations(indices):
            ok = True
            for i, j in enumerate(sigma):
                alpha, beta = pairs_a[i]
                alpha_b, beta_b = pairs_b[j]
                if alpha != alpha_b:
                    ok = False
                    break
                if not congruent(beta, delta * beta_b, alpha):
                    ok = False
                    break
            if ok:
                return delta, sigma
    return None


def seifert_isomorphic(a: SeifertFibration, b: SeifertFibration) -> bool:
    return seifert_isomorphism(a, b) is not None


def seifert_normalize(sfs: SeifertFibration) -> SeifertFibration:
    """Flip negative multiplicities, absorb multiplicity-1 fibers, sort.

    (alpha, beta) with alpha < 0 becomes (-alpha, -beta); each (1, beta)
    fiber is absorbed into the first surviving fiber as beta*alpha_1
    extra wrapping (if only multiplicity-1 fibers remain they collapse
    to a single one).  Fibers are then sorted by (alpha, beta mod
    alpha).  The exact Euler sum is preserved throughout.
    """
    pairs = []
    for a, b in sfs.pairs:
        if a == 0:
            raise ValueError("cannot normalize a fiber with multiplicity 0")
        pairs.append((-a, -b) if a < 0 else (a, b))
    ones = [b for a, b in pairs if a == 1]
    rest = [(a, b) for a, b in pairs if a > 1]
    if ones:
        if rest:
            a0, b0 = rest[0]
            rest[0] = (a0, b0 + sum(ones) * a0)
        else:
            rest = [(1, sum(ones))]
    rest.sort(key=lambda ab: (ab[0], least_residue(ab[1], ab[0])))
    return SeifertFibration(rest)


def seifert_to_lens(sfs: SeifertFibration) -> LensSpace:
    """Lens space carried by a fibration with at most two special fibers.

    No fibers gives L(0, 1) (the sphere product); one fiber (alpha,
    beta) gives L(beta, alpha); two fibers give L(p, q) with
    p = beta1*alpha2 + alpha1*beta2 and q = beta1*nu2 + alpha1*xi2 for
    any Bezout solution alpha2*xi2 - nu2*beta2 = 1, normalized since q
    is only well-defined mod p.
    """
    pairs = seifert_normalize(sfs).pairs
    if len(pairs) > 2:
        raise ValueError(f"expected at most two special fibers, got {len(pairs)}")
    if not pairs:
        return LensSpace(0, 1)
    if len(pairs) == 1:
        alpha, beta = pairs[0]
        return LensSpace(beta, alpha)
    (a1, b1), (a2, b2) = pairs
    _, xi2, y = ext_gcd(a2, b2)
    nu2 = -y
    p = b1 * a2 + a1 * b2
    q = b1 * nu2 + a1 * xi2
    return lens_normal_form(LensSpace(p, q))


def ambient_branch(inv: FlowInvariant) -> str:
    """Identification branch (1i|1ii|1iii|2i|2ii|3) taken for this tuple."""
    reason = admissibility_failure(inv)
    if reason is not None:
        raise ValueError(f"inadmissible invariant {tuple(inv)}: {reason}")
    l1, _, l2, _ = inv
    if abs(l1) == 1 or abs(l2) == 1:
        if l1 * l2 == 0:
            return "1i"
        return "1ii" if abs(l1) == 1 else "1iii"
    if l1 == 0:
        return "2i"
    if l2 == 0:
        return "2ii"
    return "3"


def ambient_manifold(inv: FlowInvariant) -> Manifold:
    """Ambient manifold of the flow with this invariant, by literal branch.

    The formulas are evaluated on the tuple as given (no
    canonicalisation); the audit quantifies the branches where this is
    not constant on consistency classes.
    """
    branch = ambient_branch(inv)
    l1, b1, l2, b2 = inv
    if branch == "1i":
        return LensSpace(2, 1)
    if branch == "1ii":
        return LensSpace(l2 - 2 * b2, b2)
    if branch == "1iii":
        return LensSpace(l1 - 2 * b1, b1)
    if branch == "2i":
        return LensSumRP3(l2, b2)
    if branch == "2ii":
        return LensSumRP3(l1, b1)
    return seifert_normalize(SeifertFibration(((l1, b1), (l2, b2), (2, 1))))


def manifold_homeomorphic(a: Manifold, b: Manifold) -> bool:
    """Decide homeomorphism of two descriptors.

    Seifert descriptors with at most two special fibers after
    normalization are converted to lens spaces first; comparisons
    across genuinely different shapes are false.
    """
    a = _reduce(a)
    b = _reduce(b)
    if isinstance(a, LensSpace) and isinstance(b, LensSpace):
        return lens_homeomorphic(a, b)
    if isinstance(a, LensSumRP3) and isinstance(b, LensSumRP3):
        return lens_homeomorphic(LensSpace(a.p, a.q), LensSpace(b.p, b.q))
    if isinstance(a, SeifertFibration) and isinstance(b, SeifertFibration):
        return seifert_isomorphic(a, b)
    return False


def _reduce(m: Manifold) -> Manifold:
    if isinstance(m, SeifertFibration):
        normal = seifert_normalize(m)
        if len(normal.pairs) <= 2:
            return seifert_to_lens(normal)
        return normal
    return m


def render_manifold(m: Manifold) -> str:
    if isinstance(m, LensSpace):
        return f"L({m.p},{m.q})"
    if isinstance(m, LensSumRP3):
        return f"L({m.p},{m.q})+RP3"
    inner = ",".join(f"({a},{b})" for a, b in m.pairs)
    return f"SFS({inner})"


def manifold_normal_form(m: Manifold) -> Manifold:
    """Canonical representative used for rendering and grouping."""
    if isinstance(m, LensSpace):
        return lens_normal_form(m)
    if isinstance(m, LensSumRP3):
        lens = lens_normal_form(LensSpace(m.p, m.q))
        return LensSumRP3(lens.p, lens.q)
    return seifert_normalize(m)


class _Cursor:
    """Character cursor over a manifold-spec string, skipping whitespace."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str) -> None:
        self._skip_ws()
        end = self.pos
        matched = 0
        while matched < len(literal) and end < len(self.text):
            if self.text[end].isspace():
                end += 1
                continue
            if self.text[end] != literal[matched]:
                raise ParseError(f"expected {literal!r}", self.pos)
            matched += 1
            end += 1
        if matched < len(literal):
            raise ParseError(f"expected {literal!r}", self.pos)
        self.pos = end

    def try_expect(self, literal: str) -> bool:
        saved = self.pos
        try:
            self.expect(literal)
            return True
        except ParseError:
            self.pos = saved
            return False

    def integer(self) -> int:
        self._skip_ws()
        start = self.pos
        end = start
        if end < len(self.text) and self.text[end] in "+-":
            end += 1
        digits = end
        while end < len(self.text) and self.text[end].isdigit():
            end += 1
        if end == digits:
            raise ParseError("expected an integer", start)
        self.pos = end
        return int(self.text[start:end])

    def at_end(self) -> bool:
        self._skip_ws()
        return self.pos >= len(self.text)


def parse_manifold(text: str) -> Manifold:
    """Parse `L(p,q)`, `L(p,q)+RP3` or `SFS((a1,b1),...)`; whitespace-insensitive."""
    cur = _Cursor(text)
    if cur.try_expect("SFS("):
        pairs = []
        while True:
            cur.expect("(")
            a = cur.integer()
            cur.expect(",")
            b = cur.integer()
            cur.expect(")")
            pairs.append((a, b))
            if not cur.try_expect(","):
                break
        cur.expect(")")
        if not cur.at_end():
            raise ParseError("trailing characters after manifold spec", cur.pos)
        return SeifertFibration(pairs)
    cur.expect("L(")
    p = cur.integer()
    cur.expect(",")
    q = cur.integer()
    cur.expect(")")
    if cur.at_end():
        return LensSpace(p, q)
    cur.expect("+RP3")
    if not cur.at_end():
        raise ParseError("trailing characters after manifold spec", cur.pos)
    return LensSumRP3(p, q)
