"""Exact integer, residue, and torus-curve-lattice primitives.

Everything here is pure integer arithmetic; Python's native bignums keep
all of it exact.  Conventions that the rest of the library leans on:

* congruence modulo 0 means equality, and the least residue modulo 0 is
  the number itself;
* gcd(0, 0) = 0.

Curves on a torus are recorded by their homotopy class ``<l, m>`` in a
fixed (longitude, meridian) basis, with the algebraic intersection
pairing ``index(a, b) = a.l * b.m - a.m * b.l``.
"""

from __future__ import annotations

from typing import NamedTuple


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, x, y) with g = gcd(|a|, |b|) >= 0 and a*x + b*y = g.

    gcd(0, 0) is 0, with coefficients (0, 0).
    """
    if a == 0 and b == 0:
        return 0, 0, 0
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def gcd(a: int, b: int) -> int:
    return ext_gcd(a, b)[0]


def congruent(a: int, b: int, m: int) -> bool:
    """a == b (mod m), where modulus 0 means literal equality."""
    if m == 0:
        return a == b
    return (a - b) % m == 0


def least_residue(a: int, m: int) -> int:
    """The unique r in [0, |m|) congruent to a, or a itself when m = 0."""
    if m == 0:
        return a
    return a % abs(m)


def symmetric_residue(p: int, q: int) -> int:
    """Smallest q' >= 0 with q == q' or q == -q' (mod p).

    Requires gcd(p, q) = 1; for p = 0 this is |q|.
    """
    if gcd(p, q) != 1:
        raise ValueError(f"symmetric_residue requires gcd(p, q) = 1, got ({p}, {q})")
    if p == 0:
        return abs(q)
    m = abs(p)
    r = q % m
    return min(r, (-q) % m)


def symmetric_inverse(p: int, q: int) -> int:
    """Smallest q' >= 0 with q*q' == +1 or -1 (mod p).

    Requires gcd(p, q) = 1.  For p = 0 the congruence is literal, so q
    must be a unit and the answer is 1; modulo +-1 everything vanishes
    and the answer is 0.
    """
    if gcd(p, q) != 1:
        raise ValueError(f"symmetric_inverse requires gcd(p, q) = 1, got ({p}, {q})")
    if p == 0:
        if abs(q) != 1:
            raise ValueError(f"q*q' == +-1 has no solution for p = 0, q = {q}")
        return 1
    m = abs(p)
    for cand in range(m):
        if congruent(q * cand, 1, m) or congruent(q * cand, -1, m):
            return cand
    raise AssertionError("unreachable: q is invertible mod p")


class CurveClass(NamedTuple):
    """Homotopy class <l, m> of a curve on the boundary torus."""

    l: int
    m: int

    def is_primitive(self) -> bool:
        return gcd(self.l, self.m) == 1


class GluingMatrix(NamedTuple):
    """2x2 integer matrix (a, b; c, d) acting on curve classes.

    Row vectors act on the left, so <l, m> maps to <l*a + m*c, l*b + m*d>.
    """

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def is_unimodular(self) -> bool:
        return self.det() in (-1, 1)

    def apply(self, curve: CurveClass) -> CurveClass:
        if not self.is_unimodular():
            raise ValueError(f"gluing matrix must have determinant +-1, got {self.det()}")
        return CurveClass(
            curve.l * self.a + curve.m * self.c,
            curve.l * self.b + curve.m * self.d,
        )


def intersection_index(gamma: CurveClass, sigma: CurveClass) -> int:
    """Algebraic intersection number of two curve classes on the torus."""
    return gamma.l * sigma.m - gamma.m * sigma.l


def dual_curve(gamma: CurveClass, n: int = 0, sign: int = 1) -> CurveClass:
    """The n-th curve class whose intersection index with gamma is `sign`.

    All classes meeting gamma with index +-1 form one integer family
    <+-b + n*l, +-c + n*m> over a base dual (b, c) with l*c - m*b = 1.
    The base dual is pinned deterministically: b is reduced to its least
    residue mod l (when l != 0), which in particular sends <2, 1> to the
    base dual (1, 1).
    """
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +-1, got {sign}")
    l, m = gamma
    g, x, y = ext_gcd(l, m)
    if g != 1:
        raise ValueError(f"dual_curve requires a primitive class, got <{l}, {m}>")
    # l*x + m*y = 1, so (b, c) = (-y, x) satisfies l*c - m*b = 1.
    b, c = -y, x
    if l != 0:
        shift = (least_residue(b, l) - b) // l
        b += shift * l
        c += shift * m
    return CurveClass(sign * b + n * l, sign * c + n * m)


def inverse_equipment(beta: int, alpha: int) -> tuple[int, int]:
    """Equipment (-beta, xi) of the core curve that undoes a (beta, alpha) filling.

    xi is the least non-negative inverse of alpha modulo |beta|.
    """
    if beta == 0:
        raise ValueError("inverse equipment is undefined for beta = 0")
    if gcd(alpha, beta) != 1:
        raise ValueError(f"equipment ({beta}, {alpha}) is not coprime")
    _, x, _ = ext_gcd(alpha, beta)
    xi = least_residue(x, beta)
    return -beta, xi
