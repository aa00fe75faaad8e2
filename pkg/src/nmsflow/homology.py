"""Independent first-homology oracle.

The identification map in `manifold` is cross-checked against H1
computed two ways:

* from a presentation matrix read off the descriptor itself, and
* from the Dehn-surgery presentation of the realization construction:
  the flow's manifold is surgery on three circle fibers of the sphere
  product, with equipment (-b2, l2), (-sign, 2), (-b1, l1) on the
  attracting, saddle and repelling fibers.  In homology (generators:
  fiber class h, then the three filling meridians) that is the 4x4
  relation matrix

      ( 0      1   1  1 )      pants relation mu_A + mu_S + mu_R = 0
      (-b2    l2   0  0 )
      (-sign   0   2  0 )
      (-b1     0   0 l1 )

  with the printed equipment corresponding to saddle sign +1 and the
  opposite orientation convention to -1.

Groups are reduced with an integer Smith normal form; Python bignums
make the row/column reduction exact at any size.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlat import ext_gcd
from .invariant import FlowInvariant, admissibility_failure
from .manifold import (
    LensSpace,
    LensSumRP3,
    Manifold,
    ambient_branch,
    ambient_manifold,
)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "IntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(v for row in rows for v in row))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def to_rows(self) -> list[list[int]]:
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)
        ]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        a, b = self.to_rows(), other.to_rows()
        rows = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(rows) if rows else IntMatrix(0, other.cols, ())

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Diagonalize over the integers: returns (D, U, V) with U*A*V = D.

    U and V are unimodular and D is diagonal with d1 | d2 | ... and all
    d_i >= 0.  Columns and rows are cleared with unimodular 2x2 Bezout
    transforms, which keeps intermediate entries from exploding.
    """
    m = a.to_rows()
    nrows, ncols = a.rows, a.cols
    u = IntMatrix.identity(nrows).to_rows()
    v = IntMatrix.identity(ncols).to_rows()

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def clear_col_entry(t, i):
        # Unimodular transform on rows (t, i) making m[i][t] = 0.
        pivot, entry = m[t][t], m[i][t]
        if entry == 0:
            return
        if entry % pivot == 0:
            q = entry // pivot
            for j in range(ncols):
                m[i][j] -= q * m[t][j]
            for j in range(nrows):
                u[i][j] -= q * u[t][j]
            return
        g, x, y = ext_gcd(pivot, entry)
        p_div, e_div = pivot // g, entry // g
        for j in range(ncols):
            top, bot = m[t][j], m[i][j]
            m[t][j] = x * top + y * bot
            m[i][j] = -e_div * top + p_div * bot
        for j in range(nrows):
            top, bot = u[t][j], u[i][j]
            u[t][j] = x * top + y * bot
            u[i][j] = -e_div * top + p_div * bot

    def clear_row_entry(t, j):
        # Unimodular transform on columns (t, j) making m[t][j] = 0.
        pivot, entry = m[t][t], m[t][j]
        if entry == 0:
            return
        if entry % pivot == 0:
            q = entry // pivot
            for row in m:
                row[j] -= q * row[t]
            for row in v:
                row[j] -= q * row[t]
            return
        g, x, y = ext_gcd(pivot, entry)
        p_div, e_div = pivot // g, entry // g
        for row in m:
            left, right = row[t], row[j]
            row[t] = x * left + y * right
            row[j] = -e_div * left + p_div * right
        for row in v:
            left, right = row[t], row[j]
            row[t] = x * left + y * right
            row[j] = -e_div * left + p_div * right

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(t):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nrows, ncols):
        pivot = find_pivot(t)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            for i in range(t + 1, nrows):
                clear_col_entry(t, i)
            for j in range(t + 1, ncols):
                clear_row_entry(t, j)
            # Row clearing with a proper Bezout step mixes column t and
            # can re-dirty it; loop until both stay clear.
            if all(m[i][t] == 0 for i in range(t + 1, nrows)):
                break
        # Enforce divisibility: fold any non-divisible entry into row t
        # and restart the block reduction.
        divisor = m[t][t]
        culprit = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if m[i][j] % divisor != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            for j in range(ncols):
                m[t][j] += m[culprit][j]
            for j in range(nrows):
                u[t][j] += u[culprit][j]
            continue
        if m[t][t] < 0:
            negate_row(t)
        t += 1
    d = IntMatrix.from_rows(m) if m else IntMatrix(0, ncols, ())
    return d, IntMatrix.from_rows(u), IntMatrix.from_rows(v)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus torsion chain d1 | d2 | ..."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for prev, cur in zip((None,) + self.torsion, self.torsion):
            if cur < 2:
                raise ValueError(f"torsion coefficients must be >= 2, got {cur}")
            if prev is not None and cur % prev != 0:
                raise ValueError(f"torsion chain must divide: {prev} | {cur} fails")

    def order(self) -> int:
        """Group order, with 0 standing for infinite."""
        if self.rank > 0:
            return 0
        result = 1
        for d in self.torsion:
            result *= d
        return result

    def render(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def group_from_presentation(a: IntMatrix) -> AbelianGroup:
    """Cokernel of the relation matrix (rows = relations, columns = generators)."""
    d, _, _ = smith_normal_form(a)
    diagonal = [d[i, i] for i in range(min(d.rows, d.cols))]
    nonzero = [x for x in diagonal if x != 0]
    torsion = tuple(x for x in nonzero if x >= 2)
    return AbelianGroup(rank=a.cols - len(nonzero), torsion=torsion)


@dataclass(frozen=True)
class SurgeryPresentation:
    """Relation matrix of the realization surgery; columns (h, mu_A, mu_S, mu_R)."""

    matrix: IntMatrix
    saddle_sign: int


def surgery_presentation(inv: FlowInvariant, saddle_sign: int = 1) -> SurgeryPresentation:
    reason = admissibility_failure(inv)
    if reason is not None:
        raise ValueError(f"inadmissible invariant {tuple(inv)}: {reason}")
    if saddle_sign not in (1, -1):
        raise ValueError(f"saddle sign must be +-1, got {saddle_sign}")
    l1, b1, l2, b2 = inv
    if (l1, b1) in ((0, 2), (0, -2)):
        raise ValueError(f"no surgery model for (l1, b1) = ({l1}, {b1})")
    matrix = IntMatrix.from_rows(
        [
            [0, 1, 1, 1],
            [-b2, l2, 0, 0],
            [-saddle_sign, 0, 2, 0],
            [-b1, 0, 0, l1],
        ]
    )
    return SurgeryPresentation(matrix, saddle_sign)


def surgery_group(inv: FlowInvariant, saddle_sign: int = 1) -> AbelianGroup:
    return group_from_presentation(surgery_presentation(inv, saddle_sign).matrix)


def surgery_order_formula(inv: FlowInvariant, saddle_sign: int) -> int:
    """Closed form |2*l2*b1 + 2*l1*b2 + sign*l1*l2| for the torsion order."""
    l1, b1, l2, b2 = inv
    return abs(2 * l2 * b1 + 2 * l1 * b2 + saddle_sign * l1 * l2)


def h1_of_descriptor(m: Manifold) -> AbelianGroup:
    """First homology from a presentation read off the descriptor."""
    if isinstance(m, LensSpace):
        return group_from_presentation(IntMatrix.from_rows([[m.p]]))
    if isinstance(m, LensSumRP3):
        return group_from_presentation(IntMatrix.from_rows([[m.p, 0], [0, 2]]))
    r = len(m.pairs)
    rows = []
    for i, (alpha, beta) in enumerate(m.pairs):
        row = [0] * (r + 1)
        row[i] = alpha
        row[r] = beta
        rows.append(row)
    rows.append([1] * r + [0])
    return group_from_presentation(IntMatrix.from_rows(rows))


@dataclass(frozen=True)
class H1MatchReport:
    """Cross-check of the descriptor homology against the surgery oracle."""

    invariant: FlowInvariant
    branch: str
    descriptor: Manifold
    descriptor_group: AbelianGroup
    surgery_groups: dict[int, AbelianGroup] | None
    formula_orders: dict[int, int] | None
    matching_signs: tuple[int, ...]


def h1_match_report(inv: FlowInvariant) -> H1MatchReport:
    """Which saddle sign (if any) makes the surgery homology match the descriptor.

    Tuples with (l1, b1) = (0, +-2) have no surgery model; only the
    descriptor group is reported for them.
    """
    branch = ambient_branch(inv)
    descriptor = ambient_manifold(inv)
    descriptor_group = h1_of_descriptor(descriptor)
    if (inv.l1, inv.b1) in ((0, 2), (0, -2)):
        return H1MatchReport(inv, branch, descriptor, descriptor_group, None, None, ())
    groups = {sign: surgery_group(inv, sign) for sign in (1, -1)}
    orders = {sign: surgery_order_formula(inv, sign) for sign in (1, -1)}
    matches = tuple(sign for sign in (1, -1) if groups[sign] == descriptor_group)
    return H1MatchReport(inv, branch, descriptor, descriptor_group, groups, orders, matches)
