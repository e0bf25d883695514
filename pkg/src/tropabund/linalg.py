"""Exact rational linear algebra: rank, kernels, positive kernel points.

Entries are `fractions.Fraction` throughout; there is no floating point
anywhere in this module.  Matrices are dense and small (a few hundred rows
at most), so the implementations favour clarity and determinism over
asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import StructuralError

Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_fraction_rows(rows: Iterable[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    out = []
    width = None
    for row in rows:
        frow = tuple(Fraction(x) for x in row)
        if width is None:
            width = len(frow)
        elif len(frow) != width:
            raise StructuralError("ragged matrix rows")
        out.append(frow)
    return tuple(out)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of exact rationals, row major."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Sequence], cols: int | None = None) -> "RationalMatrix":
        data = _as_fraction_rows(rows)
        if data:
            width = len(data[0])
        else:
            if cols is None:
                raise StructuralError("empty matrix needs an explicit column count")
            width = cols
        if cols is not None and data and width != cols:
            raise StructuralError("column count mismatch")
        return RationalMatrix(len(data), width, data)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "RationalMatrix":
        data = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return RationalMatrix(self.cols, self.rows, data)

    def mat_vec(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise StructuralError("vector length does not match column count")
        return tuple(sum((r[j] * v[j] for j in range(self.cols)), ZERO) for r in self.entries)

    def vec_mat(self, y: Sequence[Fraction]) -> Vector:
        if len(y) != self.rows:
            raise StructuralError("vector length does not match row count")
        return tuple(
            sum((y[i] * self.entries[i][j] for i in range(self.rows)), ZERO)
            for j in range(self.cols)
        )

    def mat_mul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise StructuralError("inner dimensions do not match")
        data = tuple(
            tuple(
                sum((self.entries[i][k] * other.entries[k][j] for k in range(self.cols)), ZERO)
                for j in range(other.cols)
            )
            for i in range(self.rows)
        )
        return RationalMatrix(self.rows, other.cols, data)


def _vec_gcd(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def clear_row_denominators(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row by a positive rational to a primitive integer row."""
    den = 1
    for x in row:
        den = _lcm(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = _vec_gcd(ints)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def primitive_integer_vector(vec: Sequence[Fraction], positive_leading: bool = True) -> Vector:
    """The primitive integer vector spanning the same ray/line as ``vec``.

    With ``positive_leading`` the first nonzero coordinate is made positive,
    which gives a canonical representative of the line through ``vec``.
    """
    ints = clear_row_denominators(tuple(Fraction(x) for x in vec))
    if positive_leading:
        for v in ints:
            if v != 0:
                if v < 0:
                    ints = [-w for w in ints]
                break
    return tuple(Fraction(v) for v in ints)


def rational_content(vec: Sequence[Fraction]) -> Fraction:
    """The positive rational c with vec = c * primitive(vec); 0 for the zero vector.

    The returned primitive vector keeps the orientation of ``vec``.
    """
    fracs = [Fraction(x) for x in vec]
    if all(x == 0 for x in fracs):
        return ZERO
    den = 1
    for x in fracs:
        den = _lcm(den, x.denominator)
    nums = [int(x * den) for x in fracs]
    g = _vec_gcd(nums)
    return Fraction(g, den)


def rank(matrix: RationalMatrix) -> int:
    """Rank over the rationals via fraction-free (Bareiss) elimination.

    Rows are first cleared to primitive integer rows (a positive row scaling,
    rank-neutral), after which all intermediate values stay integral.
    Pivot choice is the first nonzero entry in row-major order.
    """
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    m = [clear_row_denominators(r) for r in matrix.entries]
    n_rows, n_cols = matrix.rows, matrix.cols
    piv_r = 0
    prev = 1
    for piv_c in range(n_cols):
        pivot_row = None
        for i in range(piv_r, n_rows):
            if m[i][piv_c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != piv_r:
            m[piv_r], m[pivot_row] = m[pivot_row], m[piv_r]
        p = m[piv_r][piv_c]
        for i in range(piv_r + 1, n_rows):
            fi = m[i][piv_c]
            row_i = m[i]
            row_p = m[piv_r]
            # The update must run even when fi == 0: Bareiss' exact division
            # at the next step relies on every row being scaled uniformly.
            for j in range(n_cols):
                row_i[j] = (p * row_i[j] - fi * row_p[j]) // prev
        prev = p
        piv_r += 1
        if piv_r == n_rows:
            break
    return piv_r


def rank_plain_gauss(matrix: RationalMatrix) -> int:
    """Rank via ordinary rational Gaussian elimination (cross-check path)."""
    m = [list(r) for r in matrix.entries]
    n_rows, n_cols = matrix.rows, matrix.cols
    piv_r = 0
    for piv_c in range(n_cols):
        pivot_row = None
        for i in range(piv_r, n_rows):
            if m[i][piv_c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != piv_r:
            m[piv_r], m[pivot_row] = m[pivot_row], m[piv_r]
        p = m[piv_r][piv_c]
        for i in range(piv_r + 1, n_rows):
            if m[i][piv_c] == 0:
                continue
            f = m[i][piv_c] / p
            for j in range(piv_c, n_cols):
                m[i][j] -= f * m[piv_r][j]
        piv_r += 1
        if piv_r == n_rows:
            break
    return piv_r


def _rref(matrix: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [list(r) for r in matrix.entries]
    n_rows, n_cols = matrix.rows, matrix.cols
    pivots: list[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        pivot_row = None
        for i in range(piv_r, n_rows):
            if m[i][piv_c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[piv_r], m[pivot_row] = m[pivot_row], m[piv_r]
        p = m[piv_r][piv_c]
        m[piv_r] = [x / p for x in m[piv_r]]
        for i in range(n_rows):
            if i != piv_r and m[i][piv_c] != 0:
                f = m[i][piv_c]
                m[i] = [a - f * b for a, b in zip(m[i], m[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
        if piv_r == n_rows:
            break
    return m, pivots


def kernel_basis(matrix: RationalMatrix) -> list[Vector]:
    """Basis of the right kernel {x : Mx = 0}.

    One vector per free column, normalized to a primitive integer vector
    whose first nonzero coordinate is positive.  Basis size is
    cols - rank(M); the zero matrix yields the standard basis pattern.
    """
    n_cols = matrix.cols
    if matrix.rows == 0:
        rrefm: list[list[Fraction]] = []
        pivots: list[int] = []
    else:
        rrefm, pivots = _rref(matrix)
    pivot_set = set(pivots)
    free_cols = [j for j in range(n_cols) if j not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [ZERO] * n_cols
        vec[fc] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -rrefm[r][fc]
        basis.append(primitive_integer_vector(vec))
    return basis


def left_kernel_basis(matrix: RationalMatrix) -> list[Vector]:
    """Basis of {y : y^T M = 0}; size is rows - rank(M)."""
    return kernel_basis(matrix.transpose())


def row_space_basis(matrix: RationalMatrix) -> list[Vector]:
    """Primitive integer basis of the row space (RREF rows)."""
    if matrix.rows == 0:
        return []
    rrefm, pivots = _rref(matrix)
    return [primitive_integer_vector(rrefm[i]) for i in range(len(pivots))]


def solve_nonnegative(matrix: RationalMatrix, rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Find y >= 0 with My = rhs exactly, or None if infeasible.

    Phase-I simplex over the rationals with Bland's rule, so termination is
    guaranteed and every intermediate value is exact.
    """
    m, n = matrix.rows, matrix.cols
    if m != len(rhs):
        raise StructuralError("rhs length does not match row count")
    if m == 0:
        return [ZERO] * n
    # Tableau rows: [A | I | b] with b >= 0 after sign flips.
    tab: list[list[Fraction]] = []
    for i in range(m):
        row = list(matrix.entries[i])
        b = Fraction(rhs[i])
        if b < 0:
            row = [-x for x in row]
            b = -b
        art = [ONE if k == i else ZERO for k in range(m)]
        tab.append(row + art + [b])
    total = n + m
    basis = list(range(n, n + m))
    # Phase-I objective: minimize the sum of artificials.  Maintain the
    # reduced-cost row z_j = sum of basic artificial rows' column j.
    cost = [ZERO] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            cost[j] += tab[i][j]

    while True:
        # Bland's rule: smallest-index improving column; smallest basic
        # index on ratio ties.  Guarantees termination without tolerances.
        enter = None
        for j in range(total):
            if cost[j] > 0 and j not in basis:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][total] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # Unbounded phase-I cannot happen (objective bounded below by 0).
            return None
        pivot = tab[leave][enter]
        tab[leave] = [x / pivot for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        f = cost[enter]
        if f != 0:
            cost = [a - f * b for a, b in zip(cost, tab[leave])]
        basis[leave] = enter

    if cost[total] != 0:
        return None
    y = [ZERO] * n
    for i, bv in enumerate(basis):
        if bv < n:
            y[bv] = tab[i][total]
    return y


def strictly_positive_kernel_point(matrix: RationalMatrix) -> Vector | None:
    """A point x with Mx = 0 and every coordinate >= 1, or None.

    Substituting x = 1 + y reduces the question to nonnegative feasibility
    of My = -M(1,...,1), decided by the exact simplex.
    """
    n = matrix.cols
    ones = [ONE] * n
    rhs = [-v for v in matrix.mat_vec(ones)]
    y = solve_nonnegative(matrix, rhs)
    if y is None:
        return None
    return tuple(ONE + y[j] for j in range(n))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise StructuralError("dot product length mismatch")
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), ZERO)


def span_dimension(vectors: Sequence[Sequence[Fraction]], width: int) -> int:
    if not vectors:
        return 0
    return rank(RationalMatrix.from_rows(vectors, cols=width))


def invert(matrix: RationalMatrix) -> RationalMatrix:
    """Inverse of a square rational matrix (raises if singular)."""
    if matrix.rows != matrix.cols:
        raise StructuralError("only square matrices can be inverted")
    n = matrix.rows
    aug = RationalMatrix.from_rows(
        [list(matrix.entries[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    )
    rrefm, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise StructuralError("matrix is singular")
    data = tuple(tuple(rrefm[i][n:]) for i in range(n))
    return RationalMatrix(n, n, data)
