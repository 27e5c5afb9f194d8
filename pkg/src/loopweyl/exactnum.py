"""Exact dense linear algebra over the rationals.

Scalars are ``fractions.Fraction`` throughout (arbitrary precision, always in
lowest terms with positive denominator), so every result here is exact.
Matrices are dense row-major lists of Fractions.  Row reduction does
fraction-free forward elimination on integer-scaled rows (cross-multiplying
and dividing each row by its content to control growth) and converts to
rationals only in the final normalization pass.

Pivoting is deterministic: the pivot for each step is the first column, in
the active column order, with a nonzero entry in a remaining row.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class Matrix:
    """Dense matrix of Fractions."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = [[Fraction(x) for x in row] for row in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.rows!r})"

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def scale(self, scalar):
        s = Fraction(scalar)
        return Matrix([[s * x for x in row] for row in self.rows])

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.rows)) if other.rows else []
        out = []
        for row in self.rows:
            out.append(
                [
                    sum((a * b for a, b in zip(row, col) if a and b), Fraction(0))
                    for col in bt
                ]
            )
        return Matrix(out)

    def matvec(self, vec):
        if self.ncols != len(vec):
            raise ValueError("shape mismatch")
        return [
            sum((a * b for a, b in zip(row, vec) if a and b), Fraction(0))
            for row in self.rows
        ]

    def transpose(self):
        return Matrix([list(col) for col in zip(*self.rows)] if self.rows else [])

    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)

    def column(self, j):
        return [row[j] for row in self.rows]


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product, row-major (left factor is the slow index)."""
    out = []
    for ra in a.rows:
        for rb in b.rows:
            out.append([x * y for x in ra for y in rb])
    return Matrix(out)


def _integer_rows(a: Matrix):
    """Copy of the matrix rows scaled row-wise to integers."""
    rows = []
    for row in a.rows:
        den = 1
        for x in row:
            den = _lcm(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        rows.append(ints)
    return rows


def _forward_eliminate(rows, col_order):
    """Fraction-free forward elimination scanning columns in col_order.

    Mutates ``rows`` (integer lists).  Returns the pivot list as
    (column, row_index) pairs in the order the pivots were chosen.
    """
    pivots = []
    used = [False] * len(rows)
    for c in col_order:
        pick = None
        for i, row in enumerate(rows):
            if not used[i] and row[c] != 0:
                pick = i
                break
        if pick is None:
            continue
        used[pick] = True
        pivots.append((c, pick))
        p = rows[pick][c]
        for i, row in enumerate(rows):
            if used[i] or row[c] == 0:
                continue
            f = row[c]
            new = [x * p - y * f for x, y in zip(row, rows[pick])]
            g = 0
            for x in new:
                g = gcd(g, x)
            if g > 1:
                new = [x // g for x in new]
            rows[i] = new
    return pivots


def _back_substitute(rows, pivots):
    """Eliminate above each pivot and normalize pivots to 1 (Fractions)."""
    frows = [[Fraction(x) for x in row] for row in rows]
    for c, i in reversed(pivots):
        p = frows[i][c]
        frows[i] = [x / p for x in frows[i]]
        for (c2, i2) in pivots:
            if i2 == i:
                continue
            f = frows[i2][c]
            if f:
                frows[i2] = [x - f * y for x, y in zip(frows[i2], frows[i])]
    return frows


def rref_with_preferred_pivots(a: Matrix, preferred):
    """Reduced echelon form with pivot columns chosen in ``preferred`` order.

    ``preferred`` must be a permutation of range(ncols).  Pivot rows are
    returned first, ordered as scanned, followed by zero rows; the pivot list
    follows the scan order.
    """
    if sorted(preferred) != list(range(a.ncols)):
        raise ValueError("preferred must be a permutation of the columns")
    rows = _integer_rows(a)
    pivots = _forward_eliminate(rows, preferred)
    frows = _back_substitute(rows, pivots)
    ordered = [frows[i] for _, i in pivots]
    seen = {i for _, i in pivots}
    zero = [Fraction(0)] * a.ncols
    for i in range(len(frows)):
        if i not in seen:
            ordered.append(list(zero))
    return Matrix(ordered), [c for c, _ in pivots]


def rref(a: Matrix):
    """Reduced row echelon form; returns (R, pivot columns, strictly increasing)."""
    return rref_with_preferred_pivots(a, list(range(a.ncols)))


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix):
    """Basis of the right kernel; len == ncols - rank, each vector exact."""
    r, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(a.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * a.ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -r[i, f]
        basis.append(v)
    return basis


def solve(a: Matrix, b):
    """One exact solution of A x = b, or None if inconsistent."""
    aug = Matrix([row + [bi] for row, bi in zip(a.rows, b)])
    r, pivots = rref(aug)
    if a.ncols in pivots:
        return None
    x = [Fraction(0)] * a.ncols
    for i, c in enumerate(pivots):
        x[c] = r[i, a.ncols]
    return x


def det(a: Matrix) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    if a.nrows != a.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = a.nrows
    rows = [list(r) for r in a.rows]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pick = None
        for i in range(c, n):
            if rows[i][c] != 0:
                pick = i
                break
        if pick is None:
            return Fraction(0)
        if pick != c:
            rows[c], rows[pick] = rows[pick], rows[c]
            sign = -sign
        p = rows[c][c]
        result *= p
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return sign * result


class RowSpace:
    """Incrementally maintained row space in reduced form.

    Used for linear closures (cyclic-vector spans, ideal membership).  Rows
    are kept fully reduced, so membership tests are a single reduction pass.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}  # pivot column -> row (leading coefficient 1)

    @property
    def dim(self):
        return len(self.rows)

    def _reduce(self, vec):
        v = list(vec)
        for c, row in self.rows.items():
            f = v[c]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self._reduce(vec))

    def add(self, vec) -> bool:
        """Insert a vector; returns True if the dimension grew."""
        v = self._reduce(vec)
        lead = None
        for c, x in enumerate(v):
            if x != 0:
                lead = c
                break
        if lead is None:
            return False
        p = v[lead]
        v = [x / p for x in v]
        for c, row in self.rows.items():
            f = row[lead]
            if f:
                self.rows[c] = [x - f * y for x, y in zip(row, v)]
        self.rows[lead] = v
        return True

    def basis(self):
        return [list(self.rows[c]) for c in sorted(self.rows)]
