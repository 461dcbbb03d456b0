"""Exact linear algebra: fraction-free elimination over Q, Gauss-Jordan otherwise."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import DimensionMismatch, NoSolution


class Matrix:
    """A rectangular matrix with entries from one exact field."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged rows")
        self.rows = rows

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> Matrix:
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values) -> Matrix:
        return cls([[v] for v in values])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def transpose(self) -> Matrix:
        return Matrix(zip(*self.rows))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            out.append([_dot(r, c) for c in cols])
        return Matrix(out)

    def apply(self, vec):
        """Matrix times a plain vector."""
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length")
        return tuple(_dot(r, vec) for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]})"

    def det(self):
        if self.nrows != self.ncols:
            raise DimensionMismatch("determinant of non-square matrix")
        return determinant([list(r) for r in self.rows])

    def inverse(self) -> Matrix:
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatch("inverse of non-square matrix")
        one = _one_like(self.rows)
        zero = one - one
        ident = Matrix.identity(n, one, zero)
        return linear_solve(self, ident)


def _dot(a, b):
    acc = None
    for x, y in zip(a, b):
        term = x * y
        acc = term if acc is None else acc + term
    return 0 if acc is None else acc


def _one_like(rows):
    for r in rows:
        for x in r:
            return x ** 0 if not isinstance(x, (int, Fraction)) else 1
    return 1


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def determinant(rows: list[list]):
    """Determinant by elimination; Bareiss over Z for rational input."""
    n = len(rows)
    if n == 0:
        return 1
    if all(_is_rational(x) for r in rows for x in r):
        den = 1
        scaled = []
        for r in rows:
            d = 1
            for x in r:
                x = Fraction(x)
                d = d * x.denominator // gcd(d, x.denominator)
            den *= d
            scaled.append([int(Fraction(x) * d) for x in r])
        return Fraction(_bareiss_det(scaled), den)
    a = [list(r) for r in rows]
    det = None
    sign = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return a[0][0] - a[0][0]
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        det = p if det is None else det * p
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det if sign == 1 else -det


def _bareiss_det(a: list[list[int]]) -> int:
    a = [list(r) for r in a]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _bareiss_echelon(a: list[list[int]], ncols: int):
    """In-place fraction-free row echelon form on the first ncols columns.

    Returns the list of pivot columns.
    """
    m = len(a)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= m:
            break
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            aic = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c, len(row_i)):
                row_i[j] = (row_i[j] * p - aic * row_r[j]) // prev
        # earlier rows are left untouched (echelon only)
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def solve_integer_system(rows: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Solve an integer system A x = b exactly (Fraction result).

    Free variables are set to zero; raises NoSolution if inconsistent.
    """
    sols = _solve_rational([list(r) for r in rows], [[b] for b in rhs])
    return [s[0] for s in sols]


def _solve_rational(rows: list[list], rhs: list[list]) -> list[list[Fraction]]:
    m = len(rows)
    n = len(rows[0]) if rows else 0
    k = len(rhs[0]) if rhs else 0
    aug = []
    for r, b in zip(rows, rhs):
        full = [Fraction(x) for x in list(r) + list(b)]
        d = 1
        for x in full:
            d = d * x.denominator // gcd(d, x.denominator)
        ints = [int(x * d) for x in full]
        g = gcd(*ints) if ints else 0
        if g > 1:
            ints = [x // g for x in ints]
        aug.append(ints)
    pivots = _bareiss_echelon(aug, n)
    rank = len(pivots)
    for i in range(rank, m):
        if any(aug[i][n:]):
            raise NoSolution("inconsistent linear system")
    sol = [[Fraction(0)] * k for _ in range(n)]
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        row = aug[i]
        for j in range(k):
            acc = Fraction(row[n + j])
            for cc in range(c + 1, n):
                if row[cc]:
                    acc -= row[cc] * sol[cc][j]
            sol[c][j] = acc / row[c]
    return sol


def _solve_field(rows: list[list], rhs: list[list]):
    """Gauss-Jordan over an arbitrary exact field."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [list(r) + list(b) for r, b in zip(rows, rhs)]
    k = len(rhs[0]) if rhs else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if any(x != 0 for x in a[i][n:]):
            raise NoSolution("inconsistent linear system")
    zero = a[0][0] - a[0][0] if a else 0
    sol = [[zero] * k for _ in range(n)]
    for i, c in enumerate(pivots):
        for j in range(k):
            sol[c][j] = a[i][n + j]
    return sol


def linear_solve(A: Matrix, b: Matrix) -> Matrix:
    """Exact solution X of A X = b (free variables set to zero)."""
    if not isinstance(A, Matrix):
        A = Matrix(A)
    if not isinstance(b, Matrix):
        b = Matrix(b)
    if A.nrows != b.nrows:
        raise DimensionMismatch(f"A has {A.nrows} rows, b has {b.nrows}")
    rows = [list(r) for r in A.rows]
    rhs = [list(r) for r in b.rows]
    if all(_is_rational(x) for r in rows + rhs for x in r):
        return Matrix(_solve_rational(rows, rhs))
    return Matrix(_solve_field(rows, rhs))
