"""Exact linear algebra over the integers and rationals.

Everything here works with arbitrary-precision Python ints and
fractions.Fraction; there is no floating point anywhere.  Matrices are
immutable.  The normal-form routines return the transformation matrices
as witnesses so callers can verify the factorizations directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

RationalVector = tuple[Fraction, ...]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; entries stored row-major as nested tuples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows in matrix entries")
            for x in row:
                if not isinstance(x, int):
                    raise TypeError(f"non-integer entry {x!r}")

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
        else:
            width = 0 if cols is None else cols
        return IntMatrix(len(data), width, data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        tcols = other.transpose().entries
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in tcols)
            for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, out)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(-x for x in row) for row in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


def mat_vec(m: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    if len(v) != m.cols:
        raise ValueError("vector length does not match matrix columns")
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m.entries)


class NoSolution:
    """Singleton marker returned by solve_rational for inconsistent systems."""

    _instance: "NoSolution | None" = None

    def __new__(cls) -> "NoSolution":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NoSolution"


NO_SOLUTION = NoSolution()


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (h, u) where u is unimodular, u @ m == h, pivots are positive,
    entries above each pivot are reduced into [0, pivot), and zero rows
    sit at the bottom.
    """
    a = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m.rows):
            if a[i][c] == 0:
                continue
            g, x, y = _ext_gcd(a[r][c], a[i][c])
            p, q = a[r][c] // g, a[i][c] // g
            a[r], a[i] = (
                [x * a[r][k] + y * a[i][k] for k in range(m.cols)],
                [-q * a[r][k] + p * a[i][k] for k in range(m.cols)],
            )
            u[r], u[i] = (
                [x * u[r][k] + y * u[i][k] for k in range(m.rows)],
                [-q * u[r][k] + p * u[i][k] for k in range(m.rows)],
            )
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            f = a[i][c] // a[r][c]
            if f != 0:
                a[i] = [a[i][k] - f * a[r][k] for k in range(m.cols)]
                u[i] = [u[i][k] - f * u[r][k] for k in range(m.rows)]
        r += 1
        if r == m.rows:
            break
    return IntMatrix.from_rows(a, cols=m.cols), IntMatrix.from_rows(u, cols=m.rows)


def smith_normal_form(m: IntMatrix) -> tuple[tuple[int, ...], IntMatrix, IntMatrix]:
    """Smith normal form with transforms.

    Returns (d, left, right) with left @ m @ right == diag(d), both
    transforms unimodular, d non-negative and d[i] | d[i+1].
    """
    rows, cols = m.rows, m.cols
    a = [list(row) for row in m.entries]
    left = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    right = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i: int, j: int, x: int, y: int, p: int, q: int) -> None:
        # rows i, j <- (x*ri + y*rj, p*ri + q*rj); requires x*q - y*p = +-1
        a[i], a[j] = (
            [x * a[i][k] + y * a[j][k] for k in range(cols)],
            [p * a[i][k] + q * a[j][k] for k in range(cols)],
        )
        left[i], left[j] = (
            [x * left[i][k] + y * left[j][k] for k in range(rows)],
            [p * left[i][k] + q * left[j][k] for k in range(rows)],
        )

    def col_op(i: int, j: int, x: int, y: int, p: int, q: int) -> None:
        for row in a:
            row[i], row[j] = x * row[i] + y * row[j], p * row[i] + q * row[j]
        for row in right:
            row[i], row[j] = x * row[i] + y * row[j], p * row[i] + q * row[j]

    n = min(rows, cols)
    for t in range(n):
        piv = next(((i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j] != 0), None)
        if piv is None:
            break
        i, j = piv
        if i != t:
            row_op(t, i, 0, 1, 1, 0)
        if j != t:
            col_op(t, j, 0, 1, 1, 0)
        while True:
            for i in range(t + 1, rows):
                if a[i][t] == 0:
                    continue
                if a[i][t] % a[t][t] == 0:
                    row_op(t, i, 1, 0, -(a[i][t] // a[t][t]), 1)
                else:
                    g, x, y = _ext_gcd(a[t][t], a[i][t])
                    row_op(t, i, x, y, -(a[i][t] // g), a[t][t] // g)
            for j in range(t + 1, cols):
                if a[t][j] == 0:
                    continue
                if a[t][j] % a[t][t] == 0:
                    col_op(t, j, 1, 0, -(a[t][j] // a[t][t]), 1)
                else:
                    g, x, y = _ext_gcd(a[t][t], a[t][j])
                    col_op(t, j, x, y, -(a[t][j] // g), a[t][t] // g)
            if all(a[i][t] == 0 for i in range(t + 1, rows)) and \
               all(a[t][j] == 0 for j in range(t + 1, cols)):
                break

    # enforce the divisibility chain d[i] | d[i+1]
    changed = True
    while changed:
        changed = False
        for t in range(n - 1):
            x, y = a[t][t], a[t + 1][t + 1]
            if y % (x if x else 1) == 0 and x != 0:
                continue
            if x == 0 and y == 0:
                continue
            changed = True
            # fold the pair diag(x, y) into diag(gcd, lcm)
            col_op(t, t + 1, 1, 1, 0, 1)          # col t <- col t + col t+1
            g, s, u = _ext_gcd(a[t][t], a[t + 1][t])
            row_op(t, t + 1, s, u, -(a[t + 1][t] // g), a[t][t] // g)
            f = a[t][t + 1] // a[t][t]            # exact: gcd divides the fill-in
            col_op(t, t + 1, 1, 0, -f, 1)         # col t+1 <- col t+1 - f*col t

    # pivots are produced consecutively, so zero factors already trail
    for t in range(n):
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    d = tuple(a[t][t] for t in range(n))
    return d, IntMatrix.from_rows(left, cols=rows), IntMatrix.from_rows(right, cols=cols)


def det_exact(m: IntMatrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_rational(m: IntMatrix, rhs: Sequence[Fraction | int]) -> RationalVector | NoSolution:
    """Solve m @ x = rhs over the rationals.

    Returns one exact solution (free variables set to 0), or NO_SOLUTION
    when the system is inconsistent.  NO_SOLUTION is an ordinary value so
    callers can assert on it.
    """
    if len(rhs) != m.rows:
        raise ValueError("rhs length does not match matrix rows")
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m.entries)]
    nrows, ncols = m.rows, m.cols
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if a[i][ncols] != 0:
            return NO_SOLUTION
    x = [Fraction(0)] * ncols
    for (pr, pc) in pivots:
        x[pc] = a[pr][ncols]
    return tuple(x)


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """Saturated basis of {x in Z^cols : m @ x = 0}, returned as columns."""
    d, _left, right = smith_normal_form(m)
    free = [j for j in range(m.cols) if j >= len(d) or d[j] == 0]
    return IntMatrix.from_rows(
        tuple(tuple(right.entries[i][j] for j in free) for i in range(m.cols)),
        cols=len(free),
    )


def saturate(basis: IntMatrix, ambient_rank: int) -> IntMatrix:
    """Basis of the primitive closure Q-span(basis) intersect Z^ambient_rank.

    The basis columns must be independent.  Uses the double-orthogonal
    trick: the closure is the integer kernel of the transpose of the
    integer kernel of basis^T (ordinary dot product).
    """
    if basis.rows != ambient_rank:
        raise ValueError("basis rows must equal the ambient rank")
    d, _l, _r = smith_normal_form(basis)
    rank = sum(1 for x in d if x != 0)
    if rank != basis.cols:
        raise ValueError("dependent columns cannot be saturated")
    perp = integer_kernel(basis.transpose())
    closure = integer_kernel(perp.transpose())
    if closure.cols != basis.cols:
        raise AssertionError("saturation changed the rank")
    return closure


def rational_inverse(m: IntMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of a nonsingular integer matrix, as nested Fractions."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse requires a square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    inv = rational_inverse(m)
    rows = []
    for row in inv:
        out = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            out.append(int(x))
        rows.append(out)
    return IntMatrix.from_rows(rows, cols=m.rows)
