"""Exact integer matrix algebra: Smith normal form, kernels, saturations.

Everything runs on Python ints, so entries never overflow.  A matrix with
r rows and c columns represents a homomorphism Z^c -> Z^r acting on column
vectors; the 0 x n and n x 0 matrices are legal and encode zero maps.
Matrices are immutable, hashable values, so every function here is safe to
call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entry grid")
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged entry grid")

    @classmethod
    def from_rows(cls, grid, cols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in row) for row in grid)
        if rows:
            width = len(rows[0])
        elif cols is not None:
            width = cols
        else:
            width = 0
        return cls(len(rows), width, rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, values, rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        vals = [int(v) for v in values]
        r = len(vals) if rows is None else rows
        c = len(vals) if cols is None else cols
        grid = [[0] * c for _ in range(r)]
        for i, v in enumerate(vals):
            grid[i][i] = v
        return cls.from_rows(grid, cols=c)

    @classmethod
    def from_columns(cls, columns, rows: int) -> "IntMatrix":
        cols = [tuple(int(x) for x in col) for col in columns]
        if any(len(col) != rows for col in cols):
            raise ValueError("column length does not match declared row count")
        grid = tuple(tuple(col[i] for col in cols) for i in range(rows))
        return cls(rows, len(cols), grid)

    def transpose(self) -> "IntMatrix":
        grid = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return IntMatrix(self.cols, self.rows, grid)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "IntMatrix":
        grid = tuple(row[c0:c1] for row in self.entries[r0:r1])
        return IntMatrix(r1 - r0, c1 - c0, grid)

    def take_columns(self, indices) -> "IntMatrix":
        idx = list(indices)
        grid = tuple(tuple(row[j] for j in idx) for row in self.entries)
        return IntMatrix(self.rows, len(idx), grid)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        grid = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, grid)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        grid = tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)
        )
        return IntMatrix(self.rows, self.cols, grid)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        grid = tuple(tuple(-x for x in row) for row in self.entries)
        return IntMatrix(self.rows, self.cols, grid)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def apply(self, vector) -> tuple[int, ...]:
        vec = tuple(int(x) for x in vector)
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def __str__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"<{self.rows}x{self.cols}>"
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.entries) + "]"


def hstack(*matrices: IntMatrix) -> IntMatrix:
    if not matrices:
        raise ValueError("hstack of nothing")
    rows = matrices[0].rows
    if any(m.rows != rows for m in matrices):
        raise ValueError("hstack needs equal row counts")
    grid = tuple(
        tuple(x for m in matrices for x in m.entries[i]) for i in range(rows)
    )
    return IntMatrix(rows, sum(m.cols for m in matrices), grid)


def vstack(*matrices: IntMatrix) -> IntMatrix:
    if not matrices:
        raise ValueError("vstack of nothing")
    cols = matrices[0].cols
    if any(m.cols != cols for m in matrices):
        raise ValueError("vstack needs equal column counts")
    grid = tuple(row for m in matrices for row in m.entries)
    return IntMatrix(sum(m.rows for m in matrices), cols, grid)


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form U @ M @ V = D with U, V unimodular.

    `diagonal` lists the nonzero diagonal entries of D (the invariant
    factors of the column span), each dividing the next.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form by elementary row/column reduction.

    Pivots are always the smallest-magnitude nonzero entry of the trailing
    block, which keeps intermediate growth tame at the sizes this library
    works with.  Total on all integer matrices, including empty shapes.
    """
    R, C = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(R)] for i in range(R)]
    v = [[int(i == j) for j in range(C)] for i in range(C)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def clear_col(t: int) -> None:
        # Zero out column t below the pivot; ends with a positive pivot.
        if a[t][t] < 0:
            negate_row(t)
        while True:
            for i in range(t + 1, R):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        add_row(i, t, -q)
            leftovers = [i for i in range(t + 1, R) if a[i][t]]
            if not leftovers:
                return
            # Remainders are smaller than the pivot: promote the smallest.
            i0 = min(leftovers, key=lambda i: abs(a[i][t]))
            swap_rows(t, i0)
            if a[t][t] < 0:
                negate_row(t)

    def clear_row(t: int) -> None:
        while True:
            for j in range(t + 1, C):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        add_col(j, t, -q)
            leftovers = [j for j in range(t + 1, C) if a[t][j]]
            if not leftovers:
                return
            j0 = min(leftovers, key=lambda j: abs(a[t][j]))
            swap_cols(t, j0)
            if a[t][t] < 0:
                negate_row(t)

    limit = min(R, C)
    t = 0
    while t < limit:
        pivot = None
        for i in range(t, R):
            for j in range(t, C):
                x = a[i][j]
                if x and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        while True:
            clear_col(t)
            while any(a[t][j] for j in range(t + 1, C)):
                clear_row(t)
                clear_col(t)
            # Pivot must divide the whole trailing block for the chain
            # d_1 | d_2 | ... ; otherwise fold an offending row in and redo.
            d = a[t][t]
            offender = None
            for i in range(t + 1, R):
                if any(x % d for x in a[i][t + 1:]):
                    offender = i
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1

    diagonal = tuple(a[i][i] for i in range(limit) if a[i][i] != 0)
    return SnfResult(
        U=IntMatrix.from_rows(u, cols=R),
        D=IntMatrix.from_rows(a, cols=C),
        V=IntMatrix.from_rows(v, cols=C),
        diagonal=diagonal,
    )


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel {v : M v = 0}, as matrix columns.

    The kernel of an integer matrix is a saturated sublattice and the
    returned columns span it exactly (they are columns of a unimodular V).
    """
    res = snf(m)
    return res.V.take_columns(range(res.rank, m.cols))


def column_basis(m: IntMatrix) -> IntMatrix:
    """Basis of the lattice spanned by the columns of M."""
    res = snf(m)
    return (m @ res.V).take_columns(range(res.rank))


def saturation(m: IntMatrix) -> IntMatrix:
    """Basis of the saturation {v : n v in span(columns of M) for some n >= 1}.

    Computed as the integer vectors orthogonal to everything orthogonal to
    the column span; both steps are kernel computations.
    """
    orth = kernel_basis(m.transpose())
    return kernel_basis(orth.transpose())


def solve(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """Some integer solution X of A @ X = B, or None when none exists."""
    if a.rows != b.rows:
        raise ValueError("solve: row counts differ")
    res = snf(a)
    ub = res.U @ b
    limit = min(a.rows, a.cols)
    w = [[0] * b.cols for _ in range(a.cols)]
    for j in range(b.cols):
        for i in range(a.rows):
            c = ub.entries[i][j]
            if i < limit:
                d = res.D.entries[i][i]
                if d:
                    if c % d:
                        return None
                    w[i][j] = c // d
                elif c:
                    return None
            elif c:
                return None
    return res.V @ IntMatrix.from_rows(w, cols=b.cols)


def det(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    return m.rows == m.cols and abs(det(m)) == 1


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix: if U M V = I then M^-1 = V U."""
    res = snf(m)
    if m.rows != m.cols or res.rank != m.rows or any(d != 1 for d in res.diagonal):
        raise ValueError("matrix is not unimodular")
    return res.V @ res.U
