"""Exact integer linear algebra.

Everything here works on Python ints, so entries never overflow.  Matrices
are immutable; zero-row and zero-column shapes are valid and stand for maps
into or out of the zero group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "LinearSolveResult",
    "smith_normal_form",
    "integer_kernel_basis",
    "solve_integer_system",
    "hermite_basis",
    "determinant",
]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError(
                f"entries do not fit a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("column count is ambiguous for a matrix without rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> IntMatrix:
        n = len(entries)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        return cls(rows, cols, tuple(
            tuple(entries[i] if i == j and i < n else 0 for j in range(cols))
            for i in range(rows)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls(rows, len(columns), tuple(
            tuple(int(c[i]) for c in columns) for i in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat view."""
        return tuple(x for r in self.data for x in r)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(r[j] for r in self.data) for j in range(self.cols)))

    T = property(transpose)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in ocols)
            for r in self.data))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def _check_same_shape(self, other: IntMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(k * a for a in r) for r in self.data))

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(r + s for r, s in zip(self.data, other.data)))

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def select_rows(self, idx: Sequence[int]) -> IntMatrix:
        return IntMatrix(len(idx), self.cols, tuple(self.data[i] for i in idx))

    def select_cols(self, idx: Sequence[int]) -> IntMatrix:
        return IntMatrix(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.tolist()})"


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.rows
    if n != a.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in a.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            mi, mk = m[i], m[k]
            mik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * pk - mik * mk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular.

    ``U_inv`` and ``V_inv`` are the exact inverses, tracked during the
    reduction so callers never need to invert a matrix afterwards.
    """
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D.data[i][i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with deterministic pivoting.

    The pivot is always the nonzero entry of least absolute value in the
    unfinished block, ties going to the lowest (row, col).  Diagonal entries
    come out nonnegative, each dividing the next, zeros last.
    """
    n, m = a.rows, a.cols
    A = [list(r) for r in a.data]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Ui = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]
    Vi = [[int(i == j) for j in range(m)] for i in range(m)]

    # Row op  row_i += q*row_k  acts on A and U; U_inv gets  col_k -= q*col_i.
    def row_add(i, k, q):
        ai, ak = A[i], A[k]
        for j in range(m):
            if ak[j]:
                ai[j] += q * ak[j]
        ui, uk = U[i], U[k]
        for j in range(n):
            if uk[j]:
                ui[j] += q * uk[j]
        for r in Ui:
            if r[i]:
                r[k] -= q * r[i]

    # Column op  col_j += q*col_k  acts on A and V; V_inv gets  row_k -= q*row_j.
    def col_add(j, k, q):
        for r in A:
            if r[k]:
                r[j] += q * r[k]
        for r in V:
            if r[k]:
                r[j] += q * r[k]
        vj, vk = Vi[j], Vi[k]
        for c in range(m):
            if vj[c]:
                vk[c] -= q * vj[c]

    def row_swap(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]
        for r in Ui:
            r[i], r[k] = r[k], r[i]

    def col_swap(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    def row_negate(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    for t in range(min(n, m)):
        while True:
            best = None
            for i in range(t, n):
                row = A[i]
                for j in range(t, m):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    q = A[i][t] // p
                    row_add(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // p
                    col_add(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, n):
                if any(x % p for x in A[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_negate(t)

    def freeze(rows, r, c):
        return IntMatrix(r, c, tuple(tuple(x) for x in rows))

    return SmithDecomposition(freeze(U, n, n), freeze(A, n, m), freeze(V, m, m),
                              freeze(Ui, n, n), freeze(Vi, m, m))


def _normalize_sign(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def integer_kernel_basis(a: IntMatrix) -> list[tuple[int, ...]]:
    """A basis of the saturated lattice ``{x : a @ x == 0}``.

    Each vector is sign-normalized so its first nonzero entry is positive.
    """
    snf = smith_normal_form(a)
    r = snf.rank
    return [_normalize_sign(snf.V.column(j)) for j in range(r, a.cols)]


@dataclass(frozen=True)
class LinearSolveResult:
    particular: tuple[int, ...] | None
    homogeneous_basis: list[tuple[int, ...]]

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def _solve_with(snf: SmithDecomposition, b: Sequence[int]) -> tuple[int, ...] | None:
    c = snf.U.apply(b)
    diag = snf.diagonal
    y = [0] * snf.V.rows
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    return snf.V.apply(y)


def solve_integer_system(a: IntMatrix, b: Sequence[int]) -> LinearSolveResult:
    """Solve ``a @ x == b`` over the integers.

    Unsolvable systems give ``particular=None``; that is not an error.
    """
    if len(b) != a.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.rows}")
    snf = smith_normal_form(a)
    r = snf.rank
    basis = [_normalize_sign(snf.V.column(j)) for j in range(r, a.cols)]
    return LinearSolveResult(_solve_with(snf, b), basis)


class LatticeSolver:
    """Repeated solves against one fixed matrix, sharing a single SNF."""

    def __init__(self, a: IntMatrix):
        self.matrix = a
        self.snf = smith_normal_form(a)

    def solve(self, b: Sequence[int]) -> tuple[int, ...] | None:
        if len(b) != self.matrix.rows:
            raise ValueError("right-hand side length mismatch")
        return _solve_with(self.snf, b)


def hermite_basis(generators: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Canonical basis of the lattice spanned by ``generators`` in Z^dim.

    Rows of the Hermite normal form: echelon, positive pivots, entries above
    each pivot reduced into ``[0, pivot)``.  Equal lattices give equal output.
    """
    H = [list(g) for g in generators if any(g)]
    for g in H:
        if len(g) != dim:
            raise ValueError("generator has wrong length")
    out: list[list[int]] = []
    col = 0
    while H and col < dim:
        live = [r for r in H if r[col]]
        dead = [r for r in H if not r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    dead.append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for prev in out:
            q = prev[col] // piv[col]
            if q:
                prev[:] = [x - q * y for x, y in zip(prev, piv)]
        out.append(piv)
        H = [r for r in dead if any(r)]
        col += 1
    return [tuple(r) for r in out]
