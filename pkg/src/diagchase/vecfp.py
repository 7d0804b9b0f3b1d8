"""Finite-dimensional vector spaces over a prime field F_p.

Used as an independent second instance: kernels and cokernels come from
Gaussian elimination mod p rather than Smith normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .abcat import AbelianCategory, CokernelData, DirectSumData, KernelData
from .errors import InputError, PreconditionError
from .intlin import IntMatrix

__all__ = ["FpSpace", "FpMap", "VecFp", "make_map", "rref_mod_p",
           "fp_kernel", "fp_cokernel", "rank_mod_p"]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FpSpace:
    prime: int
    dim: int

    def __post_init__(self):
        if not is_prime(self.prime):
            raise InputError(f"{self.prime} is not prime")
        if self.dim < 0:
            raise InputError("dimension must be nonnegative")

    def __repr__(self):
        return f"F{self.prime}^{self.dim}"


@dataclass(frozen=True)
class FpMap:
    src: FpSpace
    dst: FpSpace
    matrix: IntMatrix

    def __post_init__(self):
        if self.src.prime != self.dst.prime:
            raise InputError("source and target live over different primes")
        if self.matrix.shape != (self.dst.dim, self.src.dim):
            raise InputError(f"matrix shape {self.matrix.shape} does not match "
                             f"{self.src} -> {self.dst}")
        p = self.src.prime
        if any(not 0 <= x < p for x in self.matrix.entries):
            raise InputError(f"entries must be reduced modulo {p}")

    @property
    def prime(self) -> int:
        return self.src.prime

    def __repr__(self):
        return f"FpMap({self.src} -> {self.dst}, {self.matrix.tolist()})"


def _map(src: FpSpace, dst: FpSpace, matrix: IntMatrix) -> FpMap:
    p = src.prime
    return FpMap(src, dst, IntMatrix(matrix.rows, matrix.cols,
                                     tuple(tuple(x % p for x in r) for r in matrix.data)))


def make_map(src: FpSpace, dst: FpSpace, matrix) -> FpMap:
    if not isinstance(matrix, IntMatrix):
        rows = [list(r) for r in matrix]
        if len(rows) != dst.dim or any(len(r) != src.dim for r in rows):
            raise InputError(f"matrix shape does not match {dst.dim}x{src.dim}")
        matrix = IntMatrix.from_rows(rows, cols=src.dim)
    return _map(src, dst, matrix)


def rref_mod_p(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p, pivots taken leftmost first."""
    A = [[x % p for x in r] for r in rows]
    ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                q = A[i][c]
                A[i] = [(x - q * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank_mod_p(m: IntMatrix, p: int) -> int:
    return len(rref_mod_p(m.tolist(), p)[1])


def _null_basis(m: IntMatrix, p: int) -> tuple[list[tuple[int, ...]], list[int]]:
    """Null space basis; returns the basis and the free columns it is
    indexed by (basis vector k is the unit vector at free[k] plus pivots)."""
    R, pivots = rref_mod_p(m.tolist(), p)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * m.cols
        v[fc] = 1
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc] % p
        basis.append(tuple(v))
    return basis, free


@lru_cache(maxsize=4096)
def _kernel_internals(f: FpMap):
    basis, free = _null_basis(f.matrix, f.prime)
    k = FpSpace(f.prime, len(basis))
    return KernelData(k, _map(k, f.src, IntMatrix.from_columns(basis, f.src.dim))), free


@lru_cache(maxsize=4096)
def _cokernel_internals(f: FpMap):
    # rows of the projection span the left null space of f
    basis, free = _null_basis(f.matrix.transpose(), f.prime)
    c = FpSpace(f.prime, len(basis))
    return CokernelData(c, _map(f.dst, c, IntMatrix.from_rows(basis, cols=f.dst.dim))), free


def fp_kernel(f: FpMap) -> KernelData:
    return _kernel_internals(f)[0]


def fp_cokernel(f: FpMap) -> CokernelData:
    return _cokernel_internals(f)[0]


def _solve(a: IntMatrix, b: IntMatrix, p: int) -> IntMatrix | None:
    """Some X with a @ X == b mod p, free variables set to zero."""
    aug = [list(ra) + list(rb) for ra, rb in zip(a.data, b.data)]
    if not aug:
        return IntMatrix.zeros(a.cols, b.cols)
    R, pivots = rref_mod_p(aug, p)
    if any(c >= a.cols for c in pivots):
        return None
    X = [[0] * b.cols for _ in range(a.cols)]
    for row, pc in zip(R, pivots):
        X[pc] = row[a.cols:]
    return IntMatrix(a.cols, b.cols, tuple(tuple(r) for r in X))


def _same_prime(*maps):
    if len({m.prime for m in maps}) != 1:
        raise InputError("maps live over different primes")


class VecFp(AbelianCategory):
    """Finite-dimensional vector spaces over F_p for one fixed prime."""

    def __init__(self, prime: int):
        if not is_prime(prime):
            raise InputError(f"{prime} is not prime")
        self.prime = prime
        self.name = f"vecfp[{prime}]"

    def space(self, dim: int) -> FpSpace:
        return FpSpace(self.prime, dim)

    def check_object(self, a):
        if not isinstance(a, FpSpace) or a.prime != self.prime:
            raise InputError(f"not a space over F{self.prime}: {a!r}")

    def check_morphism(self, f):
        if not isinstance(f, FpMap) or f.prime != self.prime:
            raise InputError(f"not a map over F{self.prime}: {f!r}")

    def domain(self, f):
        return f.src

    def codomain(self, f):
        return f.dst

    def object_equal(self, a, b):
        return a == b

    def zero_object(self):
        return FpSpace(self.prime, 0)

    def is_zero_object(self, a):
        return a.dim == 0

    def identity(self, a):
        return FpMap(a, a, IntMatrix.identity(a.dim))

    def compose(self, g, f):
        if f.dst != g.src:
            raise InputError("cannot compose: endpoints differ")
        return _map(f.src, g.dst, g.matrix @ f.matrix)

    def add(self, f, g):
        if (f.src, f.dst) != (g.src, g.dst):
            raise InputError("cannot add maps with different endpoints")
        return _map(f.src, f.dst, f.matrix + g.matrix)

    def negate(self, f):
        return _map(f.src, f.dst, -f.matrix)

    def zero_morphism(self, a, b):
        return FpMap(a, b, IntMatrix.zeros(b.dim, a.dim))

    def morphism_equal(self, f, g):
        return f == g

    def is_zero_morphism(self, f):
        return f.matrix.is_zero()

    def direct_sum(self, a, b):
        s = FpSpace(self.prime, a.dim + b.dim)
        n = s.dim
        ia = IntMatrix.from_columns(
            [tuple(int(r == c) for r in range(n)) for c in range(a.dim)], n)
        ib = IntMatrix.from_columns(
            [tuple(int(r == a.dim + c) for r in range(n)) for c in range(b.dim)], n)
        return DirectSumData(s, FpMap(a, s, ia), FpMap(b, s, ib),
                             FpMap(s, a, ia.transpose()), FpMap(s, b, ib.transpose()))

    def kernel(self, f):
        return fp_kernel(f)

    def cokernel(self, f):
        return fp_cokernel(f)

    def factor_through_kernel(self, f, g):
        if g.dst != f.src:
            raise InputError("factor_through_kernel: g must land in the domain of f")
        if not self.compose(f, g).matrix.is_zero():
            raise PreconditionError("factor_through_kernel: f ∘ g != 0")
        (k, incl), free = _kernel_internals(f)
        # the inclusion is the identity on the free coordinates
        h = FpMap(g.src, k, g.matrix.select_rows(free))
        assert self.compose(incl, h) == g
        return h

    def factor_through_cokernel(self, f, g):
        if g.src != f.dst:
            raise InputError("factor_through_cokernel: g must start at the codomain of f")
        if not self.compose(g, f).matrix.is_zero():
            raise PreconditionError("factor_through_cokernel: g ∘ f != 0")
        (c, proj), free = _cokernel_internals(f)
        # the projection is the identity on the free coordinates
        h = FpMap(c, g.dst, g.matrix.select_cols(free))
        assert self.compose(h, proj) == g
        return h

    def lift_through_mono(self, m, x):
        if m.dst != x.dst:
            raise InputError("lift_through_mono: m and x must share a codomain")
        sol = _solve(m.matrix, x.matrix, self.prime)
        if sol is None:
            raise PreconditionError("lift_through_mono: x does not factor through m")
        return _map(x.src, m.src, sol)

    def colift_through_epi(self, e, x):
        if e.src != x.src:
            raise InputError("colift_through_epi: e and x must share a domain")
        # v e = x  <=>  e^T v^T = x^T
        sol = _solve(e.matrix.transpose(), x.matrix.transpose(), self.prime)
        if sol is None:
            raise PreconditionError("colift_through_epi: x does not factor through e")
        return _map(e.dst, x.dst, sol.transpose())

    def describe_object(self, a):
        return a.dim

    def describe_morphism(self, f):
        return f.matrix.tolist()
