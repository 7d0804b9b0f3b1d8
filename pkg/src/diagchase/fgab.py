"""Finitely generated abelian groups and their homomorphisms.

A group is stored in invariant-factor form ``Z/d_1 ⊕ … ⊕ Z/d_k`` with
``d_1 | d_2 | …``, no unit factors, and ``0`` standing for a copy of ``Z``
(zeros come last).  A homomorphism is an integer matrix acting on generator
coordinates, with entry ``(j, i)`` reduced modulo the ``j``-th target factor.
Because both forms are canonical, object and morphism equality are literal
equality.

Every construction works by writing the answer as ``Z^r / (relation
lattice)`` and reading off invariant factors from a Smith normal form; the
unimodular change of basis is folded into the returned structure maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import prod
from typing import Sequence

from .abcat import AbelianCategory, CokernelData, DirectSumData, KernelData
from .errors import InputError, NotAHomomorphism, PreconditionError
from .intlin import (IntMatrix, LatticeSolver, hermite_basis, integer_kernel_basis,
                     smith_normal_form)

__all__ = [
    "FgGroup", "GroupHom", "FgAb", "FGAB",
    "normalize_object", "make_hom", "identity", "zero_hom", "compose",
    "kernel", "cokernel", "factor_through_kernel", "factor_through_cokernel",
    "direct_sum", "lift_through_mono", "colift_through_epi",
]


def _is_canonical(factors: Sequence[int]) -> bool:
    finite = [d for d in factors if d != 0]
    nfin = len(finite)
    if any(d != 0 for d in factors[nfin:]):
        return False
    if any(d < 2 for d in finite):
        return False
    return all(finite[i + 1] % finite[i] == 0 for i in range(nfin - 1))


@dataclass(frozen=True)
class FgGroup:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors",
                           tuple(int(d) for d in self.invariant_factors))
        if not _is_canonical(self.invariant_factors):
            raise InputError(
                f"{list(self.invariant_factors)} is not in invariant-factor form; "
                "use normalize_object")

    @property
    def rank(self) -> int:
        """Number of cyclic generators (not the free rank)."""
        return len(self.invariant_factors)

    @property
    def free_rank(self) -> int:
        return self.invariant_factors.count(0)

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return 0 not in self.invariant_factors

    @property
    def order(self) -> int | None:
        return prod(self.invariant_factors) if self.is_finite else None

    def elements(self):
        """All elements in lexicographic order (finite groups only)."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        return product(*(range(d) for d in self.invariant_factors))

    def __repr__(self):
        return f"FgGroup({list(self.invariant_factors)})"


def _reduce_rows(data, factors):
    return tuple(tuple(x % e for x in row) if e else tuple(row)
                 for row, e in zip(data, factors))


@dataclass(frozen=True, eq=True)
class GroupHom:
    src: FgGroup
    dst: FgGroup
    matrix: IntMatrix

    def __post_init__(self):
        m, n = self.src.rank, self.dst.rank
        if self.matrix.shape != (n, m):
            raise InputError(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, "
                f"expected {n}x{m} for {self.src} -> {self.dst}")
        for j, (row, e) in enumerate(zip(self.matrix.data, self.dst.invariant_factors)):
            for i, (x, d) in enumerate(zip(row, self.src.invariant_factors)):
                if e and not 0 <= x < e:
                    raise InputError(f"entry ({j},{i}) is not reduced modulo {e}")
                bad = (x * d) % e if e else x * d
                if bad:
                    raise NotAHomomorphism(
                        f"not a homomorphism: entry ({j},{i}) = {x} times source "
                        f"order {d} is not 0 modulo target factor {e}", (j, i))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        y = self.matrix.apply(x)
        return tuple(v % e if e else v for v, e in zip(y, self.dst.invariant_factors))

    def __matmul__(self, other: GroupHom) -> GroupHom:
        return compose(self, other)

    def __add__(self, other: GroupHom) -> GroupHom:
        return add(self, other)

    def __neg__(self) -> GroupHom:
        return negate(self)

    def __sub__(self, other: GroupHom) -> GroupHom:
        return add(self, negate(other))

    def __repr__(self):
        return f"GroupHom({self.src} -> {self.dst}, {self.matrix.tolist()})"


def _hom(src: FgGroup, dst: FgGroup, matrix: IntMatrix) -> GroupHom:
    return GroupHom(src, dst, IntMatrix(matrix.rows, matrix.cols,
                                        _reduce_rows(matrix.data, dst.invariant_factors)))


def make_hom(src: FgGroup, dst: FgGroup, matrix) -> GroupHom:
    """Validate and canonically reduce a homomorphism given by its matrix.

    ``matrix`` is ``dst.rank`` rows of ``src.rank`` integers (or an
    :class:`IntMatrix`).  Raises :class:`NotAHomomorphism` naming the first
    entry whose congruence fails.
    """
    if not isinstance(matrix, IntMatrix):
        rows = [list(r) for r in matrix]
        if len(rows) != dst.rank or any(len(r) != src.rank for r in rows):
            raise InputError(
                f"matrix shape does not match {dst.rank}x{src.rank} for {src} -> {dst}")
        matrix = IntMatrix.from_rows(rows, cols=src.rank)
    return _hom(src, dst, matrix)


def normalize_object(factors: Sequence[int]) -> FgGroup:
    """Canonical group isomorphic to ``⊕ Z/n`` over ``factors`` (0 means Z)."""
    factors = [int(d) for d in factors]
    if any(d < 0 for d in factors):
        raise InputError("invariant factors must be nonnegative")
    return _present(IntMatrix.diagonal(factors)).group


ZERO = FgGroup(())


def identity(a: FgGroup) -> GroupHom:
    return _hom(a, a, IntMatrix.identity(a.rank))


def zero_hom(a: FgGroup, b: FgGroup) -> GroupHom:
    return GroupHom(a, b, IntMatrix.zeros(b.rank, a.rank))


def compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """``g ∘ f``."""
    if f.dst != g.src:
        raise InputError(f"cannot compose: {f.dst} != {g.src}")
    return _hom(f.src, g.dst, g.matrix @ f.matrix)


def add(f: GroupHom, g: GroupHom) -> GroupHom:
    if (f.src, f.dst) != (g.src, g.dst):
        raise InputError("cannot add morphisms with different endpoints")
    return _hom(f.src, f.dst, f.matrix + g.matrix)


def negate(f: GroupHom) -> GroupHom:
    return _hom(f.src, f.dst, -f.matrix)


# ---------------------------------------------------------------- presentations


@dataclass(frozen=True)
class _Presentation:
    """``Z^n / colspan(R)  ≅  group`` via ``x ↦ U x`` restricted to ``keep``."""
    group: FgGroup
    keep: tuple[int, ...]
    U: IntMatrix
    U_inv: IntMatrix

    @property
    def to_group(self) -> IntMatrix:
        return self.U.select_rows(self.keep)

    @property
    def from_group(self) -> IntMatrix:
        return self.U_inv.select_cols(self.keep)


@lru_cache(maxsize=4096)
def _present(relations: IntMatrix) -> _Presentation:
    snf = smith_normal_form(relations)
    diag = snf.diagonal
    factors = [diag[i] if i < len(diag) else 0 for i in range(relations.rows)]
    keep = tuple(i for i, d in enumerate(factors) if d != 1)
    return _Presentation(FgGroup(tuple(factors[i] for i in keep)), keep, snf.U, snf.U_inv)


def _finite_relations(b: FgGroup) -> IntMatrix:
    """Columns ``e_j * unit_j`` for the finite factors of ``b``."""
    idx = [j for j, e in enumerate(b.invariant_factors) if e]
    return IntMatrix(b.rank, len(idx), tuple(
        tuple(b.invariant_factors[j] if j == r else 0 for j in idx)
        for r in range(b.rank)))


# ---------------------------------------------------------------- kernel


@dataclass(frozen=True)
class _KernelInternals:
    data: KernelData
    lattice: LatticeSolver
    pres: _Presentation


@lru_cache(maxsize=8192)
def _kernel_internals(f: GroupHom) -> _KernelInternals:
    m = f.src.rank
    # L = {x : M x lies in the target's relation lattice}
    big = f.matrix.hstack(_finite_relations(f.dst))
    gens = [v[:m] for v in integer_kernel_basis(big)]
    basis = hermite_basis(gens, m)
    B = IntMatrix.from_columns(basis, m)
    solver = LatticeSolver(B)
    cols = []
    for i, d in enumerate(f.src.invariant_factors):
        c = solver.solve(tuple(d if k == i else 0 for k in range(m)))
        assert c is not None, "source relations must lie in the kernel lattice"
        cols.append(c)
    relations = IntMatrix.from_columns(cols, len(basis))
    pres = _present(relations)
    inclusion = _hom(pres.group, f.src, B @ pres.from_group)
    return _KernelInternals(KernelData(pres.group, inclusion), solver, pres)


def kernel(f: GroupHom) -> KernelData:
    """Kernel object ``K_f`` and its inclusion into ``f.src``."""
    return _kernel_internals(f).data


def factor_through_kernel(f: GroupHom, g: GroupHom) -> GroupHom:
    """Unique ``h`` with ``ker(f) ∘ h == g``."""
    if g.dst != f.src:
        raise InputError("factor_through_kernel: g must land in the domain of f")
    if not compose(f, g).matrix.is_zero():
        raise PreconditionError("factor_through_kernel: f ∘ g != 0")
    ki = _kernel_internals(f)
    cols = []
    for x in g.matrix.columns():
        c = ki.lattice.solve(x)
        assert c is not None, "column of g escaped the kernel lattice"
        cols.append(ki.pres.to_group.apply(c))
    h = _hom(g.src, ki.data.kernel_object,
             IntMatrix.from_columns(cols, ki.data.kernel_object.rank))
    assert compose(ki.data.inclusion, h) == g
    return h


# ---------------------------------------------------------------- cokernel


@lru_cache(maxsize=8192)
def _cokernel_internals(f: GroupHom) -> tuple[CokernelData, _Presentation]:
    pres = _present(f.matrix.hstack(_finite_relations(f.dst)))
    return CokernelData(pres.group, _hom(f.dst, pres.group, pres.to_group)), pres


def cokernel(f: GroupHom) -> CokernelData:
    """Cokernel object ``C_f`` and the quotient map from ``f.dst``."""
    return _cokernel_internals(f)[0]


def factor_through_cokernel(f: GroupHom, g: GroupHom) -> GroupHom:
    """Unique ``h`` with ``h ∘ cok(f) == g``."""
    if g.src != f.dst:
        raise InputError("factor_through_cokernel: g must start at the codomain of f")
    if not compose(g, f).matrix.is_zero():
        raise PreconditionError("factor_through_cokernel: g ∘ f != 0")
    data, pres = _cokernel_internals(f)
    h = _hom(data.cokernel_object, g.dst, g.matrix @ pres.from_group)
    assert compose(h, data.projection) == g
    return h


# ---------------------------------------------------------------- direct sum


@lru_cache(maxsize=4096)
def direct_sum(a: FgGroup, b: FgGroup) -> DirectSumData:
    """Biproduct in canonical form; the structure maps absorb the
    normalizing change of coordinates (e.g. the CRT twist in Z/2 ⊕ Z/3)."""
    pres = _present(IntMatrix.diagonal(a.invariant_factors + b.invariant_factors))
    s = pres.group
    to_s, from_s = pres.to_group, pres.from_group
    ra = list(range(a.rank))
    rb = list(range(a.rank, a.rank + b.rank))
    return DirectSumData(
        s,
        inj_a=_hom(a, s, to_s.select_cols(ra)),
        inj_b=_hom(b, s, to_s.select_cols(rb)),
        proj_a=_hom(s, a, from_s.select_rows(ra)),
        proj_b=_hom(s, b, from_s.select_rows(rb)),
    )


# ---------------------------------------------------------------- lifts


def lift_through_mono(h: GroupHom, x: GroupHom) -> GroupHom:
    """A ``v`` with ``h ∘ v == x`` (unique when ``h`` is monic)."""
    if h.dst != x.dst:
        raise InputError("lift_through_mono: h and x must share a codomain")
    solver = LatticeSolver(h.matrix.hstack(_finite_relations(h.dst)))
    cols = []
    for col in x.matrix.columns():
        z = solver.solve(col)
        if z is None:
            raise PreconditionError("lift_through_mono: x does not factor through h")
        cols.append(z[:h.src.rank])
    try:
        v = _hom(x.src, h.src, IntMatrix.from_columns(cols, h.src.rank))
    except NotAHomomorphism as exc:
        raise PreconditionError("lift_through_mono: no well-defined lift") from exc
    if compose(h, v) != x:
        raise PreconditionError("lift_through_mono: lift does not reproduce x")
    return v


def colift_through_epi(e: GroupHom, x: GroupHom) -> GroupHom:
    """A ``v`` with ``v ∘ e == x`` (unique when ``e`` is epic)."""
    if e.src != x.src:
        raise InputError("colift_through_epi: e and x must share a domain")
    solver = LatticeSolver(e.matrix.hstack(_finite_relations(e.dst)))
    n = e.dst.rank
    cols = []
    for k in range(n):
        z = solver.solve(tuple(int(i == k) for i in range(n)))
        if z is None:
            raise PreconditionError("colift_through_epi: e is not epic")
        cols.append(x.matrix.apply(z[:e.src.rank]))
    try:
        v = _hom(e.dst, x.dst, IntMatrix.from_columns(cols, x.dst.rank))
    except NotAHomomorphism as exc:
        raise PreconditionError("colift_through_epi: x does not vanish on ker e") from exc
    if compose(v, e) != x:
        raise PreconditionError("colift_through_epi: x does not vanish on ker e")
    return v


# ---------------------------------------------------------------- category instance


class FgAb(AbelianCategory):
    """The category of finitely generated abelian groups."""

    name = "fgab"

    def check_object(self, a):
        if not isinstance(a, FgGroup):
            raise InputError(f"not an FgGroup: {a!r}")

    def check_morphism(self, f):
        if not isinstance(f, GroupHom):
            raise InputError(f"not a GroupHom: {f!r}")

    def domain(self, f):
        return f.src

    def codomain(self, f):
        return f.dst

    def object_equal(self, a, b):
        return a == b

    def zero_object(self):
        return ZERO

    def is_zero_object(self, a):
        return not a.invariant_factors

    def identity(self, a):
        return identity(a)

    def compose(self, g, f):
        return compose(g, f)

    def add(self, f, g):
        return add(f, g)

    def negate(self, f):
        return negate(f)

    def zero_morphism(self, a, b):
        return zero_hom(a, b)

    def morphism_equal(self, f, g):
        return f == g

    def is_zero_morphism(self, f):
        return f.matrix.is_zero()

    def direct_sum(self, a, b):
        return direct_sum(a, b)

    def kernel(self, f):
        return kernel(f)

    def cokernel(self, f):
        return cokernel(f)

    def factor_through_kernel(self, f, g):
        return factor_through_kernel(f, g)

    def factor_through_cokernel(self, f, g):
        return factor_through_cokernel(f, g)

    def lift_through_mono(self, m, x):
        return lift_through_mono(m, x)

    def colift_through_epi(self, e, x):
        return colift_through_epi(e, x)

    def describe_object(self, a):
        return list(a.invariant_factors)

    def describe_morphism(self, f):
        return f.matrix.tolist()


FGAB = FgAb()
