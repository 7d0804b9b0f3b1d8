from functools import reduce
from itertools import combinations, permutations
from math import gcd, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diagchase.intlin import (IntMatrix, LatticeSolver, determinant, hermite_basis,
                              integer_kernel_basis, smith_normal_form, solve_integer_system)


def matrices(max_dim=5, bound=30, min_dim=0):
    return st.integers(min_dim, max_dim).flatmap(lambda m: st.integers(min_dim, max_dim).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                           min_size=m, max_size=m).map(lambda rows: IntMatrix.from_rows(rows, cols=n))))


def leibniz_det(rows):
    """Permutation expansion; deliberately unrelated to the Bareiss code."""
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inversions * prod(rows[i][p[i]] for i in range(n))
    return total


def determinantal_divisors(a: IntMatrix):
    """Invariant factors from gcds of k x k minors (independent oracle)."""
    rows = a.tolist()
    out, prev = [], 1
    for k in range(1, min(a.rows, a.cols) + 1):
        minors = [leibniz_det([[rows[i][j] for j in cs] for i in rs])
                  for rs in combinations(range(a.rows), k)
                  for cs in combinations(range(a.cols), k)]
        dk = reduce(gcd, minors, 0)
        if dk == 0:
            break
        out.append(dk // prev)
        prev = dk
    return out


def check_snf(a: IntMatrix):
    s = smith_normal_form(a)
    assert s.U @ a @ s.V == s.D
    assert abs(determinant(s.U)) == 1 and abs(determinant(s.V)) == 1
    assert s.U @ s.U_inv == IntMatrix.identity(a.rows)
    assert s.V @ s.V_inv == IntMatrix.identity(a.cols)
    diag = s.diagonal
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[:len(nonzero)] == tuple(nonzero), "zeros must come last"
    for x, y in zip(nonzero, nonzero[1:]):
        assert y % x == 0
    off = [(i, j) for i in range(a.rows) for j in range(a.cols) if i != j]
    assert all(s.D[i, j] == 0 for i, j in off)
    return s


# ---------------------------------------------------------------- worked values


def test_snf_two_by_two_example():
    # gcd of entries is 2 and |det| = 8, so the factors are 2 and 4
    s = check_snf(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert s.diagonal == (2, 4)
    assert s.rank == 2


def test_snf_of_zero_and_empty_shapes():
    assert smith_normal_form(IntMatrix.zeros(2, 3)).diagonal == (0, 0)
    assert smith_normal_form(IntMatrix.zeros(0, 3)).diagonal == ()
    s = check_snf(IntMatrix.zeros(3, 0))
    assert s.U == IntMatrix.identity(3)


def test_snf_coprime_entries_collapse_to_one():
    assert smith_normal_form(IntMatrix.from_rows([[2, 3]])).diagonal == (1,)
    assert smith_normal_form(IntMatrix.diagonal([2, 3])).diagonal == (1, 6)


def test_snf_negative_pivot_is_made_positive():
    assert smith_normal_form(IntMatrix.from_rows([[-5]])).diagonal == (5,)


def test_kernel_basis_example():
    assert integer_kernel_basis(IntMatrix.from_rows([[1, 2]])) == [(2, -1)]


def test_kernel_of_injective_matrix_is_empty():
    assert integer_kernel_basis(IntMatrix.from_rows([[1, 0], [0, 3], [1, 1]])) == []


def test_solve_example():
    r = solve_integer_system(IntMatrix.from_rows([[1, 2], [2, 4]]), (1, 2))
    assert r.solvable
    assert r.particular == (1, 0)
    assert r.homogeneous_basis == [(2, -1)]


def test_solve_reports_unsolvable_over_integers():
    # 2x = 1 has a rational solution but no integer one
    r = solve_integer_system(IntMatrix.from_rows([[2]]), (1,))
    assert not r.solvable
    assert LatticeSolver(IntMatrix.from_rows([[2]])).solve((1,)) is None


def test_determinant_examples():
    assert determinant(IntMatrix.from_rows([[2, 4], [6, 8]])) == -8
    assert determinant(IntMatrix.identity(0)) == 1
    with pytest.raises(ValueError):
        determinant(IntMatrix.zeros(2, 3))


def test_hermite_basis_spans_same_lattice():
    gens = [(2, 4), (6, 8), (4, 4)]
    basis = hermite_basis(gens, 2)
    solver_b = LatticeSolver(IntMatrix.from_columns(basis, 2))
    solver_g = LatticeSolver(IntMatrix.from_columns(gens, 2))
    assert all(solver_b.solve(g) is not None for g in gens)
    assert all(solver_g.solve(b) is not None for b in basis)
    assert len(basis) == 2


def test_matrix_shape_validation():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, ((1, 2),))
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])


# ---------------------------------------------------------------- properties


@given(matrices(max_dim=6, bound=100))
def test_snf_invariants(a):
    check_snf(a)


@given(matrices(max_dim=4, bound=12))
def test_snf_agrees_with_determinantal_divisors(a):
    s = smith_normal_form(a)
    nonzero = [d for d in s.diagonal if d]
    assert nonzero == determinantal_divisors(a)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_bareiss_matches_permutation_expansion(rows):
    assert determinant(IntMatrix.from_rows(rows)) == leibniz_det(rows)


@given(matrices(max_dim=5, bound=20))
def test_kernel_basis_is_a_basis_of_the_integer_kernel(a):
    basis = integer_kernel_basis(a)
    for v in basis:
        assert a.apply(v) == (0,) * a.rows
    s = smith_normal_form(a)
    assert len(basis) == a.cols - s.rank
    # saturation: the basis vectors extend to a unimodular matrix, so the
    # gcd of maximal minors of the basis matrix is 1
    if basis:
        assert determinantal_divisors(IntMatrix.from_columns(basis, a.cols)) == [1] * len(basis)


@given(matrices(max_dim=4, bound=20, min_dim=1), st.data())
def test_solve_round_trip(a, data):
    x = tuple(data.draw(st.lists(st.integers(-10, 10), min_size=a.cols, max_size=a.cols)))
    b = a.apply(x)
    r = solve_integer_system(a, b)
    assert r.solvable
    assert a.apply(r.particular) == b
    assert LatticeSolver(a).solve(b) is not None


@given(matrices(max_dim=4, bound=9), matrices(max_dim=4, bound=9))
def test_matrix_algebra_is_consistent(a, b):
    if a.cols == b.rows:
        assert (a @ b).transpose() == b.transpose() @ a.transpose()
    if a.shape == b.shape:
        assert (a + b) - b == a
        assert a + (-a) == IntMatrix.zeros(*a.shape)
