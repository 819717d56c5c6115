from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from logcoh.exactalg import (GF, QQ, ContainmentViolation, Matrix, NotAPrime, field_from_string,
                             int_det, inverse, invariant_factors, kernel_basis, rank, rref,
                             smith_normal_form, subquotient)

small = st.integers(-5, 5)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_prime_fields():
    F = GF(7)
    assert F(3) * F(5) == F(1)
    assert F(3) / F(5) * F(5) == F(3)
    assert GF(1009).characteristic == 1009
    with pytest.raises(NotAPrime):
        GF(1007)            # 19 * 53
    with pytest.raises(NotAPrime):
        field_from_string("fp:1007")
    assert field_from_string("q") == QQ


def test_rref_examples():
    r = rref(Matrix.identity(3))
    assert r.rank == 3 and r.pivot_columns == [0, 1, 2]
    r = rref(Matrix.zero(2, 4))
    assert r.rank == 0 and r.pivot_columns == []
    r = rref([[1, 2], [2, 4]])
    assert r.rank == 1
    assert r.reduced.tolist() == [[1, 2], [0, 0]]


def test_rref_over_fp():
    r = rref([[1, 2], [3, 4]], GF(2))
    assert r.rank == 1         # det = -2 vanishes mod 2


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(4)) == []
    assert len(kernel_basis(Matrix.zero(2, 3))) == 3
    ker = kernel_basis([[1, 1, 0]])
    assert len(ker) == 2
    assert rank(ker + [[1, -1, 0]]) == 2


@given(matrices())
def test_rank_matches_sympy_and_rank_nullity(rows):
    m = Matrix.from_rows(rows)
    assert rank(m) == sympy.Matrix(rows).rank()
    ker = kernel_basis(m)
    assert len(ker) + rank(m) == m.cols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@given(matrices())
def test_rref_is_row_equivalent(rows):
    r = rref(rows)
    assert r.reduced.tolist() == [[Fraction(x) for x in row] for row in
                                  sympy.Matrix(rows).rref()[0].tolist()]


def test_inverse():
    m = [[2, 1], [7, 4]]
    inv = inverse(m)
    assert (Matrix.from_rows(m) @ inv).tolist() == Matrix.identity(2).tolist()
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]])


def test_subquotient_examples():
    e1, e2 = [1, 0], [0, 1]
    assert subquotient([e1, e2], [e1]).dim == 1
    assert subquotient([e1, e2], [e1, e2]).dim == 0
    sq = subquotient([[1, 1], [0, 1]], [[1, 2]])
    assert sq.dim == 1
    with pytest.raises(ContainmentViolation):
        subquotient([e1], [e2])


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5),
       st.lists(st.lists(small, min_size=5, max_size=5), min_size=0, max_size=4))
def test_subquotient_additive_and_projection(Z, coeffs):
    # B is built inside span(Z) from random combinations
    B = [[sum(c[i] * Z[i][j] for i in range(len(Z))) for j in range(4)] for c in coeffs]
    sq = subquotient(Z, B, ambient_dim=4)
    assert sq.dim == rank(Z) - (rank(B) if B else 0)
    for i, r in enumerate(sq.representatives):
        assert sq.project(r) == [1 if j == i else 0 for j in range(sq.dim)]
    for b in B:
        assert all(x == 0 for x in sq.project(b))


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]]).S == [[1, 0], [0, 1]]
    assert smith_normal_form([[9]]).S == [[9]]
    # |det| = 8 and the gcd of the entries is 2, so the factors are 2 and 4
    assert invariant_factors([[2, 4], [6, 8]]) == [2, 4]
    assert invariant_factors([[2, 4], [6, 8]]) == [abs(int(x)) for x in
                                                  sympy_snf(sympy.Matrix([[2, 4], [6, 8]])).diagonal()]


@given(matrices(4, 4))
def test_snf_properties(rows):
    U, S, V = smith_normal_form(rows)
    prod = Matrix.from_rows(U) @ Matrix.from_rows(rows) @ Matrix.from_rows(V)
    assert prod.tolist() == [list(r) for r in S]
    assert abs(int_det(U)) == 1 and abs(int_det(V)) == 1
    d = [S[i][i] for i in range(min(len(S), len(S[0])))]
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert nz == [abs(int(x)) for x in sympy_snf(sympy.Matrix(rows)).diagonal() if x]
