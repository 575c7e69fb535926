from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import invariant_factors

from chainlab.exactla import (FgModule, ModuleMap, cokernel_presentation, homology_at,
                              invertible_inverse, is_exact_at, kernel_basis,
                              module_map_analysis, rank, smith_normal_form, snf,
                              solve_linear, span_basis)
from chainlab.matrix import ExactMatrix
from chainlab.rings import GF, QQ, ZZ

from conftest import matrices


def M(rows, ring=ZZ):
    return ExactMatrix.from_rows(ring, rows)


def _oracle_factors(m):
    if m.rows == 0 or m.cols == 0:
        return ()
    fs = invariant_factors(sympy.Matrix(m.tolist()), domain=sympy.ZZ)
    return tuple(abs(int(x)) for x in fs if x != 0)


@given(matrices(ZZ, 6, 12))
def test_snf_matches_sympy(m):
    res = snf(m, want_uinv=True, want_vinv=True)
    assert res.u @ m @ res.v == res.d
    assert res.u @ res.uinv == ExactMatrix.identity(ZZ, m.rows)
    assert res.v @ res.vinv == ExactMatrix.identity(ZZ, m.cols)
    diag = res.diag[:res.rank]
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    assert all(x > 0 for x in diag)
    assert tuple(diag) == _oracle_factors(m)


@given(matrices(ZZ, 5, 6))
def test_snf_off_diagonal_is_zero(m):
    _, d, _ = smith_normal_form(m)
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d.row(i)[j] == 0


@pytest.mark.parametrize("ring", [QQ, GF(2), GF(5), GF(7)])
def test_snf_over_fields_is_rank_normal(ring):
    m = M([[1, 2, 3], [2, 4, 6], [1, 0, 1]], ring)
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    r = rank(m)
    assert [d.row(i)[i] for i in range(3)] == [1] * r + [0] * (3 - r)


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]
    assert rank(M(rows, QQ)) == 2
    assert rank(M(rows, GF(2))) == 1
    assert rank(M(rows, ZZ)) == 2


@given(matrices(ZZ, 5, 7))
def test_kernel_basis_is_saturated(m):
    K = kernel_basis(m)
    assert K.rows == m.cols
    assert K.cols == m.cols - rank(m)
    assert (m @ K).is_zero()
    # a saturated sublattice has torsion-free quotient
    assert cokernel_presentation(K).is_torsion_free()


@given(matrices(QQ, 5, 7), )
def test_kernel_basis_over_q(m):
    K = kernel_basis(m)
    assert (m @ K).is_zero()
    assert rank(K) == K.cols == m.cols - rank(m)


def test_cokernel_examples():
    assert str(cokernel_presentation(M([[2, 0], [0, 3]]))) == "Z/6"
    assert str(cokernel_presentation(M([[2], [4]]))) == "Z/2 + Z"
    assert str(cokernel_presentation(ExactMatrix(ZZ, 2, 0))) == "Z^2"
    assert cokernel_presentation(M([[1, 0], [0, -1]])).is_zero()


@given(matrices(ZZ, 5, 9))
def test_cokernel_order_is_gcd_of_minors(m):
    # for a square matrix the torsion order of the cokernel is |det|
    if m.rows != m.cols or m.rows == 0:
        return
    det = int(sympy.Matrix(m.tolist()).det())
    coker = cokernel_presentation(m)
    if det == 0:
        assert coker.free_rank > 0
    else:
        assert coker.order() == abs(det)


def test_solve_linear():
    m = M([[2, 0], [0, 3]])
    assert solve_linear(m, [4, 9]) == (2, 3)
    assert solve_linear(m, [1, 0]) is None
    q = M([[2, 0], [0, 3]], QQ)
    assert solve_linear(q, [1, 1]) == (Fraction(1, 2), Fraction(1, 3))


@given(matrices(ZZ, 4, 6), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_solve_linear_round_trip(m, x):
    b = m.apply(x[:m.cols])
    y = solve_linear(m, b)
    assert y is not None
    assert m.apply(y) == b


@given(matrices(GF(5), 4, 4))
def test_invertible_inverse(m):
    inv = invertible_inverse(m)
    if m.rows != m.cols:
        assert inv is None
    elif rank(m) == m.rows:
        assert m @ inv == ExactMatrix.identity(m.ring, m.rows)
    else:
        assert inv is None


def test_unimodular_inverse_over_z():
    assert invertible_inverse(M([[2, 1], [1, 1]])) == M([[1, -1], [-1, 2]])
    assert invertible_inverse(M([[2, 0], [0, 1]])) is None


def test_span_basis_drops_dependent_columns():
    b = span_basis(M([[1, 2, 3], [0, 0, 0]]))
    assert b.cols == 1


def test_module_normal_form():
    m = FgModule.from_orders(ZZ, [4, 6, 0])
    assert m.invariant_factors == (2, 12)
    assert m.free_rank == 1
    assert str(m) == "Z/2 + Z/12 + Z"
    assert FgModule.from_orders(ZZ, [1, 1]).is_zero()
    assert str(FgModule.zero(ZZ)) == "0"
    with pytest.raises(ValueError):
        FgModule(ZZ, 0, (2, 3))


def test_module_map_analysis_projection():
    z4, z2 = FgModule.from_orders(ZZ, [4]), FgModule.from_orders(ZZ, [2])
    an = module_map_analysis(ModuleMap(z4, z2, M([[1]])))
    assert str(an.kernel) == "Z/2"
    assert an.cokernel.is_zero()
    assert str(an.image) == "Z/2"
    assert not an.is_iso


def test_module_map_analysis_times_two():
    z = FgModule.free(ZZ, 1)
    an = module_map_analysis(ModuleMap(z, z, M([[2]])))
    assert an.kernel.is_zero()
    assert str(an.cokernel) == "Z/2"


def test_module_map_rejects_non_homomorphism():
    with pytest.raises(ValueError):
        ModuleMap(FgModule.from_orders(ZZ, [2]), FgModule.free(ZZ, 1), M([[1]]))


def test_homology_at_short_sequence():
    z = FgModule.free(ZZ, 1)
    z2 = FgModule.from_orders(ZZ, [2])
    two = ModuleMap(z, z, M([[2]]))
    proj = ModuleMap(z, z2, M([[1]]))
    assert is_exact_at(two, proj)
    # ker(proj) = 2Z is free of rank one
    assert str(homology_at(ModuleMap.zero(z, z), proj)) == "Z"
