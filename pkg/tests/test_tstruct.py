import random

import pytest
from hypothesis import given, settings, strategies as st

from chainlab.complex import ChainComplex, cohomology, cohomology_table, validate
from chainlab.exactla import FgModule, ModuleMap
from chainlab.matrix import ExactMatrix
from chainlab.rings import GF, QQ, ZZ
from chainlab.tstruct import (TORSION_PAIR, heart_H0, standard_t_verdict, t1_orthogonal,
                              tilted_t_verdict, torsion_decompose, truncate,
                              truncation_triangle)

from conftest import generated, rings, seeds


def M(rows, ring=ZZ):
    return ExactMatrix.from_rows(ring, rows)


def two_term(k, degree=-1):
    return ChainComplex.two_term(M([[k]]), degree)


def test_truncations_of_times_two():
    c = two_term(2)
    assert truncate(c, -1, "below").complex.is_zero()
    top = truncate(c, -1, "above").complex
    assert str(cohomology(top, 0)) == "Z/2"
    assert truncate(c, 0, "below").complex == c


def test_truncations_of_zero_map():
    c = two_term(0)
    lo = truncate(c, -1, "below")
    assert cohomology_table(lo.complex) == {-1: FgModule.free(ZZ, 1)}
    hi = truncate(c, -1, "above")
    assert cohomology_table(hi.complex) == {0: FgModule.free(ZZ, 1)}


def test_bad_side():
    with pytest.raises(ValueError):
        truncate(two_term(2), 0, "sideways")


@given(seeds, rings, st.integers(-2, 3))
def test_truncation_cohomology(seed, ring, n):
    c = generated(seed, ring).complex
    lo, hi = truncate(c, n, "below"), truncate(c, n, "above")
    assert validate(lo.complex).ok and validate(hi.complex).ok
    assert lo.map.commutes() and hi.map.commutes()
    for k in range(c.lo - 1, c.hi + 2):
        h = cohomology(c, k)
        zero = FgModule.zero(ring)
        assert cohomology(lo.complex, k) == (h if k <= n else zero)
        assert cohomology(hi.complex, k) == (h if k > n else zero)


@settings(max_examples=30)
@given(seeds, rings, st.integers(-2, 3))
def test_truncation_triangle_exact(seed, ring, n):
    tt = truncation_triangle(generated(seed, ring).complex, n)
    assert tt.exact
    assert tt.certificate.homotopy.check()


def test_truncation_connecting_map_vanishes_in_K():
    from chainlab.homotopy import find_null_homotopy
    tt = truncation_triangle(two_term(2), -1)
    assert find_null_homotopy(tt.triangle.h) is not None


@given(seeds, rings)
def test_standard_heart_is_degree_zero(seed, ring):
    c = generated(seed, ring).complex
    v = standard_t_verdict(c)
    table = cohomology_table(c)
    assert v.heart == all(n == 0 for n in table)
    assert v.in_le_n == all(n <= 0 for n in table)
    assert v.in_ge_n == all(n >= 0 for n in table)
    assert v.is_monotone()


def test_tilted_examples():
    assert tilted_t_verdict(two_term(2)).heart
    assert not tilted_t_verdict(ChainComplex.concentrated(ZZ, 0)).heart
    assert tilted_t_verdict(ChainComplex.concentrated(ZZ, -1)).heart


def test_tilted_heart_two_term():
    # Z^2 -> Z with kernel Z and cokernel Z/3
    c = ChainComplex.two_term(M([[3, 0]]), -1)
    assert tilted_t_verdict(c).heart
    # cokernel free: not in the tilted heart
    assert not tilted_t_verdict(ChainComplex.two_term(M([[1], [0]]), -1)).heart


@given(seeds)
def test_tilted_monotone(seed):
    assert tilted_t_verdict(generated(seed).complex).is_monotone()


def test_tilted_needs_z():
    with pytest.raises(ValueError):
        tilted_t_verdict(ChainComplex.concentrated(QQ, 0))


def test_heart_H0():
    assert str(heart_H0(two_term(2))) == "Z/2"
    c = ChainComplex(ZZ, {-1: 1, 0: 2, 1: 1}, {-1: M([[2], [0]]), 0: M([[0, 1]])})
    assert str(heart_H0(c)) == "Z/2"


@given(seeds, rings)
def test_heart_H0_matches_cohomology(seed, ring):
    c = generated(seed, ring).complex
    assert heart_H0(c) == cohomology(c, 0)


def test_torsion_decomposition():
    m = FgModule.from_orders(ZZ, [4, 0, 6])
    d = torsion_decompose(m)
    assert str(d.torsion) == "Z/2 + Z/12"
    assert str(d.free) == "Z"
    assert TORSION_PAIR.in_T(d.torsion) and TORSION_PAIR.in_F(d.free)
    assert d.projection.compose(d.inclusion).is_zero()
    assert "field" in torsion_decompose(FgModule.free(QQ, 2)).note


def test_torsion_pair_orthogonal():
    t, f = FgModule.from_orders(ZZ, [6]), FgModule.free(ZZ, 2)
    assert TORSION_PAIR.orthogonal(ModuleMap.zero(t, f))
    with pytest.raises(ValueError):
        TORSION_PAIR.orthogonal(ModuleMap.zero(f, t))


@settings(max_examples=30)
@given(seeds, seeds)
def test_t1_orthogonality_over_f2(sa, sb):
    x = truncate(generated(sa, GF(2)).complex, 0, "below").complex
    y = truncate(generated(sb, GF(2)).complex, 0, "above").complex
    holds, decisive = t1_orthogonal(x, y)
    assert holds and decisive


def test_truncation_triangle_of_zero_differential():
    c = ChainComplex.two_term(M([[0]]), 0)
    tt = truncation_triangle(c, 0)
    assert tt.exact
    assert cohomology_table(tt.below.complex) == {0: FgModule.free(ZZ, 1)}
    assert cohomology_table(tt.above.complex) == {1: FgModule.free(ZZ, 1)}
    # free truncations split, so the connecting map is zero in K
    from chainlab.homotopy import find_null_homotopy
    assert find_null_homotopy(tt.triangle.h) is not None
