from math import gcd

import pytest
from hypothesis import given, strategies as st

from chainlab.complex import ChainComplex, cohomology
from chainlab.derived import (UnsupportedOverZ, derived_tensor, derived_tensor_cohomology,
                              ext, free_resolution, hom_derived, tor)
from chainlab.exactla import FgModule
from chainlab.matrix import ExactMatrix
from chainlab.rings import QQ, ZZ

orders = st.lists(st.integers(0, 12), min_size=0, max_size=3)


def mod(*orders, ring=ZZ):
    return FgModule.from_orders(ring, list(orders))


def _tensor_orders(a, b):
    return [gcd(x, y) for x in a for y in b]


def _tor_orders(a, b):
    return [gcd(x, y) for x in a if x for y in b if y]


def _hom_orders(a, b):
    # Hom(Z/x, Z/y) = Z/gcd, Hom(Z, N) = N, Hom(Z/x, Z) = 0
    out = []
    for x in a:
        for y in b:
            if x == 0:
                out.append(y)
            elif y:
                out.append(gcd(x, y))
    return out


def _ext_orders(a, b):
    return [gcd(x, y) for x in a if x for y in b]


@given(orders)
def test_free_resolution(os):
    m = mod(*os)
    res = free_resolution(m)
    assert cohomology(res.complex, 0) == m
    assert cohomology(res.complex, -1).is_zero()
    assert res.complex.lo >= -1


@given(orders, orders)
def test_tor_by_summands(a, b):
    m, n = mod(*a), mod(*b)
    assert tor(m, n, 0) == mod(*_tensor_orders(a, b))
    assert tor(m, n, 1) == mod(*_tor_orders(a, b))
    assert tor(m, n, 2).is_zero()


@given(orders, orders)
def test_ext_by_summands(a, b):
    m, n = mod(*a), mod(*b)
    assert ext(m, n, 0) == mod(*_hom_orders(a, b))
    assert ext(m, n, 1) == mod(*_ext_orders(a, b))
    assert ext(m, n, 2).is_zero()


@given(orders, orders)
def test_one_sided_resolution_agrees(a, b):
    m, n = mod(*a), mod(*b)
    assert derived_tensor_cohomology(m, n, "one") == derived_tensor_cohomology(m, n, "both")


def test_examples():
    assert str(tor(mod(4), mod(6), 1)) == "Z/2"
    assert str(ext(mod(4), mod(0), 1)) == "Z/4"
    assert ext(mod(0), mod(4), 1).is_zero()
    c = derived_tensor(mod(2), mod(2))
    assert str(cohomology(c, -1)) == "Z/2"
    assert str(cohomology(c, 0)) == "Z/2"


def test_tor_is_symmetric():
    for a in range(1, 9):
        for b in range(1, 9):
            assert tor(mod(a), mod(b), 1) == tor(mod(b), mod(a), 1)


def test_over_a_field_higher_tor_vanishes():
    q = FgModule.free(QQ, 2)
    assert tor(q, q, 1).is_zero()
    assert tor(q, q, 0) == FgModule.free(QQ, 4)
    assert ext(q, q, 1).is_zero()


def test_index_checks():
    with pytest.raises(ValueError):
        tor(mod(2), mod(2), -1)
    with pytest.raises(ValueError):
        ext(mod(2), mod(2), -1)


def test_hom_derived_refuses_torsion_over_z():
    x = ChainComplex.two_term(ExactMatrix.from_rows(ZZ, [[2]]), -1)
    with pytest.raises(UnsupportedOverZ):
        hom_derived(x, x, 0)


def test_hom_derived_free_source():
    z = ChainComplex.concentrated(ZZ, 0)
    x = ChainComplex.two_term(ExactMatrix.from_rows(ZZ, [[2]]), -1)
    assert str(hom_derived(z, x, 0)) == "Z/2"
    assert hom_derived(z, x, 1).is_zero()
    q = ChainComplex.two_term(ExactMatrix.from_rows(QQ, [[1, 0]]), 0)
    assert str(hom_derived(q, ChainComplex.concentrated(QQ, 0), 0)) == "Q"
