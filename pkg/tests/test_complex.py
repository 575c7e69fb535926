import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from chainlab.axioms import Profile
from chainlab.complex import (ChainComplex, ChainMap, Homotopy, ShapeError, biproduct,
                              cohomology, cohomology_table, euler_characteristic,
                              induced_map, is_quasi_iso, shift, tensor, tensor_swap,
                              validate)
from chainlab.exactla import FgModule
from chainlab.matrix import ExactMatrix
from chainlab.rings import GF, QQ, ZZ

from conftest import generated, rings, seeds


def M(rows, ring=ZZ):
    return ExactMatrix.from_rows(ring, rows)


def times(k, ring=ZZ, degree=-1):
    return ChainComplex.two_term(M([[k]], ring), degree)


def test_two_term_cohomology():
    c = times(2)
    assert str(cohomology(c, 0)) == "Z/2"
    assert cohomology(c, -1).is_zero()
    assert str(cohomology(times(2, GF(2)), -1)) == "F2"
    assert cohomology(times(2, QQ), 0).is_zero()


def test_validate_names_degree():
    c = ChainComplex(ZZ, {0: 1, 1: 1, 2: 1}, {0: M([[1]]), 1: M([[1]])})
    rep = validate(c)
    assert not rep.ok
    assert rep.degree == 0
    assert validate(times(3)).ok


def test_shape_errors():
    with pytest.raises(ShapeError):
        ChainComplex(ZZ, {0: 1, 1: 2}, {0: M([[1]])})
    with pytest.raises(ShapeError):
        ChainMap(times(2), times(2), {0: M([[1, 0]])})


def test_zero_complex():
    z = ChainComplex.zero(ZZ)
    assert z.is_zero()
    assert cohomology_table(z) == {}
    assert euler_characteristic(z) == 0


def test_shift_signs_and_degrees():
    c = times(2)
    s = shift(c, 1)
    assert s.rank(-2) == 1 and s.rank(-1) == 1
    assert s.diff(-2) == M([[-2]])
    assert shift(c, 2).diff(-3) == M([[2]])


@given(seeds, st.integers(-3, 3), rings)
def test_shift_moves_cohomology(seed, k, ring):
    c = generated(seed, ring).complex
    s = shift(c, k)
    assert validate(s).ok
    for n in range(c.lo - 1, c.hi + 2):
        assert cohomology(s, n - k) == cohomology(c, n)
    assert shift(s, -k) == c


@given(seeds, rings)
def test_generated_cohomology_matches_pieces(seed, ring):
    g = generated(seed, ring)
    assert cohomology_table(g.complex) == g.ground_truth


@given(seeds, seeds)
def test_biproduct_cohomology_adds(sa, sb):
    a, b = generated(sa).complex, generated(sb).complex
    bp = biproduct(a, b)
    for n in bp.complex.degrees:
        assert cohomology(bp.complex, n) == cohomology(a, n).direct_sum(cohomology(b, n))
    assert (bp.proj_a @ bp.inj_a).is_identity()
    assert (bp.proj_b @ bp.inj_a).is_zero()
    total = bp.inj_a @ bp.proj_a + bp.inj_b @ bp.proj_b
    assert total.is_identity()


def _tensor_modules(m, n):
    out = []
    for a in list(m.invariant_factors) + [0] * m.free_rank:
        for b in list(n.invariant_factors) + [0] * n.free_rank:
            out.append(gcd(a, b))
    return out


def _tor_modules(m, n):
    return [gcd(a, b) for a in m.invariant_factors for b in n.invariant_factors]


@settings(max_examples=40)
@given(seeds, seeds)
def test_tensor_kunneth_over_z(sa, sb):
    prof = Profile(lo=-1, width=2, max_rank=2, entry_bound=3, max_torsion=6, steps=6)
    a, b = generated(sa, ZZ, prof).complex, generated(sb, ZZ, prof).complex
    t = tensor(a, b)
    assert validate(t).ok
    Ha = {n: cohomology(a, n) for n in a.degrees}
    Hb = {n: cohomology(b, n) for n in b.degrees}
    for n in range(t.lo - 1, t.hi + 2):
        orders = []
        for p, hp in Ha.items():
            if n - p in Hb:
                orders += _tensor_modules(hp, Hb[n - p])
            if n + 1 - p in Hb:
                orders += _tor_modules(hp, Hb[n + 1 - p])
        assert cohomology(t, n) == FgModule.from_orders(ZZ, orders)


@given(seeds, seeds)
def test_tensor_swap_is_isomorphism(sa, sb):
    prof = Profile(lo=-1, width=2, max_rank=2, entry_bound=3, steps=6)
    a, b = generated(sa, ZZ, prof).complex, generated(sb, ZZ, prof).complex
    sw = tensor_swap(a, b)
    assert sw.commutes()
    assert (tensor_swap(b, a) @ sw).is_identity()


@given(seeds, rings)
def test_euler_characteristic_matches_cohomology(seed, ring):
    c = generated(seed, ring).complex
    chi = sum((-1) ** n * h.free_rank for n, h in cohomology_table(c).items())
    assert euler_characteristic(c) == chi


def test_induced_map_and_quasi_iso():
    x = times(2)
    y = ChainComplex(ZZ, {-1: 2, 0: 2}, {-1: M([[2, 0], [0, 1]])})
    f = ChainMap(x, y, {-1: M([[1], [0]]), 0: M([[1], [0]])})
    assert f.commutes()
    assert induced_map(f, 0).matrix == M([[1]])
    assert is_quasi_iso(f)
    g = ChainMap(x, x, {-1: M([[2]]), 0: M([[2]])})
    assert not is_quasi_iso(g)
    assert is_quasi_iso(ChainMap(x, x, {-1: M([[3]]), 0: M([[3]])}))


def test_chain_map_algebra():
    x = times(2)
    one = ChainMap.identity(x)
    two = one + one
    assert (two - one).is_identity()
    assert (-one + one).is_zero()
    assert (two @ two) == one.scale(4)
    assert two.shift(1)(-2) == M([[2]])


def test_homotopy_check():
    x = times(1)
    one = ChainMap.identity(x)
    zero = ChainMap.zero(x, x)
    h = Homotopy(one, zero, {0: M([[1]])})
    assert h.check()
    assert not Homotopy(one, zero, {0: M([[2]])}).check()


def test_first_failure_reports_degree():
    x = times(2)
    bad = ChainMap(x, x, {-1: M([[1]]), 0: M([[2]])})
    assert bad.first_failure() == -1
    assert not bad.commutes()


def test_determinism_of_generator():
    a = generated(11).complex
    b = generated(11).complex
    assert a == b
    assert random.Random(1).random() == random.Random(1).random()
