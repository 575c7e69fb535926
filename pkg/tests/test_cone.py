import random

import pytest
from hypothesis import given, settings

from chainlab.axioms import random_chain_map, random_split_mono
from chainlab.complex import ChainComplex, ChainMap, cohomology, cohomology_table, validate
from chainlab.cone import (SplittingError, Triangle, cofiber_les, cone, cone_triangle,
                           cylinder, find_retraction, iterated_cofiber, rotate,
                           ses_compare, triangle_les, unrotate)
from chainlab.matrix import ExactMatrix
from chainlab.rings import QQ, ZZ

from conftest import SMALL, generated, rings, seeds


def M(rows, ring=ZZ):
    return ExactMatrix.from_rows(ring, rows)


def mult(k, ring=ZZ):
    z = ChainComplex.concentrated(ring, 0)
    return ChainMap(z, z, {0: M([[k]], ring)})


def random_map(seed, ring=ZZ):
    rng = random.Random(seed)
    X = generated(rng, ring)
    Y = generated(rng, ring)
    return random_chain_map(rng, X, Y)


@pytest.mark.parametrize("k", [1, 2, 6, 12])
def test_cone_of_multiplication(k):
    C = cone(mult(k)).complex
    table = cohomology_table(C)
    if k == 1:
        assert table == {}
    else:
        assert list(table) == [0]
        assert str(table[0]) == f"Z/{k}"


def test_cone_block_shape():
    c = cone(mult(3))
    assert c.complex.rank(-1) == 1 and c.complex.rank(0) == 1
    assert c.complex.diff(-1) == M([[3]])
    assert c.inject(0) == M([[1]])
    assert c.project(-1) == M([[1]])


@given(seeds, rings)
def test_cone_maps_are_chain_maps(seed, ring):
    f = random_map(seed, ring)
    c = cone(f)
    assert validate(c.complex).ok
    assert c.inject.commutes() and c.project.commutes()
    assert (c.project @ c.inject).is_zero()


@given(seeds, rings)
def test_cofiber_les_is_exact(seed, ring):
    les = cofiber_les(random_map(seed, ring))
    assert les.is_exact, les.first_failure()


def test_les_detects_broken_triangle():
    f = mult(0)
    c = cone(f)
    bad = Triangle(f, c.inject, ChainMap.zero(c.complex, c.project.target))
    les = triangle_les(bad)
    assert not les.is_exact
    assert les.first_failure() is not None
    assert triangle_les(cone_triangle(f)).is_exact


@given(seeds, rings)
def test_rotation_round_trip(seed, ring):
    t = cone_triangle(random_map(seed, ring))
    back = unrotate(rotate(t))
    assert back.f == t.f and back.g == t.g and back.h == t.h
    assert triangle_les(rotate(t)).is_exact


@settings(max_examples=30)
@given(seeds, rings)
def test_split_mono_comparison(seed, ring):
    sm = random_split_mono(random.Random(seed), ring, SMALL)
    cmp = ses_compare(sm.f, sm.retraction)
    assert (cmp.phi @ cmp.psi).is_identity()
    assert cmp.homotopy.check()
    assert cmp.quotient_map.commutes()
    assert (cmp.quotient_map @ sm.f).is_zero()


def test_find_retraction():
    f = mult(1)
    r = find_retraction(f)
    assert r is not None
    assert find_retraction(mult(2)) is None
    with pytest.raises(SplittingError):
        ses_compare(mult(2), {0: M([[1]])})


@given(seeds, rings)
def test_cylinder_factorization(seed, ring):
    f = random_map(seed, ring)
    cyl = cylinder(f)
    assert validate(cyl.complex).ok
    assert (cyl.out_Y @ cyl.in_Y).is_identity()
    assert cyl.homotopy.check()
    assert cyl.out_Y @ cyl.in_X == f
    assert find_retraction(cyl.in_X) is not None


def test_cylinder_quotient_is_cone():
    f = mult(4)
    cyl = cylinder(f)
    cmp = ses_compare(cyl.in_X, find_retraction(cyl.in_X))
    assert cohomology_table(cmp.quotient) == cohomology_table(cone(f).complex)


def test_iterated_cofiber_certified():
    steps = iterated_cofiber(mult(3), 4)
    assert len(steps) == 4
    assert all(s.certified for s in steps)
    assert str(cohomology(steps[0].triangle.objects[2], 0)) == "Z/3"


@settings(max_examples=15)
@given(seeds)
def test_iterated_cofiber_random(seed):
    for step in iterated_cofiber(random_map(seed, QQ), 3):
        assert step.certified
