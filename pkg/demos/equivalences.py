"""Quasi-isomorphisms, homotopy inverses and Hom in the homotopy category.

Run: python demos/equivalences.py
"""

import random

from chainlab.axioms import random_quasi_iso
from chainlab.complex import ChainComplex, ChainMap, is_quasi_iso, shift
from chainlab.cone import Triangle, cone, cone_triangle
from chainlab.homotopy import exactness_verdict, find_homotopy_inverse, hom_in_K
from chainlab.matrix import ExactMatrix
from chainlab.rings import GF, QQ, ZZ

M = lambda rows, ring=ZZ: ExactMatrix.from_rows(ring, rows)

# Over a field every quasi-isomorphism has a homotopy inverse; the solver finds it.
for ring in (QQ, GF(2)):
    found = 0
    for seed in range(20):
        f = random_quasi_iso(random.Random(seed), ring)
        inv = find_homotopy_inverse(f)
        found += inv is not None and inv.left.check() and inv.right.check()
    print(f"{ring.tag}: homotopy inverses found for {found}/20 quasi-isomorphisms")

# Over Z, between free complexes, the same holds: [Z -3-> Z] into a sum with
# a contractible piece is a quasi-isomorphism and an equivalence.
x = ChainComplex.two_term(M([[3]]), -1)
y = ChainComplex(ZZ, {-1: 2, 0: 2}, {-1: M([[3, 0], [0, 1]])})
f = ChainMap(x, y, {-1: M([[1], [0]]), 0: M([[1], [0]])})
print("Z: quasi-isomorphism", is_quasi_iso(f), "| homotopy inverse",
      find_homotopy_inverse(f) is not None)
print()

z = ChainComplex.concentrated(ZZ, 0)
print("Hom_K(Z, Z)           =", hom_in_K(z, z))
print("Hom_K(Z, [Z-2->Z])    =", hom_in_K(z, ChainComplex.two_term(M([[2]]), -1)))
print("Hom_K([Z-2->Z], Z[1]) =", hom_in_K(ChainComplex.two_term(M([[2]]), -1), shift(z, 1)))
print()

# Three-valued exactness: dropping the connecting map of 2 on Z leaves the
# cohomology sequence exact, so over Z the answer is "unknown".
two = ChainMap(z, z, {0: M([[2]])})
c = cone(two)
print("cone triangle of 2:       ", exactness_verdict(cone_triangle(two)).status)
print("same with h replaced by 0:",
      exactness_verdict(Triangle(two, c.inject, c.project.scale(0))).status)
zero = ChainMap(z, z, {0: M([[0]])})
c0 = cone(zero)
print("zero map with h = 0:      ",
      exactness_verdict(Triangle(zero, c0.inject, c0.project.scale(0))).status)
