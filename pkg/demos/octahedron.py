"""The octahedral axiom for a composable pair, and what breaks when a sign is wrong.

Run: python demos/octahedron.py
"""

import random

from chainlab import axioms
from chainlab.axioms import AXIOM_PROFILE, check_tr4, random_chain_map, random_complex
from chainlab.complex import ChainComplex, ChainMap, cohomology_table
from chainlab.matrix import ExactMatrix
from chainlab.rings import GF, ZZ


def table(c):
    return ", ".join(f"H^{n} = {h}" for n, h in cohomology_table(c).items()) or "acyclic"


z = ChainComplex.concentrated(ZZ, 0)
f = ChainMap(z, z, {0: ExactMatrix.from_rows(ZZ, [[2]])})
g = ChainMap(z, z, {0: ExactMatrix.from_rows(ZZ, [[3]])})
rep = check_tr4(f, g)
oc = rep.data["octahedron"]
print("X -2-> Y -3-> Z with X = Y = Z = Z")
print("  cone f  :", table(oc.U))
print("  cone gf :", table(oc.V))
print("  cone g  :", table(oc.W))
for name, ok in rep.details.items():
    print(f"  {name}: {'ok' if ok else 'FAILED'}")
print()

# Random instances over F5.
rng = random.Random(3)
passed = 0
for _ in range(20):
    X, Y, Zc = (random_complex(rng, GF(5), AXIOM_PROFILE) for _ in range(3))
    passed += check_tr4(random_chain_map(rng, X, Y), random_chain_map(rng, Y, Zc)).ok
print(f"random octahedra over F5: {passed}/20 pass")

# Flip the sign of W -> U[1]. The last braid relation notices.
real = axioms.octahedron
axioms.octahedron = lambda f, g: real(f, g)._replace(c=-real(f, g).c)
try:
    zero = ChainMap(ChainComplex.concentrated(GF(5), 0), ChainComplex.concentrated(GF(5), 0),
                    {0: ExactMatrix.from_rows(GF(5), [[0]])})
    bad = check_tr4(zero, zero)
    print("with W -> U[1] negated, failing checks:", bad.failures())
finally:
    axioms.octahedron = real
