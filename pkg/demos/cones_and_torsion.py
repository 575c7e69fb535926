"""Multiplication by k on Z, its cone, and the long exact sequence.

Run: python demos/cones_and_torsion.py
"""

from chainlab.complex import ChainComplex, ChainMap, cohomology_table
from chainlab.cone import cofiber_les, cone, iterated_cofiber
from chainlab.matrix import ExactMatrix
from chainlab.rings import GF, QQ, ZZ


def times(k, ring):
    z = ChainComplex.concentrated(ring, 0)
    return ChainMap(z, z, {0: ExactMatrix.from_rows(ring, [[k]])})


print("cone of k: Z -> Z")
for k in (1, 2, 6, 12):
    table = cohomology_table(cone(times(k, ZZ)).complex)
    print(f"  k={k:>2}:", ", ".join(f"H^{n} = {h}" for n, h in table.items()) or "acyclic")

# Over Q the map is invertible; over F2 and F3 it is zero.
for ring in (QQ, GF(2), GF(3)):
    table = cohomology_table(cone(times(6, ring)).complex)
    print(f"  k=6 over {ring.tag}:", ", ".join(f"H^{n} = {h}" for n, h in table.items())
          or "acyclic")

print()
les = cofiber_les(times(4, ZZ))
print("cofiber sequence of 4 on Z exact:", les.is_exact)
for (n, label), m in zip(les.labels, les.maps):
    if not (m.source.is_zero() and m.target.is_zero()):
        print(f"  {label} in degree {n}: {m.source} -> {m.target}")

print()
print("rotating the triangle of 3 on Z:")
for i, step in enumerate(iterated_cofiber(times(3, ZZ), 4)):
    objs = step.triangle.objects
    print(f"  step {i}: objects have cohomology",
          [dict((n, str(h)) for n, h in cohomology_table(c).items()) for c in objs],
          "certified" if step.certified else "not certified")
