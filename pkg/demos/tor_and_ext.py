"""Tor and Ext of cyclic groups from free resolutions.

Run: python demos/tor_and_ext.py
"""

from chainlab.complex import cohomology_table
from chainlab.derived import derived_tensor, derived_tensor_cohomology, ext, free_resolution, tor
from chainlab.exactla import FgModule
from chainlab.rings import ZZ


def cyc(n):
    return FgModule.from_orders(ZZ, [n])


res = free_resolution(FgModule.from_orders(ZZ, [4, 0]))
print("free resolution of Z/4 + Z:")
for n in res.complex.degrees:
    print(f"  P^{n} = Z^{res.complex.rank(n)}")
print("  d^-1 =", res.complex.diff(-1).render())
print()

N = 8
print("Tor_1(Z/m, Z/n), printed as its order:")
print("     " + "".join(f"{n:>4}" for n in range(1, N + 1)))
for m in range(1, N + 1):
    row = [tor(cyc(m), cyc(n), 1).order() for n in range(1, N + 1)]
    print(f"  {m:>2} " + "".join(f"{x:>4}" for x in row))
print()

# Ext^1(Z/m, Z) is Z/m while Ext^1(Z, Z/m) vanishes.
for m in (2, 3, 4):
    print(f"Ext^1(Z/{m}, Z) = {ext(cyc(m), FgModule.free(ZZ, 1), 1)},",
          f"Ext^1(Z, Z/{m}) = {ext(FgModule.free(ZZ, 1), cyc(m), 1)}")
print()

c = derived_tensor(cyc(4), cyc(6))
print("Z/4 (x)^L Z/6 with both sides resolved:",
      {n: str(h) for n, h in cohomology_table(c).items()})
print("with one side resolved:              ",
      {n: str(h) for n, h in derived_tensor_cohomology(cyc(4), cyc(6), "one").items()})
