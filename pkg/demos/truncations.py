"""Truncations, the standard heart, and the heart tilted by torsion.

Run: python demos/truncations.py
"""

from chainlab.complex import ChainComplex, cohomology_table
from chainlab.exactla import FgModule
from chainlab.matrix import ExactMatrix
from chainlab.rings import ZZ
from chainlab.tstruct import (heart_H0, standard_t_verdict, tilted_t_verdict,
                              torsion_decompose, truncate, truncation_triangle)


def show(c):
    return {n: str(h) for n, h in cohomology_table(c).items()}


M = lambda rows: ExactMatrix.from_rows(ZZ, rows)
# Z -> Z^2 -> Z in degrees -1, 0, 1 with H^0 = Z/2 + Z and H^1 = Z
c = ChainComplex(ZZ, {-1: 1, 0: 2, 1: 1}, {-1: M([[2], [0]]), 0: M([[0, 0]])})
print("X:", show(c))
for n in (-1, 0):
    lo, hi = truncate(c, n, "below"), truncate(c, n, "above")
    tt = truncation_triangle(c, n)
    print(f"  tau<={n}: {show(lo.complex)}   tau>={n + 1}: {show(hi.complex)}   "
          f"triangle exact: {tt.exact}")
print("  H^0 from two truncations:", heart_H0(c))
print("  in the standard heart:", standard_t_verdict(c).heart)
print()

examples = {
    "[Z -2-> Z] in degrees -1, 0": ChainComplex.two_term(M([[2]]), -1),
    "Z in degree 0": ChainComplex.concentrated(ZZ, 0),
    "Z in degree -1": ChainComplex.concentrated(ZZ, -1),
    "[Z^2 -(3 0)-> Z] in degrees -1, 0": ChainComplex.two_term(M([[3, 0]]), -1),
}
print("tilted heart: torsion-free H^-1 and torsion H^0")
for name, x in examples.items():
    print(f"  {name:<36} {show(x)!s:<24} {tilted_t_verdict(x).heart}")
print()

d = torsion_decompose(FgModule.from_orders(ZZ, [4, 0, 6]))
print(f"Z/4 + Z + Z/6 has torsion part {d.torsion} and torsion-free quotient {d.free}")
