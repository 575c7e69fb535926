"""Free resolutions, derived tensor products, Tor and Ext.

Over a principal ring every finitely generated module has a free
resolution of length at most one, so Tor and Ext vanish above degree 1.
Only projective resolutions are used: finitely generated injective
Z-modules do not exist.
"""

from __future__ import annotations

from typing import NamedTuple, Union

from .complex import ChainComplex, cohomology, shift, tensor
from .exactla import FgModule, _subquotient, kernel_basis, span_basis
from .homotopy import hom_in_K
from .matrix import ExactMatrix

__all__ = [
    "Resolution", "free_resolution", "derived_tensor", "derived_tensor_cohomology",
    "tor", "ext", "hom_derived", "UnsupportedOverZ",
]

Obj = Union[ChainComplex, FgModule]


class UnsupportedOverZ(ValueError):
    """Raised when a derived Hom over Z is refused."""


class Resolution(NamedTuple):
    """``P^-1 -> P^0`` with ``H^0(P) ≅ module``.

    ``augmentation`` sends the basis of ``P^0`` to generators of
    ``module``: ``P^0`` lists free generators first, then one generator
    per invariant factor, while ``module`` lists torsion first.
    """

    complex: ChainComplex
    module: FgModule
    augmentation: ExactMatrix


def free_resolution(m: FgModule) -> Resolution:
    ring = m.ring
    f, t = m.free_rank, m.torsion_count
    d = ExactMatrix(ring, f, t).vstack(
        ExactMatrix.diagonal(ring, list(m.invariant_factors)))
    P = ChainComplex(ring, {-1: t, 0: f + t}, {-1: d})
    aug = [[0] * (f + t) for _ in range(f + t)]
    for i in range(t):
        aug[i][f + i] = 1
    for i in range(f):
        aug[t + i][i] = 1
    return Resolution(P, m, ExactMatrix(ring, f + t, f + t, aug))


def _as_complex(x: Obj) -> ChainComplex:
    return free_resolution(x).complex if isinstance(x, FgModule) else x


def derived_tensor(a: Obj, b: Obj) -> ChainComplex:
    """``a ⊗^L b`` with both module arguments replaced by free resolutions."""
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    return tensor(_as_complex(a), _as_complex(b))


# ---------------------------------------------------------------------------
# Complexes of presented modules
# ---------------------------------------------------------------------------

def _copies(m: FgModule, k: int) -> ExactMatrix:
    """Relation matrix of ``m^k``, generators copy-major."""
    return ExactMatrix.identity(m.ring, k).kron(m.relation_matrix())


def _presented_homology(ring, a_in: ExactMatrix, a_out: ExactMatrix,
                        rel_mid: ExactMatrix, rel_out: ExactMatrix) -> FgModule:
    """``{x : a_out x ∈ rel_out} / (im a_in + rel_mid)``."""
    n = rel_mid.rows
    if n == 0:
        return FgModule.zero(ring)
    big = a_out.hstack(rel_out)
    K = kernel_basis(big).submatrix(rows=range(n))
    return _subquotient(ring, span_basis(K), a_in.hstack(rel_mid))


def _tensor_module_cohomology(c: ChainComplex, m: FgModule) -> dict:
    """Cohomology of ``c ⊗ m`` for a free complex ``c`` and a module ``m``."""
    ring = c.ring
    g = m.ngens
    I = ExactMatrix.identity(ring, g)
    out = {}
    for n in c.degrees:
        a_in = c.diff(n - 1).kron(I)
        a_out = c.diff(n).kron(I)
        h = _presented_homology(ring, a_in, a_out, _copies(m, c.rank(n)),
                                _copies(m, c.rank(n + 1)))
        if not h.is_zero():
            out[n] = h
    return out


def derived_tensor_cohomology(a: Obj, b: Obj, resolve: str = "both") -> dict:
    """Nonzero cohomology of ``a ⊗^L b`` by degree.

    ``resolve="both"`` resolves every module argument. ``resolve="one"``
    resolves only the first module argument and tensors with the other
    as a plain module, which computes the same groups.
    """
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    if resolve == "both":
        c = derived_tensor(a, b)
        return {n: h for n in c.degrees if not (h := cohomology(c, n)).is_zero()}
    if resolve != "one":
        raise ValueError(f"resolve must be 'both' or 'one', not {resolve!r}")
    if isinstance(b, FgModule):
        return _tensor_module_cohomology(_as_complex(a), b)
    if isinstance(a, FgModule):
        # a ⊗ b ≅ b ⊗ a
        return _tensor_module_cohomology(b, a)
    return derived_tensor_cohomology(a, b, "both")


def tor(m: FgModule, n: FgModule, i: int) -> FgModule:
    """``Tor_i(m, n) = H^{-i}(m ⊗^L n)``."""
    if i < 0:
        raise ValueError("Tor is indexed by i >= 0")
    return cohomology(derived_tensor(m, n), -i)


def ext(m: FgModule, n: FgModule, i: int) -> FgModule:
    """``Ext^i(m, n)`` as ``H^i Hom(P, n)`` for the free resolution ``P`` of ``m``.

    ``Hom(P, n)^k = Hom(P^{-k}, n)`` with differential ``(-1)^{k+1} d^*``.
    """
    if m.ring != n.ring:
        raise ValueError("ring mismatch")
    if i < 0:
        raise ValueError("Ext is indexed by i >= 0")
    ring = m.ring
    P = free_resolution(m).complex
    g = n.ngens
    I = ExactMatrix.identity(ring, g)

    def dual(k):
        # Hom^k -> Hom^{k+1}, induced by d^{-k-1}: P^{-k-1} -> P^{-k}
        mat = P.diff(-k - 1).T.kron(I)
        return mat if k % 2 else -mat

    return _presented_homology(ring, dual(i - 1), dual(i),
                               _copies(n, P.rank(-i)), _copies(n, P.rank(-i - 1)))


def hom_derived(b: ChainComplex, c: ChainComplex, i: int) -> FgModule:
    """``Hom_D(b, c[i])`` computed as ``Hom_K(b, c[i])``.

    Over Z this is only offered when every cohomology module of ``b`` is
    free; otherwise :class:`UnsupportedOverZ` is raised.
    """
    if b.ring != c.ring:
        raise ValueError("ring mismatch")
    if not b.ring.is_field:
        for n in b.degrees:
            if not cohomology(b, n).is_torsion_free():
                raise UnsupportedOverZ(
                    f"H^{n} of the source has torsion; refusing Hom_D over Z")
    return hom_in_K(b, shift(c, i))
