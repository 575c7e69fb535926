"""Truncations, the standard t-structure and its torsion tilt.

Truncations are realized on free bases. Over a principal ring the kernel
and image of a map of free modules are free, and ``ker d^n`` is a direct
summand of ``X^n``, so both truncations stay free and the inclusion
``τ≤n X -> X`` is degreewise split.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .complex import ChainComplex, ChainMap, cohomology, is_quasi_iso
from .cone import SesComparison, Triangle, cone, ses_compare
from .exactla import FgModule, ModuleMap, snf
from .homotopy import Certificate, certify_exact, hom_in_K
from .matrix import ExactMatrix

__all__ = [
    "Truncation", "truncate", "TruncationTriangle", "truncation_triangle",
    "TStructureVerdict", "standard_t_verdict", "tilted_t_verdict", "heart_H0",
    "TorsionPair", "TORSION_PAIR", "TorsionDecomposition", "torsion_decompose",
    "t1_orthogonal",
]


class Truncation(NamedTuple):
    """``complex`` with its comparison map (inclusion for ``below``, projection for ``above``)."""

    complex: ChainComplex
    map: ChainMap


class _Cut(NamedTuple):
    K: ExactMatrix      # kernel basis of d^n
    L: ExactMatrix      # left inverse of K
    S: ExactMatrix      # complement of K
    P: ExactMatrix      # coordinates of d^n x in B
    B: ExactMatrix      # basis of im d^n


def _cut(c: ChainComplex, n: int) -> _Cut:
    hit = c._cache.get(("cut", n))
    if hit is not None:
        return hit
    ring = c.ring
    d = c.diff(n)
    rn = c.rank(n)
    res = snf(d, want_uinv=True, want_vinv=True)
    r = res.rank
    K = res.v.submatrix(cols=range(r, rn))
    L = res.vinv.submatrix(rows=range(r, rn))
    S = res.v.submatrix(cols=range(r))
    P = res.vinv.submatrix(rows=range(r))
    B = res.uinv.submatrix(cols=range(r)) @ ExactMatrix.diagonal(ring, res.diag[:r], r, r)
    out = _Cut(K, L, S, P, B)
    c._cache[("cut", n)] = out
    return out


def truncate(c: ChainComplex, n: int, side: str) -> Truncation:
    """``side="below"`` gives ``τ≤n c``; ``side="above"`` gives ``τ≥n+1 c``.

    Below, degree ``n`` becomes ``ker d^n``. Above, degree ``n`` becomes
    ``X^n / ker d^n ≅ im d^n`` and everything below it is dropped.
    """
    ring = c.ring
    cut = _cut(c, n)
    if side == "below":
        ranks = {k: r for k, r in c.ranks.items() if k < n}
        ranks[n] = cut.K.cols
        diffs = {k: c.diff(k) for k in range(c.lo, n - 1)}
        diffs[n - 1] = cut.L @ c.diff(n - 1)
        T = ChainComplex(ring, ranks, diffs)
        comp = {k: ExactMatrix.identity(ring, c.rank(k)) for k in ranks if k < n}
        comp[n] = cut.K
        return Truncation(T, ChainMap(T, c, comp))
    if side == "above":
        ranks = {k: r for k, r in c.ranks.items() if k > n}
        ranks[n] = cut.B.cols
        diffs = {k: c.diff(k) for k in range(n + 1, c.hi)}
        diffs[n] = cut.B
        T = ChainComplex(ring, ranks, diffs)
        comp = {k: ExactMatrix.identity(ring, c.rank(k)) for k in ranks if k > n}
        comp[n] = cut.P
        return Truncation(T, ChainMap(c, T, comp))
    raise ValueError(f"side must be 'below' or 'above', not {side!r}")


class TruncationTriangle(NamedTuple):
    """``τ≤n X -> X -> τ≥n+1 X -> (τ≤n X)[1]`` with exactness evidence.

    ``comparison`` identifies ``τ≥n+1 X`` with ``cone(inclusion)``;
    ``cone_of_phi_acyclic`` records that the identification is a
    quasi-isomorphism.
    """

    triangle: Triangle
    below: Truncation
    above: Truncation
    comparison: SesComparison
    certificate: Certificate | None
    cone_of_phi_acyclic: bool

    @property
    def exact(self) -> bool:
        return self.certificate is not None and self.cone_of_phi_acyclic


def truncation_triangle(c: ChainComplex, n: int) -> TruncationTriangle:
    ring = c.ring
    lo = truncate(c, n, "below")
    hi = truncate(c, n, "above")
    cut = _cut(c, n)
    inc = lo.map
    retr, sect = {}, {}
    for k in c.degrees:
        if k < n:
            retr[k] = ExactMatrix.identity(ring, c.rank(k))
            sect[k] = ExactMatrix(ring, c.rank(k), 0)
        elif k == n:
            retr[k] = cut.L
            sect[k] = cut.S
        else:
            retr[k] = ExactMatrix(ring, 0, c.rank(k))
            sect[k] = ExactMatrix.identity(ring, c.rank(k))
    cmp = ses_compare(inc, retr, sect)
    if cmp.quotient != hi.complex or cmp.quotient_map != hi.map:
        raise AssertionError("quotient does not match the upper truncation")
    _, _, proj = cone(inc)
    t = Triangle(inc, hi.map, proj @ cmp.psi)
    acyclic = is_quasi_iso(cmp.phi)
    return TruncationTriangle(t, lo, hi, cmp, certify_exact(t, cmp.phi), acyclic)


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TStructureVerdict:
    """Membership of one complex in the aisles ``T≤n`` and ``T≥n``.

    ``le`` and ``ge`` map each examined ``n`` to a boolean; ``n`` is the
    queried degree and ``heart`` means membership in both aisles at 0.
    """

    n: int
    le: dict = field(compare=False)
    ge: dict = field(compare=False)
    heart: bool

    @property
    def in_le_n(self) -> bool:
        return self.le[self.n]

    @property
    def in_ge_n(self) -> bool:
        return self.ge[self.n]

    def is_monotone(self) -> bool:
        for k in self.le:
            if self.le[k] and k + 1 in self.le and not self.le[k + 1]:
                return False
            if self.ge[k] and k - 1 in self.ge and not self.ge[k - 1]:
                return False
        return True


def _window(c: ChainComplex, n: int) -> range:
    if c.is_zero():
        return range(min(n, 0) - 1, max(n, 0) + 2)
    return range(min(c.lo, n, 0) - 2, max(c.hi, n, 0) + 3)


def _table(c: ChainComplex, degs) -> dict:
    return {i: cohomology(c, i) for i in range(degs.start - 1, degs.stop + 1)}


def standard_t_verdict(c: ChainComplex, n: int = 0) -> TStructureVerdict:
    """``T≤n``: ``H^i = 0`` for ``i > n``; ``T≥n``: ``H^i = 0`` for ``i < n``."""
    degs = _window(c, n)
    H = _table(c, degs)
    nz = [i for i, h in H.items() if not h.is_zero()]
    le = {k: all(i <= k for i in nz) for k in degs}
    ge = {k: all(i >= k for i in nz) for k in degs}
    return TStructureVerdict(n, le, ge, le[0] and ge[0])


def tilted_t_verdict(c: ChainComplex, n: int = 0) -> TStructureVerdict:
    """The t-structure tilted by the torsion pair (torsion, torsion-free).

    ``le[k]``: ``H^i = 0`` for ``i > k`` and ``H^k`` torsion.
    ``ge[k]``: ``H^i = 0`` for ``i < k - 1`` and ``H^{k-1}`` torsion-free.
    """
    if c.ring.is_field:
        raise ValueError("the torsion tilt is defined over Z only")
    degs = _window(c, n)
    H = _table(c, degs)
    nz = [i for i, h in H.items() if not h.is_zero()]
    le = {k: all(i <= k for i in nz) and H[k].is_torsion() for k in degs}
    ge = {k: all(i >= k - 1 for i in nz) and H[k - 1].is_torsion_free() for k in degs}
    heart = le[0] and ge[0]
    if heart and c.rank(-1) and c.lo >= -1 and c.hi <= 0:
        # a two-term free complex: ker d is a submodule of a free module
        assert cohomology(c, -1).is_torsion_free()
    return TStructureVerdict(n, le, ge, heart)


def heart_H0(c: ChainComplex) -> FgModule:
    """``H^0`` read off from ``τ≥0 τ≤0 c``."""
    b = truncate(c, 0, "below").complex
    a = truncate(b, -1, "above").complex
    if not (a.is_zero() or (a.lo >= -1 and a.hi <= 0)):
        raise AssertionError("double truncation is not concentrated in [-1, 0]")
    return cohomology(a, 0)


def t1_orthogonal(x: ChainComplex, y: ChainComplex):
    """Check ``Hom(x, y) = 0`` in K; returns ``(holds, decisive)``.

    Over a field K computes D for these representatives. Over Z the check
    still runs in K but is labeled non-decisive.
    """
    return hom_in_K(x, y).is_zero(), x.ring.is_field


# ---------------------------------------------------------------------------
# Torsion theory
# ---------------------------------------------------------------------------

class TorsionDecomposition(NamedTuple):
    torsion: FgModule
    free: FgModule
    inclusion: ModuleMap
    projection: ModuleMap
    note: str = ""


def torsion_decompose(m: FgModule) -> TorsionDecomposition:
    """``0 -> T -> m -> F -> 0`` with ``T`` torsion and ``F`` torsion-free."""
    ring = m.ring
    t = FgModule(ring, 0, m.invariant_factors)
    f = FgModule(ring, m.free_rank, ())
    k = m.torsion_count
    inc = ExactMatrix.identity(ring, m.ngens).submatrix(cols=range(k))
    pro = ExactMatrix.identity(ring, m.ngens).submatrix(rows=range(k, m.ngens))
    note = "over a field every module is torsion-free" if ring.is_field else ""
    return TorsionDecomposition(t, f, ModuleMap(t, m, inc), ModuleMap(m, f, pro), note)


class TorsionPair:
    """The pair (torsion groups, torsion-free groups) on f.g. abelian groups."""

    @staticmethod
    def in_T(m: FgModule) -> bool:
        return m.is_torsion()

    @staticmethod
    def in_F(m: FgModule) -> bool:
        return m.is_torsion_free()

    @staticmethod
    def decompose(m: FgModule) -> TorsionDecomposition:
        return torsion_decompose(m)

    @staticmethod
    def orthogonal(f: ModuleMap) -> bool:
        """A map from a torsion module to a torsion-free one must vanish."""
        if not (f.source.is_torsion() and f.target.is_torsion_free()):
            raise ValueError("expected a map from T to F")
        return f.is_zero()


TORSION_PAIR = TorsionPair()
