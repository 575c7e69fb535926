"""Searches in the homotopy category K(A).

Every search is a single linear system over the coefficient ring, so a
returned witness is always rechecked and soundness never depends on the
solver. Unknown matrices are vectorized row-major.
"""

from __future__ import annotations

from typing import NamedTuple

from .complex import (
    ChainComplex, ChainMap, Homotopy, cohomology, is_quasi_iso, shift,
)
from .cone import Triangle, cone, triangle_les
from .exactla import FgModule, solve_sparse
from .matrix import ExactMatrix

__all__ = [
    "find_null_homotopy", "hom_complex", "hom_in_K", "find_homotopy_inverse",
    "certify_exact", "Certificate", "exactness_verdict", "Verdict",
    "are_homotopic", "HomComplex", "postcompose", "precompose",
]


class _System:
    """Linear equations ``Σ L · X_key · R = rhs`` in unknown matrices."""

    def __init__(self, ring):
        self.ring = ring
        self.blocks = {}
        self.ncols = 0
        self.rows = []
        self.rhs = []

    def unknown(self, key, rows, cols):
        if rows and cols and key not in self.blocks:
            self.blocks[key] = (rows, cols, self.ncols)
            self.ncols += rows * cols

    def equation(self, terms, rhs: ExactMatrix):
        """``terms`` is a list of ``(left, key, right, sign)``; ``None`` sides are identities."""
        R, C = rhs.shape
        if not (R and C):
            return
        acc = [[{} for _ in range(C)] for _ in range(R)]
        for left, key, right, sign in terms:
            blk = self.blocks.get(key)
            if blk is None:
                continue
            br, bc, off = blk
            if left is None:
                lnz = [[(i, 1)] for i in range(R)]
            else:
                lnz = [[(k, a) for k, a in enumerate(left.row(i)) if a] for i in range(R)]
            if right is None:
                rnz = [[(j, 1)] for j in range(C)]
            else:
                rnz = [[(l, b) for l, b in enumerate(right.column(j)) if b] for j in range(C)]
            for i in range(R):
                li = lnz[i]
                if not li:
                    continue
                for j in range(C):
                    rj = rnz[j]
                    if not rj:
                        continue
                    row = acc[i][j]
                    for k, a in li:
                        base = off + k * bc
                        for l, b in rj:
                            col = base + l
                            row[col] = row.get(col, 0) + sign * a * b
        for i in range(R):
            for j in range(C):
                self.rows.append(acc[i][j])
                self.rhs.append(rhs[i, j])

    def solve(self):
        ring = self.ring
        rows = [{k: ring.normalize(v) for k, v in r.items()} for r in self.rows]
        x = solve_sparse(ring, self.ncols, rows, self.rhs)
        if x is None:
            return None
        out = {}
        for key, (br, bc, off) in self.blocks.items():
            vals = x[off:off + br * bc]
            out[key] = ExactMatrix._raw(ring, br, bc, tuple(
                tuple(vals[i * bc:(i + 1) * bc]) for i in range(br)))
        return out

    def value(self, sol, key, rows, cols):
        m = sol.get(key)
        return m if m is not None else ExactMatrix(self.ring, rows, cols)


def _span(*cs: ChainComplex):
    live = [c for c in cs if not c.is_zero()]
    if not live:
        return range(0)
    return range(min(c.lo for c in live) - 1, max(c.hi for c in live) + 2)


def find_null_homotopy(f: ChainMap) -> Homotopy | None:
    """``s`` with ``f = s d + d s``, or ``None`` if no such ``s`` exists over the ring."""
    S, T = f.source, f.target
    sysm = _System(f.ring)
    degs = _span(S, T)
    for n in degs:
        sysm.unknown(("s", n), T.rank(n - 1), S.rank(n))
    for n in degs:
        sysm.equation([
            (None, ("s", n + 1), S.diff(n), 1),
            (T.diff(n - 1), ("s", n), None, 1),
        ], f(n))
    sol = sysm.solve()
    if sol is None:
        return None
    comp = {n: sol[("s", n)] for n in degs if ("s", n) in sol}
    h = Homotopy(f, ChainMap.zero(S, T), comp)
    if not h.check():
        raise AssertionError("null homotopy failed verification")
    return h


def are_homotopic(f: ChainMap, g: ChainMap) -> Homotopy | None:
    """A homotopy from ``f`` to ``g`` or ``None``."""
    h = find_null_homotopy(f - g)
    if h is None:
        return None
    return Homotopy(f, g, {n: h(n) for n in h._comp})


# ---------------------------------------------------------------------------
# Hom complexes
# ---------------------------------------------------------------------------

class HomComplex(NamedTuple):
    """``Hom(b, c)`` with ``Hom^k = ⊕_n Hom(b^n, c^{n+k})``.

    ``layout[k]`` lists ``(n, offset)`` blocks; the differential is
    ``D φ = d φ - (-1)^k φ d``, so ``H^0`` is ``Hom_K(b, c)``.
    """

    complex: ChainComplex
    source: ChainComplex
    target: ChainComplex
    layout: dict

    def vector(self, f: ChainMap, k: int = 0) -> tuple:
        """Coordinates of a degree-``k`` family (a chain map when ``k = 0``)."""
        b, c = self.source, self.target
        vec = [self.complex.ring.zero] * self.complex.rank(k)
        for n, off in self.layout.get(k, []):
            m = f(n)
            w = b.rank(n)
            for i in range(c.rank(n + k)):
                for j in range(w):
                    vec[off + i * w + j] = m[i, j]
        return tuple(vec)

    def element(self, vec, k: int = 0) -> dict:
        """Inverse of :meth:`vector`: matrices ``b^n -> c^{n+k}`` by ``n``."""
        b, c = self.source, self.target
        ring = self.complex.ring
        out = {}
        for n, off in self.layout.get(k, []):
            w, h = b.rank(n), c.rank(n + k)
            out[n] = ExactMatrix._raw(ring, h, w, tuple(
                tuple(vec[off + i * w:off + (i + 1) * w]) for i in range(h)))
        return out

    def chain_map(self, vec) -> ChainMap:
        return ChainMap(self.source, self.target, self.element(vec, 0))


def _hom_layout(b: ChainComplex, c: ChainComplex):
    lay = {}
    if b.is_zero() or c.is_zero():
        return lay
    for k in range(c.lo - b.hi, c.hi - b.lo + 1):
        blocks, off = [], 0
        for n in b.degrees:
            sz = b.rank(n) * c.rank(n + k)
            if sz:
                blocks.append((n, off))
                off += sz
        if off:
            lay[k] = (blocks, off)
    return lay


def hom_complex(b: ChainComplex, c: ChainComplex) -> HomComplex:
    if b.ring != c.ring:
        raise ValueError("ring mismatch")
    ring = b.ring
    lay = _hom_layout(b, c)
    ranks = {k: tot for k, (_, tot) in lay.items()}
    diffs = {}
    for k, (blocks, tot) in lay.items():
        if k + 1 not in lay:
            continue
        tblocks, ttot = lay[k + 1]
        where = dict(tblocks)
        rows = [[ring.zero] * tot for _ in range(ttot)]
        sg = -1 if k % 2 == 0 else 1        # -(-1)^k
        for n, off in blocks:
            # d_c φ_n lands in block n
            if n in where:
                blk = c.diff(n + k).kron(ExactMatrix.identity(ring, b.rank(n)))
                _add(rows, blk, where[n], off, 1, ring)
            # ± φ_n d_b(n-1) lands in block n-1
            if n - 1 in where:
                blk = ExactMatrix.identity(ring, c.rank(n + k)).kron(b.diff(n - 1).T)
                _add(rows, blk, where[n - 1], off, sg, ring)
        diffs[k] = ExactMatrix(ring, ttot, tot, rows)
    H = ChainComplex(ring, ranks, diffs)
    return HomComplex(H, b, c, {k: blocks for k, (blocks, _) in lay.items()})


def _add(rows, blk, r0, c0, sign, ring):
    for i in range(blk.rows):
        row = rows[r0 + i]
        for j, x in enumerate(blk.row(i)):
            if x:
                row[c0 + j] = ring.normalize(row[c0 + j] + sign * x)


def hom_in_K(b: ChainComplex, c: ChainComplex) -> FgModule:
    """``Hom_K(b, c)``: chain maps modulo null-homotopic maps."""
    return cohomology(hom_complex(b, c).complex, 0)


def postcompose(T: ChainComplex, f: ChainMap, k: int = 0):
    """``f ∘ -`` as a chain map ``Hom(T, X) -> Hom(T, Y)`` plus the two hom complexes."""
    HX, HY = hom_complex(T, f.source), hom_complex(T, f.target)
    ring = f.ring
    comp = {}
    for deg in set(HX.layout) | set(HY.layout):
        src_rank, tgt_rank = HX.complex.rank(deg), HY.complex.rank(deg)
        if not (src_rank and tgt_rank):
            continue
        rows = [[ring.zero] * src_rank for _ in range(tgt_rank)]
        where = dict(HY.layout.get(deg, []))
        for n, off in HX.layout.get(deg, []):
            if n in where:
                blk = f(n + deg).kron(ExactMatrix.identity(ring, T.rank(n)))
                _add(rows, blk, where[n], off, 1, ring)
        comp[deg] = ExactMatrix(ring, tgt_rank, src_rank, rows)
    return ChainMap(HX.complex, HY.complex, comp), HX, HY


def precompose(f: ChainMap, T: ChainComplex):
    """``- ∘ f`` as a chain map ``Hom(Y, T) -> Hom(X, T)`` plus the two hom complexes."""
    HY, HX = hom_complex(f.target, T), hom_complex(f.source, T)
    ring = f.ring
    comp = {}
    for deg in set(HX.layout) | set(HY.layout):
        src_rank, tgt_rank = HY.complex.rank(deg), HX.complex.rank(deg)
        if not (src_rank and tgt_rank):
            continue
        rows = [[ring.zero] * src_rank for _ in range(tgt_rank)]
        where = dict(HX.layout.get(deg, []))
        for n, off in HY.layout.get(deg, []):
            if n in where:
                blk = ExactMatrix.identity(ring, T.rank(n + deg)).kron(f(n).T)
                _add(rows, blk, where[n], off, 1, ring)
        comp[deg] = ExactMatrix(ring, tgt_rank, src_rank, rows)
    return ChainMap(HY.complex, HX.complex, comp), HY, HX


# ---------------------------------------------------------------------------
# Homotopy inverses and exact triangles
# ---------------------------------------------------------------------------

class HomotopyInverse(NamedTuple):
    g: ChainMap
    left: Homotopy      # g ∘ f ≃ id
    right: Homotopy     # f ∘ g ≃ id


def find_homotopy_inverse(f: ChainMap) -> HomotopyInverse | None:
    """Solve for ``g, s, t`` with ``g f - 1 = s d + d s`` and ``f g - 1 = t d + d t``.

    Over a field this succeeds exactly when ``f`` is a quasi-isomorphism.
    """
    X, Y = f.source, f.target
    ring = f.ring
    sysm = _System(ring)
    degs = _span(X, Y)
    for n in degs:
        sysm.unknown(("g", n), X.rank(n), Y.rank(n))
        sysm.unknown(("s", n), X.rank(n - 1), X.rank(n))
        sysm.unknown(("t", n), Y.rank(n - 1), Y.rank(n))
    for n in degs:
        sysm.equation([
            (X.diff(n), ("g", n), None, 1),
            (None, ("g", n + 1), Y.diff(n), -1),
        ], ExactMatrix(ring, X.rank(n + 1), Y.rank(n)))
        sysm.equation([
            (None, ("g", n), f(n), 1),
            (None, ("s", n + 1), X.diff(n), -1),
            (X.diff(n - 1), ("s", n), None, -1),
        ], ExactMatrix.identity(ring, X.rank(n)))
        sysm.equation([
            (f(n), ("g", n), None, 1),
            (None, ("t", n + 1), Y.diff(n), -1),
            (Y.diff(n - 1), ("t", n), None, -1),
        ], ExactMatrix.identity(ring, Y.rank(n)))
    sol = sysm.solve()
    if sol is None:
        return None
    g = ChainMap(Y, X, {n: sol[("g", n)] for n in degs if ("g", n) in sol})
    s = Homotopy(g @ f, ChainMap.identity(X),
                 {n: sol[("s", n)] for n in degs if ("s", n) in sol})
    t = Homotopy(f @ g, ChainMap.identity(Y),
                 {n: sol[("t", n)] for n in degs if ("t", n) in sol})
    if not (g.commutes() and s.check() and t.check()):
        raise AssertionError("homotopy inverse failed verification")
    return HomotopyInverse(g, s, t)


class Certificate(NamedTuple):
    """``w: cone(f) -> Z`` with ``w ∘ inject = g`` and ``h ∘ w ≃ project``."""

    w: ChainMap
    homotopy: Homotopy


def certify_exact(t: Triangle, candidate: ChainMap | None = None) -> Certificate | None:
    """Compare ``t`` with the cone triangle of ``t.f``.

    Returns a certificate when some quasi-isomorphism ``w`` fits. Over a
    field ``None`` means ``t`` is not exact; over Z it means "not certified".
    A ``candidate`` for ``w`` is tried first; only the homotopy is then
    solved for.
    """
    f, g, h = t.f, t.g, t.h
    X = f.source
    Z = g.target
    C, inj, proj = cone(f)
    ring = f.ring
    if Z == C and g == inj and h == proj:
        w = ChainMap.identity(C)
        return Certificate(w, Homotopy(h @ w, proj))
    if candidate is not None and candidate.source == C and candidate.target == Z:
        w = candidate
        if w.commutes() and w @ inj == g and is_quasi_iso(w):
            k = are_homotopic(h @ w, proj)
            if k is not None:
                return Certificate(w, k)
    X1 = shift(X, 1)
    sysm = _System(ring)
    degs = _span(C, Z, X1)
    for n in degs:
        sysm.unknown(("w", n), Z.rank(n), C.rank(n))
        sysm.unknown(("k", n), X1.rank(n - 1), C.rank(n))
    for n in degs:
        sysm.equation([
            (Z.diff(n), ("w", n), None, 1),
            (None, ("w", n + 1), C.diff(n), -1),
        ], ExactMatrix(ring, Z.rank(n + 1), C.rank(n)))
        sysm.equation([(None, ("w", n), inj(n), 1)], g(n))
        sysm.equation([
            (h(n), ("w", n), None, 1),
            (None, ("k", n + 1), C.diff(n), -1),
            (X1.diff(n - 1), ("k", n), None, -1),
        ], proj(n))
    sol = sysm.solve()
    if sol is None:
        return None
    w = ChainMap(C, Z, {n: sol[("w", n)] for n in degs if ("w", n) in sol})
    k = Homotopy(h @ w, proj, {n: sol[("k", n)] for n in degs if ("k", n) in sol})
    if not (w.commutes() and w @ inj == g and k.check()):
        raise AssertionError("exactness certificate failed verification")
    if not is_quasi_iso(w):
        return None
    return Certificate(w, k)


class Verdict(NamedTuple):
    """``status`` is ``certified``, ``refuted`` or ``unknown``."""

    status: str
    certificate: Certificate | None = None
    reason: str = ""


def exactness_verdict(t: Triangle) -> Verdict:
    """Three-valued exactness check.

    ``refuted`` over Z means the triangle's cohomology sequence is not
    exact; over a field a failed search already decides the question.
    """
    cert = certify_exact(t)
    if cert is not None:
        return Verdict("certified", cert)
    les = triangle_les(t)
    if not les.is_exact:
        return Verdict("refuted", None, f"cohomology sequence not exact at {les.first_failure()}")
    if t.f.ring.is_field:
        return Verdict("refuted", None, "no comparison with the cone triangle exists")
    return Verdict("unknown", None, "cohomology sequence exact but no certificate found")
