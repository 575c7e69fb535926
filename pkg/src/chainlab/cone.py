"""Mapping cones, cylinders, cofiber sequences and triangles.

Block orders and signs (the single source of truth for the package):

* ``cone(f)^n = X^{n+1} ⊕ Y^n``, ``d(b, c) = (-d b, f b + d c)``.
* ``cyl(f)^n = X^n ⊕ X^{n+1} ⊕ Y^n``,
  ``d(b', b, c) = (d b' - b, -d b, f b + d c)``.
* rotation sends ``(f, g, h)`` to ``(g, h, -f[1])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .complex import (
    ChainComplex, ChainMap, Homotopy, ShapeError, _induced, cohomology_data,
    shift,
)
from .exactla import ModuleMap, invertible_inverse, is_exact_at, kernel_basis
from .matrix import ExactMatrix

__all__ = [
    "Triangle", "LongExactSequence", "Cone", "Cylinder", "SesComparison",
    "SplittingError", "cone", "cone_triangle", "cylinder", "ses_compare",
    "find_retraction", "rotate", "unrotate", "triangle_les", "cofiber_les",
    "iterated_cofiber", "CofiberStep",
]


def _Z(ring, r, c):
    return ExactMatrix(ring, r, c)


def _I(ring, n):
    return ExactMatrix.identity(ring, n)


@dataclass(frozen=True)
class Triangle:
    """A candidate triangle ``X -f-> Y -g-> Z -h-> X[1]``."""

    f: ChainMap
    g: ChainMap
    h: ChainMap

    def __post_init__(self):
        if self.f.target != self.g.source:
            raise ShapeError("target(f) != source(g)")
        if self.g.target != self.h.source:
            raise ShapeError("target(g) != source(h)")
        if self.h.target != shift(self.f.source, 1):
            raise ShapeError("target(h) != source(f)[1]")

    @property
    def objects(self):
        return (self.f.source, self.f.target, self.g.target)


class LongExactSequence(NamedTuple):
    """Composable module maps with an exactness flag at each joint.

    ``labels[i]`` is ``(degree, which)`` for ``maps[i]``; ``exact[i]`` refers
    to the joint between ``maps[i]`` and ``maps[i + 1]``.
    """

    maps: list
    exact: list
    labels: list

    @property
    def is_exact(self) -> bool:
        return all(self.exact)

    def first_failure(self):
        for i, ok in enumerate(self.exact):
            if not ok:
                return self.labels[i], self.labels[i + 1]
        return None


# ---------------------------------------------------------------------------
# Cone and cylinder
# ---------------------------------------------------------------------------

class Cone(NamedTuple):
    complex: ChainComplex
    inject: ChainMap
    project: ChainMap


def _cone_complex(f: ChainMap) -> ChainComplex:
    X, Y = f.source, f.target
    ring = f.ring
    degs = set(n - 1 for n in X.ranks) | set(Y.ranks)
    ranks = {n: X.rank(n + 1) + Y.rank(n) for n in degs}
    diffs = {}
    for n in degs:
        if n + 1 not in degs:
            continue
        diffs[n] = ExactMatrix.block(ring, [
            [-X.diff(n + 1), _Z(ring, X.rank(n + 2), Y.rank(n))],
            [f(n + 1), Y.diff(n)],
        ])
    return ChainComplex(ring, ranks, diffs)


def cone(f: ChainMap) -> Cone:
    """``Cone(f)`` with ``Y -> Cone(f)`` and ``Cone(f) -> X[1]``."""
    X, Y = f.source, f.target
    ring = f.ring
    C = _cone_complex(f)
    inj, proj = {}, {}
    for n in C.degrees:
        a, b = X.rank(n + 1), Y.rank(n)
        inj[n] = _Z(ring, a, b).vstack(_I(ring, b))
        proj[n] = _I(ring, a).hstack(_Z(ring, a, b))
    return Cone(C, ChainMap(Y, C, inj), ChainMap(C, shift(X, 1), proj))


def cone_triangle(f: ChainMap) -> Triangle:
    c = cone(f)
    return Triangle(f, c.inject, c.project)


class Cylinder(NamedTuple):
    """``cyl(f)`` with its structure maps.

    ``homotopy`` witnesses ``id ≃ in_Y ∘ out_Y``; ``out_Y ∘ in_Y = id`` holds
    on the nose. ``to_cone`` is the degreewise projection onto the last two
    blocks, so ``X -in_X-> cyl -to_cone-> cone(f)`` is degreewise split exact.
    """

    complex: ChainComplex
    in_Y: ChainMap
    out_Y: ChainMap
    in_X: ChainMap
    to_cone: ChainMap
    homotopy: Homotopy


def cylinder(f: ChainMap) -> Cylinder:
    X, Y = f.source, f.target
    ring = f.ring
    degs = set(X.ranks) | set(n - 1 for n in X.ranks) | set(Y.ranks)
    ranks = {n: X.rank(n) + X.rank(n + 1) + Y.rank(n) for n in degs}
    diffs = {}
    for n in degs:
        if n + 1 not in degs:
            continue
        x0, x1, x2 = X.rank(n), X.rank(n + 1), X.rank(n + 2)
        y0, y1 = Y.rank(n), Y.rank(n + 1)
        diffs[n] = ExactMatrix.block(ring, [
            [X.diff(n), -_I(ring, x1), _Z(ring, x1, y0)],
            [_Z(ring, x2, x0), -X.diff(n + 1), _Z(ring, x2, y0)],
            [_Z(ring, y1, x0), f(n + 1), Y.diff(n)],
        ])
    cyl = ChainComplex(ring, ranks, diffs)
    C = _cone_complex(f)
    in_y, out_y, in_x, to_c, hom = {}, {}, {}, {}, {}
    for n in cyl.degrees:
        x0, x1, y0 = X.rank(n), X.rank(n + 1), Y.rank(n)
        in_y[n] = _Z(ring, x0 + x1, y0).vstack(_I(ring, y0))
        out_y[n] = ExactMatrix.block(ring, [[f(n), _Z(ring, y0, x1), _I(ring, y0)]])
        in_x[n] = _I(ring, x0).vstack(_Z(ring, x1 + y0, x0))
        to_c[n] = _Z(ring, x1 + y0, x0).hstack(_I(ring, x1 + y0))
        # (b', b, c) -> (0, -b', 0) in degree n-1
        xm = X.rank(n - 1)
        ym = Y.rank(n - 1)
        hom[n] = ExactMatrix.block(ring, [
            [_Z(ring, xm, x0), _Z(ring, xm, x1 + y0)],
            [-_I(ring, x0), _Z(ring, x0, x1 + y0)],
            [_Z(ring, ym, x0), _Z(ring, ym, x1 + y0)],
        ])
    in_Y = ChainMap(Y, cyl, in_y)
    out_Y = ChainMap(cyl, Y, out_y)
    h = Homotopy(ChainMap.identity(cyl), in_Y @ out_Y, hom)
    return Cylinder(cyl, in_Y, out_Y, ChainMap(X, cyl, in_x), ChainMap(cyl, C, to_c), h)


# ---------------------------------------------------------------------------
# Short exact sequences versus cones
# ---------------------------------------------------------------------------

class SplittingError(ValueError):
    def __init__(self, msg, degree=None):
        super().__init__(msg)
        self.degree = degree


class SesComparison(NamedTuple):
    """Comparison between ``cone(f)`` and the quotient ``Y / X``.

    ``quotient_map`` is ``Y -> Y/X``; ``homotopy`` witnesses
    ``id_cone ≃ psi ∘ phi`` while ``phi ∘ psi = id`` exactly.
    """

    quotient: ChainComplex
    phi: ChainMap
    psi: ChainMap
    homotopy: Homotopy
    quotient_map: ChainMap
    section: dict
    retraction: dict


def find_retraction(f: ChainMap) -> dict | None:
    """Degreewise retractions ``r(n)`` with ``r f = id``, or ``None`` if ``f`` is not split."""
    ring = f.ring
    out = {}
    from .exactla import snf
    for n in f.degrees():
        m = f(n)
        if m.cols == 0:
            out[n] = _Z(ring, 0, m.rows)
            continue
        res = snf(m)
        if res.rank != m.cols or any(not ring.is_unit(x) for x in res.diag):
            return None
        # u m v = [D; 0] with D a diagonal of units
        dinv = ExactMatrix.diagonal(ring, [ring.inverse(x) for x in res.diag],
                                    rows=m.cols, cols=m.rows)
        out[n] = res.v @ dinv @ res.u
    return out


def ses_compare(f: ChainMap, retraction: dict, section: dict | None = None) -> SesComparison:
    """Compare ``cone(f)`` with ``Y/X`` for a degreewise split mono ``f``.

    ``retraction[n]`` must satisfy ``r(n) f(n) = id``. When ``section`` is
    given, ``section[n]`` must be a basis of ``ker r(n)`` and fixes the
    quotient's basis; otherwise a kernel basis of ``r(n)`` is computed.
    """
    X, Y = f.source, f.target
    ring = f.ring
    if f.first_failure() is not None:
        raise ValueError("f is not a chain map")
    degs = sorted(set(X.ranks) | set(Y.ranks))
    r, s, p = {}, {}, {}
    for n in degs:
        rx, ry = X.rank(n), Y.rank(n)
        rn = retraction.get(n, _Z(ring, rx, ry))
        if rn.shape != (rx, ry):
            raise SplittingError(f"retraction in degree {n} has shape {rn.shape}", n)
        if rn @ f(n) != _I(ring, rx):
            raise SplittingError(f"retraction∘f != id in degree {n}", n)
        sn = section.get(n) if section is not None else None
        if sn is None:
            sn = kernel_basis(rn)
        if sn.rows != ry or sn.cols != ry - rx:
            raise SplittingError(f"section in degree {n} has shape {sn.shape}", n)
        M = f(n).hstack(sn)
        Minv = invertible_inverse(M)
        if Minv is None:
            raise SplittingError(f"f and section do not span degree {n}", n)
        if Minv.submatrix(rows=range(rx)) != rn:
            raise SplittingError(f"section is not inside ker(retraction) in degree {n}", n)
        r[n], s[n] = rn, sn
        p[n] = Minv.submatrix(rows=range(rx, ry))

    def R(n):
        return r.get(n, _Z(ring, X.rank(n), Y.rank(n)))

    def S(n):
        return s.get(n, _Z(ring, Y.rank(n), 0))

    def P(n):
        return p.get(n, _Z(ring, 0, Y.rank(n)))

    qr = {n: Y.rank(n) - X.rank(n) for n in degs}
    qd = {n: P(n + 1) @ Y.diff(n) @ S(n) for n in degs if n + 1 in qr}
    Q = ChainComplex(ring, qr, qd)
    C = _cone_complex(f)
    phi, psi, hom = {}, {}, {}
    for n in sorted(set(C.degrees) | set(Q.degrees)):
        a, b = X.rank(n + 1), Y.rank(n)
        phi[n] = _Z(ring, Q.rank(n), a).hstack(P(n))
        top = R(n + 1) @ (S(n + 1) @ Q.diff(n) - Y.diff(n) @ S(n))
        psi[n] = top.vstack(S(n))
        hom[n] = ExactMatrix.block(ring, [
            [_Z(ring, X.rank(n), a), R(n)],
            [_Z(ring, Y.rank(n - 1), a), _Z(ring, Y.rank(n - 1), b)],
        ])
    phi_m = ChainMap(C, Q, phi)
    psi_m = ChainMap(Q, C, psi)
    h = Homotopy(ChainMap.identity(C), psi_m @ phi_m, hom)
    return SesComparison(Q, phi_m, psi_m, h, ChainMap(Y, Q, p), s, r)


# ---------------------------------------------------------------------------
# Rotation and long exact sequences
# ---------------------------------------------------------------------------

def rotate(t: Triangle) -> Triangle:
    """``(f, g, h) ↦ (g, h, -f[1])``."""
    return Triangle(t.g, t.h, -t.f.shift(1))


def unrotate(t: Triangle) -> Triangle:
    """Inverse of :func:`rotate`."""
    return Triangle(-t.h.shift(-1), t.f, t.g)


def triangle_les(t: Triangle) -> LongExactSequence:
    """``… → H^n X → H^n Y → H^n Z → H^{n+1} X → …`` over the full support."""
    X, Y, Z = t.objects
    sup = [c for c in (X, Y, Z) if not c.is_zero()]
    if not sup:
        return LongExactSequence([], [], [])
    lo = min(c.lo for c in sup) - 1
    hi = max(c.hi for c in sup) + 1
    maps, labels = [], []
    for n in range(lo, hi + 1):
        hx, hy, hz = (cohomology_data(c, n) for c in (X, Y, Z))
        hx1 = cohomology_data(X, n + 1)
        maps.append(_induced(hx, hy, t.f(n)))
        labels.append((n, "f"))
        maps.append(_induced(hy, hz, t.g(n)))
        labels.append((n, "g"))
        maps.append(_induced(hz, hx1, t.h(n)))
        labels.append((n, "h"))
    exact = [is_exact_at(a, b) for a, b in zip(maps, maps[1:])]
    return LongExactSequence(maps, exact, labels)


def cofiber_les(f: ChainMap) -> LongExactSequence:
    """Long exact cohomology sequence of ``X → Y → Cone(f) → X[1]``.

    The connecting map is induced by the cone projection.
    """
    return triangle_les(cone_triangle(f))


class CofiberStep(NamedTuple):
    """One triangle of the iterated cofiber sequence.

    ``comparison`` maps the cone of the triangle's first arrow to its third
    object; ``certified`` records that it is a quasi-isomorphism making the
    triangle exact.
    """

    triangle: Triangle
    comparison: ChainMap | None
    certified: bool


def iterated_cofiber(f: ChainMap, length: int) -> list:
    """The first ``length`` triangles of ``X → Y → Cone f → X[1] → Y[1] → …``.

    Each step rotates the previous triangle, so after three steps the maps
    are ``-f[1], -g[1], -∂[1]``. Every step is checked against the cone of
    its first map (a cone of a cone after the first step).
    """
    from .homotopy import certify_exact

    if length < 1:
        raise ValueError("length must be positive")
    t = cone_triangle(f)
    out = []
    for _ in range(length):
        cert = certify_exact(t)
        out.append(CofiberStep(t, cert.w if cert else None, cert is not None))
        t = rotate(t)
    return out
