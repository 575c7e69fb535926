"""Bounded cochain complexes of finitely generated free modules.

Indexing is cohomological: ``diff(n)`` maps degree ``n`` to degree
``n + 1``. Conventions fixed here and used everywhere else:

* shift by ``k``: ``c[k]^n = c^{n+k}`` with differential ``(-1)^k d``;
  on maps ``f[k]^n = f^{n+k}`` with no sign.
* tensor product: the ``(i, j)`` block differential is
  ``d_a ⊗ 1 + (-1)^i 1 ⊗ d_b``; blocks of degree ``n`` are ordered by
  increasing ``i`` and bases inside a block follow ``kron`` order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .exactla import FgModule, ModuleMap, module_map_analysis, snf
from .matrix import ExactMatrix
from .rings import CoefficientRing

__all__ = [
    "ChainComplex", "ChainMap", "Homotopy", "ShapeError", "ValidationReport",
    "validate", "cohomology", "cohomology_data", "shift", "biproduct",
    "Biproduct", "tensor", "tensor_swap", "induced_map", "is_quasi_iso",
    "euler_characteristic", "cohomology_table",
]


class ShapeError(ValueError):
    """A matrix does not have the shape its degrees require."""

    def __init__(self, msg, degree=None):
        super().__init__(msg)
        self.degree = degree


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class ChainComplex:
    """A finitely supported cochain complex of free modules over ``ring``.

    ``ranks`` maps degrees to ranks and ``diffs`` maps ``n`` to the matrix of
    ``d^n``, of shape ``rank(n+1) x rank(n)``. Missing differentials are
    zero. Both accessors are total, so callers never branch on the support.
    """

    __slots__ = ("ring", "_ranks", "_diffs", "lo", "hi", "name", "_cache")

    def __init__(self, ring: CoefficientRing, ranks: Mapping[int, int] | None = None,
                 diffs: Mapping[int, ExactMatrix] | None = None, name: str | None = None):
        self.ring = ring
        self.name = name
        self._cache = {}
        rk = {int(n): int(r) for n, r in (ranks or {}).items() if r}
        if any(r < 0 for r in rk.values()):
            raise ShapeError("negative rank")
        self._ranks = rk
        if rk:
            self.lo, self.hi = min(rk), max(rk)
        else:
            self.lo, self.hi = 0, -1
        dd = {}
        for n, m in (diffs or {}).items():
            n = int(n)
            if m.ring != ring:
                raise ShapeError(f"differential in degree {n} has ring {m.ring}", n)
            want = (rk.get(n + 1, 0), rk.get(n, 0))
            if m.shape != want:
                raise ShapeError(f"d^{n} has shape {m.shape}, expected {want}", n)
            if want[0] and want[1]:
                dd[n] = m
        self._diffs = dd

    # constructors ------------------------------------------------------
    @classmethod
    def zero(cls, ring) -> "ChainComplex":
        return cls(ring)

    @classmethod
    def concentrated(cls, ring, degree: int = 0, rank: int = 1) -> "ChainComplex":
        """``R^rank`` sitting in a single degree (a sphere when rank is 1)."""
        return cls(ring, {degree: rank})

    @classmethod
    def two_term(cls, matrix: ExactMatrix, degree: int = 0) -> "ChainComplex":
        """``R^cols --matrix--> R^rows`` in degrees ``degree, degree+1``."""
        return cls(matrix.ring, {degree: matrix.cols, degree + 1: matrix.rows},
                   {degree: matrix})

    # accessors ---------------------------------------------------------
    def rank(self, n: int) -> int:
        return self._ranks.get(n, 0)

    def diff(self, n: int) -> ExactMatrix:
        m = self._diffs.get(n)
        if m is None:
            return ExactMatrix(self.ring, self.rank(n + 1), self.rank(n))
        return m

    @property
    def ranks(self) -> dict:
        return dict(self._ranks)

    @property
    def support(self):
        return None if not self._ranks else (self.lo, self.hi)

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return not self._ranks

    def total_rank(self) -> int:
        return sum(self._ranks.values())

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (self.ring == other.ring and self._ranks == other._ranks
                and all(self.diff(n) == other.diff(n)
                        for n in set(self._diffs) | set(other._diffs)))

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self._ranks.items()))))

    def __repr__(self):
        if self.is_zero():
            return f"ChainComplex({self.ring.tag}, 0)"
        parts = []
        for n in self.degrees:
            parts.append(f"{n}:{self.rank(n)}")
        return f"ChainComplex({self.ring.tag}, ranks {{{', '.join(parts)}}})"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    degree: int | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def validate(c: ChainComplex) -> ValidationReport:
    """Check ``d^{n+1} d^n = 0``; names the first offending degree."""
    for n in range(c.lo, c.hi - 1):
        if not (c.diff(n + 1) @ c.diff(n)).is_zero():
            return ValidationReport(False, n, f"d^{n + 1} d^{n} != 0")
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# Chain maps and homotopies
# ---------------------------------------------------------------------------

class ChainMap:
    """A degreewise map ``source -> target``; ``f(n)`` is ``target.rank(n) x source.rank(n)``."""

    __slots__ = ("source", "target", "_comp")

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components: Mapping[int, ExactMatrix] | None = None):
        if source.ring != target.ring:
            raise ShapeError("chain map between complexes over different rings")
        self.source = source
        self.target = target
        comp = {}
        for n, m in (components or {}).items():
            want = (target.rank(n), source.rank(n))
            if m.shape != want:
                raise ShapeError(f"component {n} has shape {m.shape}, expected {want}", n)
            if want[0] and want[1]:
                comp[int(n)] = m
        self._comp = comp

    def __call__(self, n: int) -> ExactMatrix:
        m = self._comp.get(n)
        if m is None:
            return ExactMatrix(self.source.ring, self.target.rank(n), self.source.rank(n))
        return m

    component = __call__

    @property
    def ring(self):
        return self.source.ring

    def degrees(self) -> range:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        if self.source.is_zero():
            lo, hi = self.target.lo, self.target.hi
        elif self.target.is_zero():
            lo, hi = self.source.lo, self.source.hi
        return range(lo, hi + 1)

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, {n: ExactMatrix.identity(c.ring, c.rank(n)) for n in c.degrees})

    @classmethod
    def zero(cls, source, target) -> "ChainMap":
        return cls(source, target)

    def commutes(self) -> bool:
        return self.first_failure() is None

    def first_failure(self):
        """First degree where ``d_t f^n != f^{n+1} d_s``, else ``None``."""
        s, t = self.source, self.target
        for n in range(min(s.lo, t.lo) - 1, max(s.hi, t.hi) + 1):
            if t.diff(n) @ self(n) != self(n + 1) @ s.diff(n):
                return n
        return None

    def _same(self, other):
        if self.source != other.source or self.target != other.target:
            raise ShapeError("maps have different sources or targets")

    def __add__(self, other):
        self._same(other)
        return ChainMap(self.source, self.target,
                        {n: self(n) + other(n) for n in set(self._comp) | set(other._comp)})

    def __sub__(self, other):
        self._same(other)
        return ChainMap(self.source, self.target,
                        {n: self(n) - other(n) for n in set(self._comp) | set(other._comp)})

    def __neg__(self):
        return ChainMap(self.source, self.target, {n: -m for n, m in self._comp.items()})

    def scale(self, c):
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self._comp.items()})

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition ``self ∘ other``."""
        if other.target != self.source:
            raise ShapeError("chain maps are not composable")
        comp = {n: self(n) @ other(n) for n in set(self._comp) & set(other._comp)}
        return ChainMap(other.source, self.target, comp)

    compose = __matmul__

    def shift(self, k: int) -> "ChainMap":
        return ChainMap(shift(self.source, k), shift(self.target, k),
                        {n - k: m for n, m in self._comp.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self._comp.values())

    def is_identity(self) -> bool:
        return self.source == self.target and self == ChainMap.identity(self.source)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return all(self(n) == other(n) for n in set(self._comp) | set(other._comp))

    def __hash__(self):
        return hash((self.source, self.target))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


class Homotopy:
    """``s(n): source^n -> target^{n-1}`` with ``from - to = s d + d s``."""

    __slots__ = ("from_map", "to_map", "_comp")

    def __init__(self, from_map: ChainMap, to_map: ChainMap,
                 components: Mapping[int, ExactMatrix] | None = None):
        from_map._same(to_map)
        self.from_map = from_map
        self.to_map = to_map
        src, tgt = from_map.source, from_map.target
        comp = {}
        for n, m in (components or {}).items():
            want = (tgt.rank(n - 1), src.rank(n))
            if m.shape != want:
                raise ShapeError(f"homotopy component {n} has shape {m.shape}, expected {want}", n)
            if want[0] and want[1]:
                comp[int(n)] = m
        self._comp = comp

    def __call__(self, n: int) -> ExactMatrix:
        m = self._comp.get(n)
        if m is None:
            src, tgt = self.from_map.source, self.from_map.target
            return ExactMatrix(src.ring, tgt.rank(n - 1), src.rank(n))
        return m

    component = __call__

    def check(self) -> bool:
        src, tgt = self.from_map.source, self.from_map.target
        for n in range(min(src.lo, tgt.lo) - 1, max(src.hi, tgt.hi) + 2):
            lhs = self.from_map(n) - self.to_map(n)
            rhs = self(n + 1) @ src.diff(n) + tgt.diff(n - 1) @ self(n)
            if lhs != rhs:
                return False
        return True

    def __repr__(self):
        return f"Homotopy({self.from_map!r} ~ {self.to_map!r})"


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------

class CohomologyData(NamedTuple):
    """``H^n`` with explicit cycle representatives.

    ``gens`` columns are cycles representing the module generators;
    ``classes @ z`` gives the coordinates of the class of a cycle ``z``.
    """

    module: FgModule
    gens: ExactMatrix
    classes: ExactMatrix


def cohomology_data(c: ChainComplex, n: int) -> CohomologyData:
    hit = c._cache.get(("H", n))
    if hit is not None:
        return hit
    ring = c.ring
    rn = c.rank(n)
    d = c.diff(n)
    ks = snf(d, want_u=False, want_vinv=True)
    r = ks.rank
    K = ks.v.submatrix(cols=range(r, rn))          # cycle basis
    L = ks.vinv.submatrix(rows=range(r, rn))       # left inverse on cycles
    k = rn - r
    A = L @ c.diff(n - 1)                          # boundaries in cycle coords
    res = snf(A, want_v=False, want_uinv=True)
    torsion, free = [], []
    for i in range(k):
        if i < res.rank:
            if not ring.is_unit(res.diag[i]):
                torsion.append(i)
        else:
            free.append(i)
    keep = torsion + free
    module = FgModule(ring, len(free), tuple(res.diag[i] for i in torsion))
    gens = K @ res.uinv.submatrix(cols=keep)
    classes = res.u.submatrix(rows=keep) @ L
    data = CohomologyData(module, gens, classes)
    c._cache[("H", n)] = data
    return data


def cohomology(c: ChainComplex, n: int) -> FgModule:
    """``H^n(c) = Z^n / B^n`` in invariant-factor normal form."""
    return cohomology_data(c, n).module


def cohomology_table(c: ChainComplex) -> dict:
    """Nonzero cohomology modules by degree."""
    out = {}
    for n in c.degrees:
        h = cohomology(c, n)
        if not h.is_zero():
            out[n] = h
    return out


def euler_characteristic(c: ChainComplex) -> int:
    return sum(_sign(n) * c.rank(n) for n in c.degrees)


def _induced(src: CohomologyData, tgt: CohomologyData, m: ExactMatrix) -> ModuleMap:
    return ModuleMap(src.module, tgt.module, tgt.classes @ m @ src.gens)


def induced_map(f: ChainMap, n: int) -> ModuleMap:
    """``H^n(f)``: restrict ``f(n)`` to cycles and read off classes."""
    return _induced(cohomology_data(f.source, n), cohomology_data(f.target, n), f(n))


def is_quasi_iso(f: ChainMap) -> bool:
    """Whether ``f`` induces isomorphisms on every cohomology module."""
    for n in f.degrees():
        hs = cohomology(f.source, n)
        ht = cohomology(f.target, n)
        if hs != ht:
            return False
        if hs.is_zero():
            continue
        if not module_map_analysis(induced_map(f, n)).is_iso:
            return False
    return True


# ---------------------------------------------------------------------------
# Shift, biproduct, tensor
# ---------------------------------------------------------------------------

def shift(c: ChainComplex, k: int) -> ChainComplex:
    """``c[k]``: degree ``n`` holds ``c^{n+k}``, differential ``(-1)^k d``."""
    if k == 0:
        return c
    sg = _sign(k)
    ranks = {n - k: r for n, r in c.ranks.items()}
    diffs = {n - k: (m if sg == 1 else -m) for n, m in c._diffs.items()}
    return ChainComplex(c.ring, ranks, diffs)


class Biproduct(NamedTuple):
    complex: ChainComplex
    inj_a: ChainMap
    inj_b: ChainMap
    proj_a: ChainMap
    proj_b: ChainMap


def _direct_sum_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    ring = a.ring
    degs = set(a.ranks) | set(b.ranks)
    ranks = {n: a.rank(n) + b.rank(n) for n in degs}
    diffs = {}
    for n in degs:
        if n + 1 in degs:
            za = ExactMatrix(ring, a.rank(n + 1), b.rank(n))
            zb = ExactMatrix(ring, b.rank(n + 1), a.rank(n))
            diffs[n] = ExactMatrix.block(ring, [[a.diff(n), za], [zb, b.diff(n)]])
    return ChainComplex(ring, ranks, diffs)


def biproduct(a: ChainComplex, b: ChainComplex) -> Biproduct:
    """Degreewise direct sum (``a`` block first) with its structure maps."""
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    ring = a.ring
    s = _direct_sum_complex(a, b)
    ia, ib, pa, pb = {}, {}, {}, {}
    for n in s.degrees:
        ra, rb = a.rank(n), b.rank(n)
        Ia, Ib = ExactMatrix.identity(ring, ra), ExactMatrix.identity(ring, rb)
        ia[n] = Ia.vstack(ExactMatrix(ring, rb, ra))
        ib[n] = ExactMatrix(ring, ra, rb).vstack(Ib)
        pa[n] = Ia.hstack(ExactMatrix(ring, ra, rb))
        pb[n] = ExactMatrix(ring, rb, ra).hstack(Ib)
    return Biproduct(s, ChainMap(a, s, ia), ChainMap(b, s, ib),
                     ChainMap(s, a, pa), ChainMap(s, b, pb))


def _tensor_layout(a: ChainComplex, b: ChainComplex):
    """Per degree ``n``: list of ``(i, j, offset)`` blocks and the total rank."""
    layout = {}
    if a.is_zero() or b.is_zero():
        return layout
    for n in range(a.lo + b.lo, a.hi + b.hi + 1):
        blocks, off = [], 0
        for i in a.degrees:
            j = n - i
            sz = a.rank(i) * b.rank(j)
            if sz:
                blocks.append((i, j, off))
                off += sz
        if off:
            layout[n] = (blocks, off)
    return layout


def tensor(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product with the Koszul sign ``(-1)^i`` on ``1 ⊗ d_b``."""
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    ring = a.ring
    lay = _tensor_layout(a, b)
    ranks = {n: tot for n, (_, tot) in lay.items()}
    diffs = {}
    for n, (blocks, tot) in lay.items():
        if n + 1 not in lay:
            continue
        tblocks, ttot = lay[n + 1]
        where = {(i, j): off for i, j, off in tblocks}
        rows = [[ring.zero] * tot for _ in range(ttot)]
        for i, j, off in blocks:
            ra, rb = a.rank(i), b.rank(j)
            if (i + 1, j) in where:
                blk = a.diff(i).kron(ExactMatrix.identity(ring, rb))
                _paste(rows, blk, where[(i + 1, j)], off)
            if (i, j + 1) in where:
                blk = ExactMatrix.identity(ring, ra).kron(b.diff(j))
                if i % 2:
                    blk = -blk
                _paste(rows, blk, where[(i, j + 1)], off)
        diffs[n] = ExactMatrix(ring, ttot, tot, rows)
    return ChainComplex(ring, ranks, diffs)


def _paste(rows, blk: ExactMatrix, r0: int, c0: int):
    for i in range(blk.rows):
        row = rows[r0 + i]
        for j, x in enumerate(blk.row(i)):
            if x:
                row[c0 + j] = x


def tensor_swap(a: ChainComplex, b: ChainComplex) -> ChainMap:
    """The isomorphism ``a ⊗ b -> b ⊗ a``, ``x ⊗ y ↦ (-1)^{ij} y ⊗ x``."""
    ring = a.ring
    src, tgt = tensor(a, b), tensor(b, a)
    la, lb = _tensor_layout(a, b), _tensor_layout(b, a)
    comp = {}
    for n, (blocks, tot) in la.items():
        where = {(j, i): off for j, i, off in lb[n][0]}
        rows = [[ring.zero] * tot for _ in range(tot)]
        for i, j, off in blocks:
            ra, rb = a.rank(i), b.rank(j)
            toff = where[(j, i)]
            sg = ring(_sign(i * j))
            for p in range(ra):
                for q in range(rb):
                    rows[toff + q * ra + p][off + p * rb + q] = sg
        comp[n] = ExactMatrix(ring, tot, tot, rows)
    return ChainMap(src, tgt, comp)
