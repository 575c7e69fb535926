"""Exact linear algebra over Z, Q and F_p, and finitely generated modules.

Everything here works over a principal ring, where submodules of free
modules are free. That assumption is what lets kernels, images and
truncations of free complexes stay free.

Over Z the workhorse is Smith normal form with smallest-absolute-value
pivoting. Over fields, Gaussian elimination is used where only row
operations are needed; :func:`smith_normal_form` still returns a diagonal
of ones and zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .matrix import ExactMatrix
from .rings import CoefficientRing

__all__ = [
    "SNF", "smith_normal_form", "snf", "rank", "kernel_basis",
    "cokernel_presentation", "solve_linear", "solve_many", "span_basis",
    "FgModule", "ModuleMap", "MapAnalysis", "module_map_analysis",
    "homology_at", "is_exact_at", "invertible_inverse", "solve_sparse",
]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

class SNF(NamedTuple):
    """``u @ m @ v == d``; ``uinv``/``vinv`` are the inverse transforms."""

    u: ExactMatrix | None
    d: ExactMatrix
    v: ExactMatrix | None
    uinv: ExactMatrix | None
    vinv: ExactMatrix | None
    diag: tuple
    rank: int


def _ident(ring, n):
    z, o = ring.zero, ring.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def snf(m: ExactMatrix, *, want_u=True, want_v=True,
        want_uinv=False, want_vinv=False) -> SNF:
    """Smith normal form with optional transform tracking."""
    ring = m.ring
    rows, cols = m.rows, m.cols
    A = m.tolist()
    U = _ident(ring, rows) if want_u else None
    Ui = _ident(ring, rows) if want_uinv else None
    V = _ident(ring, cols) if want_v else None
    Vi = _ident(ring, cols) if want_vinv else None
    norm = ring.normalize
    field = ring.is_field

    def add_row(i, j, q):  # row_i -= q * row_j
        for M in (A, U):
            if M is not None:
                ri, rj = M[i], M[j]
                for k, x in enumerate(rj):
                    if x:
                        ri[k] = norm(ri[k] - q * x)
        if Ui is not None:
            for r in Ui:
                if r[i]:
                    r[j] = norm(r[j] + q * r[i])

    def swap_rows(i, j):
        if i == j:
            return
        for M in (A, U):
            if M is not None:
                M[i], M[j] = M[j], M[i]
        if Ui is not None:
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def scale_row(i, c):  # c a unit
        for M in (A, U):
            if M is not None:
                M[i] = [norm(c * x) for x in M[i]]
        if Ui is not None:
            ci = ring.inverse(c)
            for r in Ui:
                r[i] = norm(r[i] * ci)

    def add_col(i, j, q):  # col_i -= q * col_j
        for M in (A, V):
            if M is not None:
                for r in M:
                    if r[j]:
                        r[i] = norm(r[i] - q * r[j])
        if Vi is not None:
            ri, rj = Vi[i], Vi[j]
            for k, x in enumerate(ri):
                if x:
                    rj[k] = norm(rj[k] + q * x)

    def swap_cols(i, j):
        if i == j:
            return
        for M in (A, V):
            if M is not None:
                for r in M:
                    r[i], r[j] = r[j], r[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    diag = []
    t = 0
    lim = min(rows, cols)
    while t < lim:
        # pivot search
        best = None
        bestval = None
        for i in range(t, rows):
            r = A[i]
            for j in range(t, cols):
                a = r[j]
                if a:
                    if field:
                        best = (i, j)
                        break
                    av = abs(a)
                    if best is None or av < bestval:
                        best, bestval = (i, j), av
                        if av == 1:
                            break
            if best is not None and (field or bestval == 1):
                break
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if field:
            p = A[t][t]
            if p != ring.one:
                scale_row(t, ring.inverse(p))
            for i in range(t + 1, rows):
                a = A[i][t]
                if a:
                    add_row(i, t, a)
            for j in range(t + 1, cols):
                a = A[t][j]
                if a:
                    add_col(j, t, a)
            diag.append(ring.one)
            t += 1
            continue
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                a = A[i][t]
                if a:
                    q = a // p
                    if q:
                        add_row(i, t, q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                a = A[t][j]
                if a:
                    q = a // p
                    if q:
                        add_col(j, t, q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                bi, bj, bv = t, t, abs(A[t][t])
                for i in range(t + 1, rows):
                    a = A[i][t]
                    if a and abs(a) < bv:
                        bi, bj, bv = i, t, abs(a)
                for j in range(t + 1, cols):
                    a = A[t][j]
                    if a and abs(a) < bv:
                        bi, bj, bv = t, j, abs(a)
                swap_rows(t, bi)
                swap_cols(t, bj)
                continue
            bad = None
            for i in range(t + 1, rows):
                r = A[i]
                for j in range(t + 1, cols):
                    if r[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            scale_row(t, -1)
        diag.append(A[t][t])
        t += 1

    r = len(diag)
    full = tuple(diag) + (ring.zero,) * (lim - r)

    def mk(M, n):
        if M is None:
            return None
        return ExactMatrix._raw(ring, n, n, tuple(tuple(x) for x in M))

    D = ExactMatrix._raw(ring, rows, cols, tuple(tuple(x) for x in A))
    return SNF(mk(U, rows), D, mk(V, cols), mk(Ui, rows), mk(Vi, cols), full, r)


def smith_normal_form(m: ExactMatrix):
    """Return ``(u, d, v)`` with ``u @ m @ v == d``.

    ``u`` and ``v`` are invertible over the ring and ``d`` is diagonal with
    a nonnegative divisibility chain. Over a field ``d`` has ones then zeros.

    >>> from chainlab.rings import ZZ
    >>> u, d, v = smith_normal_form(ExactMatrix.from_rows(ZZ, [[2, 0], [0, 3]]))
    >>> d.tolist()
    [[1, 0], [0, 6]]
    """
    res = snf(m)
    return res.u, res.d, res.v


def rank(m: ExactMatrix) -> int:
    if m.ring.is_field:
        return len(_rref(m.ring, m.tolist(), m.cols)[1])
    return snf(m, want_u=False, want_v=False).rank


def invertible_inverse(m: ExactMatrix) -> ExactMatrix | None:
    """Inverse over the ring, or ``None`` when ``m`` is not invertible."""
    if m.rows != m.cols:
        return None
    res = snf(m)
    if res.rank != m.rows or any(not m.ring.is_unit(x) for x in res.diag):
        return None
    # u m v = d with d a diagonal of units
    dinv = ExactMatrix.diagonal(m.ring, [m.ring.inverse(x) for x in res.diag])
    return res.v @ dinv @ res.u


# ---------------------------------------------------------------------------
# Row reduction over fields
# ---------------------------------------------------------------------------

def _rref(ring, A, ncols, extra=0):
    """In-place reduced row echelon form on the first ``ncols`` columns.

    ``extra`` trailing columns (right-hand sides) are carried along.
    Returns ``(rows, pivots)``.
    """
    norm = ring.normalize
    inv = ring.inverse
    pivots = []
    r = 0
    nrows = len(A)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        prow = A[r]
        p = prow[c]
        if p != 1:
            pi = inv(p)
            prow = A[r] = [norm(x * pi) for x in prow]
        nzk = [k for k in range(c, ncols + extra) if prow[k]]
        for i in range(nrows):
            if i != r:
                a = A[i][c]
                if a:
                    row = A[i]
                    for k in nzk:
                        row[k] = norm(row[k] - a * prow[k])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots


# ---------------------------------------------------------------------------
# Kernels, cokernels, solving
# ---------------------------------------------------------------------------

def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns form a basis of ``{x : m x = 0}`` (a free module over Z)."""
    ring = m.ring
    n = m.cols
    if ring.is_field:
        R, piv = _rref(ring, m.tolist(), n)
        pset = set(piv)
        free = [c for c in range(n) if c not in pset]
        cols = []
        for fc in free:
            x = [ring.zero] * n
            x[fc] = ring.one
            for i, pc in enumerate(piv):
                x[pc] = ring.normalize(-R[i][fc])
            cols.append(x)
        return ExactMatrix.from_columns(ring, n, cols)
    res = snf(m, want_u=False)
    return res.v.submatrix(cols=range(res.rank, n))


def cokernel_presentation(m: ExactMatrix) -> "FgModule":
    """The module ``R^rows / (column span of m)`` in normal form."""
    ring = m.ring
    if ring.is_field:
        return FgModule(ring, m.rows - rank(m))
    res = snf(m, want_u=False, want_v=False)
    factors = tuple(d for d in res.diag[:res.rank] if d != 1)
    return FgModule(ring, m.rows - res.rank, factors)


def solve_many(m: ExactMatrix, rhs: Sequence[Sequence]) -> list:
    """Solve ``m x = b`` for each vector ``b``; entries are tuples or None."""
    ring = m.ring
    rhs = [tuple(b) for b in rhs]
    for b in rhs:
        if len(b) != m.rows:
            raise ValueError("right-hand side has the wrong length")
    if not rhs:
        return []
    n = m.cols
    if ring.is_field:
        k = len(rhs)
        A = [list(row) + [b[i] for b in rhs] for i, row in enumerate(m.tolist())]
        R, piv = _rref(ring, A, n, extra=k)
        r = len(piv)
        out = []
        for j in range(k):
            col = n + j
            if any(R[i][col] for i in range(r, len(R))):
                out.append(None)
                continue
            x = [ring.zero] * n
            for i, pc in enumerate(piv):
                x[pc] = R[i][col]
            out.append(tuple(x))
        return out
    res = snf(m)
    out = []
    for b in rhs:
        c = res.u.apply(b)
        y = [0] * n
        ok = True
        for i, ci in enumerate(c):
            if i < res.rank:
                q, rem = divmod(ci, res.diag[i])
                if rem:
                    ok = False
                    break
                y[i] = q
            elif ci:
                ok = False
                break
        out.append(res.v.apply(y) if ok else None)
    return out


def solve_linear(m: ExactMatrix, b: Sequence):
    """Some ``x`` with ``m x = b`` over the ring, or ``None``.

    Over Z the solution is integral; ``None`` means the SNF-transformed
    system has a divisibility obstruction.
    """
    return solve_many(m, [b])[0]


def solve_sparse(ring: CoefficientRing, ncols: int, rows: Sequence[dict],
                 rhs: Sequence):
    """Solve a system given as sparse rows ``{column: coefficient}``.

    Over fields this eliminates on the sparse rows directly; over Z the
    system is densified and solved through Smith normal form.
    """
    if not ring.is_field:
        # a rational solution that happens to be integral settles it cheaply
        from .rings import QQ
        x = solve_sparse(QQ, ncols, rows, rhs)
        if x is None:
            return None
        if all(v.denominator == 1 for v in x):
            return tuple(int(v) for v in x)
        dense = ExactMatrix(ring, len(rows), ncols,
                            [[r.get(j, 0) for j in range(ncols)] for r in rows])
        return solve_linear(dense, rhs)
    import heapq
    norm = ring.normalize
    inv = ring.inverse
    piv = {}
    for row, b in zip(rows, rhs):
        row = {k: v for k, v in row.items() if v}
        b = norm(b)
        heap = list(row)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = row.get(c)
            if not a:
                continue
            P = piv.get(c)
            if P is None:
                ai = inv(a)
                prow = {k: norm(v * ai) for k, v in row.items()}
                piv[c] = (prow, norm(b * ai))
                break
            prow, pb = P
            for k, v in prow.items():
                nv = norm(row.get(k, 0) - a * v)
                if nv:
                    if k not in row:
                        heapq.heappush(heap, k)
                    row[k] = nv
                else:
                    row.pop(k, None)
            b = norm(b - a * pb)
        else:
            if b:
                return None
    x = [ring.zero] * ncols
    for c in sorted(piv, reverse=True):
        prow, pb = piv[c]
        s = pb
        for k, v in prow.items():
            if k != c:
                s -= v * x[k]
        x[c] = norm(s)
    return tuple(x)


def span_basis(m: ExactMatrix) -> ExactMatrix:
    """A basis (as columns) of the column span of ``m``."""
    ring = m.ring
    if ring.is_field:
        _, piv = _rref(ring, m.tolist(), m.cols)
        return m.submatrix(cols=piv)
    res = snf(m, want_u=False, want_v=False, want_uinv=True)
    cols = []
    for i in range(res.rank):
        d = res.diag[i]
        cols.append([x * d for x in res.uinv.column(i)])
    return ExactMatrix.from_columns(ring, m.rows, cols)


def _coords(basis: ExactMatrix, vectors: Sequence[Sequence]) -> ExactMatrix:
    """Coordinates of ``vectors`` in ``basis``; every vector must be in the span."""
    sols = solve_many(basis, vectors)
    if any(s is None for s in sols):
        raise ArithmeticError("vector outside the lattice")
    return ExactMatrix.from_columns(basis.ring, basis.cols, sols)


def _contains(basis: ExactMatrix, vectors) -> bool:
    return all(s is not None for s in solve_many(basis, vectors))


# ---------------------------------------------------------------------------
# Finitely generated modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FgModule:
    """``R^free_rank ⊕ R/d_1 ⊕ ... ⊕ R/d_k`` with ``d_1 | d_2 | ...``.

    Generators are ordered torsion first (in factor order), then free.
    """

    ring: CoefficientRing
    free_rank: int = 0
    invariant_factors: tuple = ()

    def __post_init__(self):
        f = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if self.ring.is_field and f:
            raise ValueError("modules over a field have no invariant factors")
        for a, b in zip(f, f[1:]):
            if b % a:
                raise ValueError(f"invariant factors must divide: {f}")
        if any(x < 2 for x in f):
            raise ValueError(f"invariant factors must be >= 2: {f}")

    @classmethod
    def zero(cls, ring):
        return cls(ring, 0, ())

    @classmethod
    def free(cls, ring, n):
        return cls(ring, n, ())

    @classmethod
    def from_orders(cls, ring, orders: Sequence[int]) -> "FgModule":
        """Normal form of ``⊕ R/(o)``; order 0 means a free summand."""
        orders = list(orders)
        m = ExactMatrix.diagonal(ring, orders)
        return cokernel_presentation(m)

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def torsion_count(self) -> int:
        return len(self.invariant_factors)

    def is_zero(self) -> bool:
        return self.ngens == 0

    def is_torsion(self) -> bool:
        return self.free_rank == 0

    def is_torsion_free(self) -> bool:
        return not self.invariant_factors

    def order(self):
        """Cardinality over Z, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def relation_matrix(self) -> ExactMatrix:
        """``ngens x torsion_count`` matrix whose columns span the relations."""
        k = self.torsion_count
        return ExactMatrix.diagonal(self.ring, list(self.invariant_factors),
                                    rows=self.ngens, cols=k)

    def reduce(self, vec: Sequence) -> tuple:
        """Canonical coordinates of an element (torsion parts mod d_i)."""
        f = self.invariant_factors
        return tuple((x % f[i]) if i < len(f) else x for i, x in enumerate(vec))

    def direct_sum(self, other: "FgModule") -> "FgModule":
        orders = list(self.invariant_factors) + [0] * self.free_rank
        orders += list(other.invariant_factors) + [0] * other.free_rank
        return FgModule.from_orders(self.ring, orders)

    def __repr__(self):
        return f"FgModule({self.ring.tag}: {self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        base = "Z" if self.ring.kind == "Z" else self.ring.tag
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append(base)
        elif self.free_rank > 1:
            parts.append(f"{base}^{self.free_rank}")
        return " + ".join(parts)


class ModuleMap:
    """A homomorphism of :class:`FgModule` given on generators.

    ``matrix`` has shape ``target.ngens x source.ngens``; column ``j`` holds
    the image of source generator ``j``. Torsion coordinates of the target
    are reduced, and relations of the source must map into relations.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgModule, target: FgModule, matrix: ExactMatrix):
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(f"matrix shape {matrix.shape} does not fit "
                             f"{source} -> {target}")
        ring = source.ring
        if target.invariant_factors:
            rows = matrix.tolist()
            for i, d in enumerate(target.invariant_factors):
                rows[i] = [x % d for x in rows[i]]
            matrix = ExactMatrix._raw(ring, matrix.rows, matrix.cols,
                                      tuple(tuple(r) for r in rows))
        tf = target.invariant_factors
        for j, d in enumerate(source.invariant_factors):
            for i in range(target.ngens):
                x = matrix[i, j]
                if i < len(tf):
                    if (d * x) % tf[i]:
                        raise ValueError("map does not respect relations")
                elif x:
                    raise ValueError("torsion generator sent to a free element")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, ExactMatrix(source.ring, target.ngens, source.ngens))

    @classmethod
    def identity(cls, module):
        return cls(module, module, ExactMatrix.identity(module.ring, module.ngens))

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return f"ModuleMap({self.source} -> {self.target}, {self.matrix.render()})"

    # lattices inside R^{target.ngens} ------------------------------------
    def image_lattice(self) -> ExactMatrix:
        """Basis of ``im(matrix) + relations(target)``."""
        gens = self.matrix.hstack(self.target.relation_matrix())
        return span_basis(gens)

    def kernel_lattice(self) -> ExactMatrix:
        """Basis of ``{x in R^{source.ngens} : matrix x ∈ relations(target)}``."""
        big = self.matrix.hstack(self.target.relation_matrix())
        K = kernel_basis(big)
        top = K.submatrix(rows=range(self.source.ngens))
        return span_basis(top)


def _subquotient(ring, lattice: ExactMatrix, sub: ExactMatrix) -> FgModule:
    """``lattice / sub`` where ``sub``'s columns lie in the lattice."""
    if lattice.cols == 0:
        return FgModule.zero(ring)
    if sub.cols == 0:
        return FgModule.free(ring, lattice.cols)
    A = _coords(lattice, sub.columns())
    return cokernel_presentation(A)


class MapAnalysis(NamedTuple):
    kernel: FgModule
    cokernel: FgModule
    image: FgModule
    is_iso: bool


def module_map_analysis(f: ModuleMap) -> MapAnalysis:
    """Kernel, cokernel and image of ``f`` in normal form."""
    ring = f.source.ring
    relS = f.source.relation_matrix()
    relT = f.target.relation_matrix()
    kernel = _subquotient(ring, f.kernel_lattice(), relS)
    cokernel = cokernel_presentation(f.matrix.hstack(relT))
    image = _subquotient(ring, f.image_lattice(), relT)
    return MapAnalysis(kernel, cokernel, image,
                       kernel.is_zero() and cokernel.is_zero())


def homology_at(incoming: ModuleMap, outgoing: ModuleMap) -> FgModule:
    """``ker(outgoing) / im(incoming)``; the composite must vanish."""
    if incoming.target != outgoing.source:
        raise ValueError("maps are not composable")
    if not outgoing.compose(incoming).is_zero():
        raise ValueError("composite is not zero")
    ring = incoming.source.ring
    K = outgoing.kernel_lattice()
    im = incoming.matrix.hstack(incoming.target.relation_matrix())
    return _subquotient(ring, K, im)


def is_exact_at(incoming: ModuleMap, outgoing: ModuleMap) -> bool:
    """Whether ``image(incoming) == kernel(outgoing)`` as submodules."""
    if incoming.target != outgoing.source:
        raise ValueError("maps are not composable")
    I = incoming.image_lattice()
    K = outgoing.kernel_lattice()
    if I.cols != K.cols:
        return False
    return _contains(K, I.columns()) and _contains(I, K.columns())

