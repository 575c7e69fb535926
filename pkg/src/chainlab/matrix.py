"""Dense immutable matrices with exact entries over a :class:`CoefficientRing`."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rings import CoefficientRing


class ExactMatrix:
    """A ``rows x cols`` matrix over ``ring``.

    Entries are stored as a tuple of row tuples, already reduced into the
    ring. Instances are immutable and hashable.
    """

    __slots__ = ("ring", "rows", "cols", "_data", "_hash")

    def __init__(self, ring: CoefficientRing, rows: int, cols: int,
                 data: Sequence[Sequence] | None = None, *, _trusted=False):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self._hash = None
        if data is None:
            z = ring.zero
            self._data = tuple((z,) * cols for _ in range(rows))
            return
        if _trusted:
            self._data = data
            return
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"data does not have shape {rows}x{cols}")
        self._data = tuple(tuple(ring(x) for x in r) for r in data)

    # construction ------------------------------------------------------
    @classmethod
    def from_rows(cls, ring: CoefficientRing, rows: Sequence[Sequence],
                  cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), cols, rows)

    @classmethod
    def from_flat(cls, ring, rows, cols, entries: Sequence) -> "ExactMatrix":
        if len(entries) != rows * cols:
            raise ValueError("entries length must be rows*cols")
        return cls(ring, rows, cols,
                   [entries[i * cols:(i + 1) * cols] for i in range(rows)])

    @classmethod
    def _raw(cls, ring, rows, cols, data) -> "ExactMatrix":
        # data: tuple of tuples of already-normalized ring elements
        return cls(ring, rows, cols, data, _trusted=True)

    @classmethod
    def zeros(cls, ring, rows, cols) -> "ExactMatrix":
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring, n) -> "ExactMatrix":
        z, o = ring.zero, ring.one
        return cls._raw(ring, n, n, tuple(
            tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, ring, diag: Sequence, rows=None, cols=None):
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            data[i][i] = d
        return cls(ring, rows, cols, data)

    @classmethod
    def block(cls, ring, blocks: Sequence[Sequence["ExactMatrix"]]):
        """Assemble a block matrix; every block row must agree in height."""
        out = []
        ncols = None
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise ValueError("block row heights disagree")
            w = sum(b.cols for b in brow)
            if ncols is None:
                ncols = w
            elif w != ncols:
                raise ValueError("block column widths disagree")
            for i in range(h):
                row = ()
                for b in brow:
                    row += b._data[i]
                out.append(row)
        return cls._raw(ring, len(out), ncols or 0, tuple(out))

    # access ------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self._data for x in r)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def row(self, i) -> tuple:
        return self._data[i]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self._data)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    @classmethod
    def from_columns(cls, ring, nrows, columns: Sequence[Sequence]):
        cols = list(columns)
        data = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls._raw(ring, nrows, len(cols), data)

    def submatrix(self, rows: Iterable[int] | None = None,
                  cols: Iterable[int] | None = None) -> "ExactMatrix":
        ri = list(range(self.rows)) if rows is None else list(rows)
        ci = list(range(self.cols)) if cols is None else list(cols)
        data = tuple(tuple(self._data[i][j] for j in ci) for i in ri)
        return ExactMatrix._raw(self.ring, len(ri), len(ci), data)

    # arithmetic --------------------------------------------------------
    def _check_same(self, other):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        n = self.ring.normalize
        data = tuple(tuple(n(a + b) for a, b in zip(r, s))
                     for r, s in zip(self._data, other._data))
        return ExactMatrix._raw(self.ring, self.rows, self.cols, data)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        n = self.ring.normalize
        data = tuple(tuple(n(a - b) for a, b in zip(r, s))
                     for r, s in zip(self._data, other._data))
        return ExactMatrix._raw(self.ring, self.rows, self.cols, data)

    def __neg__(self) -> "ExactMatrix":
        n = self.ring.normalize
        data = tuple(tuple(n(-a) for a in r) for r in self._data)
        return ExactMatrix._raw(self.ring, self.rows, self.cols, data)

    def scale(self, c) -> "ExactMatrix":
        c = self.ring(c)
        n = self.ring.normalize
        data = tuple(tuple(n(c * a) for a in r) for r in self._data)
        return ExactMatrix._raw(self.ring, self.rows, self.cols, data)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        z = ring.zero
        if self.cols == 0:
            return ExactMatrix(ring, self.rows, other.cols)
        ocols = list(zip(*other._data))
        p = ring.p if ring.kind == "F" else 0
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            if not nz:
                out.append((z,) * other.cols)
                continue
            row = []
            for c in ocols:
                s = z
                for k, a in nz:
                    b = c[k]
                    if b:
                        s += a * b
                row.append(s % p if p else s)
            out.append(tuple(row))
        return ExactMatrix._raw(ring, self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product."""
        ring = self.ring
        n = ring.normalize
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        nz = [(k, a) for k, a in enumerate(vec) if a]
        return tuple(n(sum((r[k] * a for k, a in nz), ring.zero))
                     for r in self._data)

    @property
    def T(self) -> "ExactMatrix":
        data = tuple(zip(*self._data)) if self.rows else ()
        if not data:
            data = tuple(() for _ in range(self.cols))
        return ExactMatrix._raw(self.ring, self.cols, self.rows, tuple(data))

    def hstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix.block(self.ring, [[self, *others]])

    def vstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix.block(self.ring, [[m] for m in (self, *others)])

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        ring = self.ring
        n = ring.normalize
        rows = []
        for r in self._data:
            for s in other._data:
                rows.append(tuple(n(a * b) for a in r for b in s))
        return ExactMatrix._raw(ring, self.rows * other.rows,
                                self.cols * other.cols, tuple(rows))

    def change_ring(self, ring: CoefficientRing) -> "ExactMatrix":
        return ExactMatrix(ring, self.rows, self.cols, self._data)

    # predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self._data[i][j] == (1 if i == j else 0)
                   for i in range(self.rows) for j in range(self.cols))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rows, self.cols, self._data))
        return self._hash

    # rendering ---------------------------------------------------------
    def render(self) -> str:
        """Row-major bracketed text, e.g. ``[[1, 2], [3, 4]]``."""
        return render_rows(self._data)

    def __repr__(self):
        return f"ExactMatrix({self.ring.tag}, {self.rows}x{self.cols}, {self.render()})"


def render_rows(rows) -> str:
    return "[" + ", ".join(
        "[" + ", ".join(str(x) for x in r) + "]" for r in rows) + "]"


def parse_matrix_text(text: str, ring: CoefficientRing,
                      rows: int | None = None, cols: int | None = None):
    """Parse bracketed row-major text into an :class:`ExactMatrix`.

    ``[]`` denotes a matrix with no rows; ``rows``/``cols`` fill in the
    missing dimension of degenerate shapes. Raises ``ValueError`` with the
    character offset of the first problem.
    """
    s = text.strip()
    pos = 0

    def err(msg):
        raise MatrixSyntaxError(msg, pos)

    def skip():
        nonlocal pos
        while pos < len(s) and s[pos] in " \t":
            pos += 1

    def expect(ch):
        nonlocal pos
        skip()
        if pos >= len(s) or s[pos] != ch:
            err(f"expected {ch!r}")
        pos += 1

    def scalar():
        nonlocal pos
        skip()
        start = pos
        while pos < len(s) and (s[pos].isdigit() or s[pos] in "+-/"):
            pos += 1
        tok = s[start:pos]
        if not tok:
            err("expected a number")
        try:
            return Fraction(tok)
        except (ValueError, ZeroDivisionError):
            pos = start
            err(f"bad number {tok!r}")

    expect("[")
    data = []
    skip()
    if pos < len(s) and s[pos] == "]":
        pos += 1
    else:
        while True:
            expect("[")
            row = []
            skip()
            if pos < len(s) and s[pos] == "]":
                pos += 1
            else:
                while True:
                    row.append(scalar())
                    skip()
                    if pos < len(s) and s[pos] == ",":
                        pos += 1
                        continue
                    expect("]")
                    break
            data.append(row)
            skip()
            if pos < len(s) and s[pos] == ",":
                pos += 1
                continue
            expect("]")
            break
    skip()
    if pos != len(s):
        err("trailing characters")
    nrows = len(data)
    ncols = len(data[0]) if data else (cols or 0)
    if any(len(r) != ncols for r in data):
        raise MatrixSyntaxError("ragged rows", 0)
    if rows is not None and nrows == 0 and rows != 0:
        # zero-width matrix written as []
        if ncols not in (0,):
            raise MatrixSyntaxError("shape mismatch", 0)
        return ExactMatrix(ring, rows, 0)
    try:
        return ExactMatrix(ring, nrows, ncols, data)
    except ValueError as e:
        raise MatrixSyntaxError(str(e), 0) from None


class MatrixSyntaxError(ValueError):
    def __init__(self, msg, offset):
        super().__init__(msg)
        self.offset = offset
