"""Dense square matrices over GF(q) or GF(q)[t, t^-1], plus field linear algebra."""

import logging
from collections.abc import Callable, Iterable, Sequence

from ctgroups.core.errors import MatrixError
from ctgroups.core.field import FieldCtx, FieldElem, parse_elem, serialize_elem
from ctgroups.core.laurent import LaurentPoly, LaurentRing, serialize_laurent

logger = logging.getLogger(__name__)

Ring = FieldCtx | LaurentRing
Vector = tuple[FieldElem, ...]

MAX_DIM = 8


class Mat:
    """Immutable n x n matrix; hashable so closures can collect them in sets."""

    __slots__ = ("ring", "rows", "_hash")

    def __init__(self, ring: Ring, rows: Iterable[Iterable]):
        self.ring = ring
        self.rows = tuple(tuple(ring.lift(x) for x in row) for row in rows)
        n = len(self.rows)
        if not 1 <= n <= MAX_DIM or any(len(row) != n for row in self.rows):
            raise MatrixError(f"expected a square matrix of size 1..{MAX_DIM}")
        self._hash = None

    # --- constructors ---

    @classmethod
    def _raw(cls, ring: Ring, rows: tuple[tuple, ...]) -> "Mat":
        """Trusted constructor for entries already in the ring."""
        m = cls.__new__(cls)
        m.ring = ring
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Mat":
        one, zero = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, ring: Ring, entries: Sequence) -> "Mat":
        zero = ring.zero()
        n = len(entries)
        return cls(ring, [[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_ints(cls, field: FieldCtx, rows: Sequence[Sequence[int]]) -> "Mat":
        return cls(field, [[field.scalar(x) for x in row] for row in rows])

    # --- basic protocol ---

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"Mat({serialize_mat(self)})"

    def _same_shape(self, other: "Mat") -> None:
        if not isinstance(other, Mat) or other.n != self.n:
            raise MatrixError("dimension mismatch")

    def __mul__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        cols = list(zip(*other.rows))
        zero = self.ring.zero()
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                out_row.append(acc)
            out.append(tuple(out_row))
        return Mat._raw(self.ring, tuple(out))

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(self.ring, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(self.ring, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat(self.ring, [[-a for a in row] for row in self.rows])

    def scale(self, c) -> "Mat":
        c = self.ring.lift(c)
        return Mat(self.ring, [[c * a for a in row] for row in self.rows])

    def transpose(self) -> "Mat":
        return Mat(self.ring, list(zip(*self.rows)))

    def map_entries(self, fn: Callable, ring: Ring | None = None) -> "Mat":
        return Mat(ring or self.ring, [[fn(a) for a in row] for row in self.rows])

    def frobenius(self, r: int) -> "Mat":
        return self.map_entries(lambda a: a.frobenius(r))

    def is_identity(self) -> bool:
        one, zero = self.ring.one(), self.ring.zero()
        return all(a == (one if i == j else zero) for i, row in enumerate(self.rows) for j, a in enumerate(row))

    def power(self, k: int) -> "Mat":
        result = Mat.identity(self.ring, self.n)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    # --- determinant and inverse ---

    def det(self):
        if self.ring.is_field:
            return _det_elimination(self)
        return _det_laplace(self.rows, self.ring)

    def is_special(self) -> bool:
        return self.det() == self.ring.one()

    def inverse(self) -> "Mat":
        """Gauss-Jordan inverse; over the Laurent ring pivots must be units."""
        n = self.n
        one, zero = self.ring.one(), self.ring.zero()
        work = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if _invertible(work[r][col])), None)
            if pivot is None:
                raise MatrixError("matrix is singular (or has no unit pivot)")
            work[col], work[pivot] = work[pivot], work[col]
            inv = work[col][col].inverse()
            work[col] = [inv * x for x in work[col]]
            for r in range(n):
                if r != col and not work[r][col].is_zero():
                    factor = work[r][col]
                    work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
        return Mat(self.ring, [row[n:] for row in work])


def _invertible(x) -> bool:
    if isinstance(x, LaurentPoly):
        return x.is_unit()
    return not x.is_zero()


def _det_elimination(m: Mat) -> FieldElem:
    rows = [list(r) for r in m.rows]
    n = m.n
    det = m.ring.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if pivot is None:
            return m.ring.zero()
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, n):
            if not rows[r][col].is_zero():
                factor = rows[r][col] * inv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


def _det_laplace(rows: Sequence[Sequence], ring: Ring):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = ring.zero()
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = a * _det_laplace(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def sl_matrix(ring: Ring, rows: Iterable[Iterable]) -> Mat:
    """Build a matrix and insist that it lies in SL_n."""
    m = Mat(ring, rows)
    if not m.is_special():
        raise MatrixError(f"determinant {m.det()!r} is not 1")
    return m


# ---------------------------------------------------------------------------
# Linear algebra over a field (vectors are tuples of FieldElem)
# ---------------------------------------------------------------------------

def rref(rows: Sequence[Sequence[FieldElem]], field: FieldCtx) -> tuple[list[list[FieldElem]], list[int]]:
    """Reduced row echelon form, dropping zero rows; returns (rows, pivot columns)."""
    work = [list(r) for r in rows]
    if not work:
        return [], []
    width = len(work[0])
    pivots: list[int] = []
    r = 0
    for col in range(width):
        pivot = next((k for k in range(r, len(work)) if not work[k][col].is_zero()), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][col].inverse()
        work[r] = [inv * x for x in work[r]]
        for k in range(len(work)):
            if k != r and not work[k][col].is_zero():
                factor = work[k][col]
                work[k] = [x - factor * y for x, y in zip(work[k], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def span_basis(vectors: Iterable[Sequence[FieldElem]], field: FieldCtx, dim: int) -> tuple[Vector, ...]:
    """Canonical (RREF) basis of the span; equal subspaces give equal tuples."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return ()
    reduced, _ = rref(vectors, field)
    return tuple(tuple(v) for v in reduced)


def in_span(basis: Sequence[Vector], v: Sequence[FieldElem], field: FieldCtx) -> bool:
    if all(x.is_zero() for x in v):
        return True
    if not basis:
        return False
    _, base_pivots = rref(basis, field)
    _, ext_pivots = rref(list(basis) + [tuple(v)], field)
    return len(ext_pivots) == len(base_pivots)


def nullspace(rows: Sequence[Sequence[FieldElem]], field: FieldCtx, width: int) -> tuple[Vector, ...]:
    """Basis of {v : row . v = 0 for every row}, in canonical form."""
    reduced, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(width) if c not in pivots]
    zero, one = field.zero(), field.one()
    basis = []
    for f in free:
        v = [zero] * width
        v[f] = one
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return span_basis(basis, field, width)


def intersect_spans(b1: Sequence[Vector], b2: Sequence[Vector], field: FieldCtx, dim: int) -> tuple[Vector, ...]:
    if not b1 or not b2:
        return ()
    # Solve sum x_i b1_i = sum y_j b2_j; columns are the basis vectors.
    k1, k2 = len(b1), len(b2)
    rows = [[b1[i][c] for i in range(k1)] + [-b2[j][c] for j in range(k2)] for c in range(dim)]
    sols = nullspace(rows, field, k1 + k2)
    zero = field.zero()
    vectors = []
    for s in sols:
        v = [zero] * dim
        for i in range(k1):
            if not s[i].is_zero():
                v = [a + s[i] * b for a, b in zip(v, b1[i])]
        vectors.append(v)
    return span_basis(vectors, field, dim)


def apply_to_vector(m: Mat, v: Sequence[FieldElem]) -> Vector:
    zero = m.ring.zero()
    out = []
    for row in m.rows:
        acc = zero
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def serialize_mat(m: Mat) -> list[list]:
    """Row-major nested lists; field entries as "[c0,...]", Laurent entries as exponent maps."""
    if m.ring.is_field:
        return [[serialize_elem(a) for a in row] for row in m.rows]
    return [[serialize_laurent(a) for a in row] for row in m.rows]


def parse_mat(field: FieldCtx, data: Sequence[Sequence[str]]) -> Mat:
    """Inverse of serialize_mat for matrices over a field."""
    if not isinstance(data, (list, tuple)) or not all(isinstance(row, (list, tuple)) for row in data):
        raise MatrixError("a matrix is a list of rows")
    return Mat(field, [[parse_elem(field, str(x)) for x in row] for row in data])
