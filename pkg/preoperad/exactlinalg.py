"""
Exact linear algebra
--------------------

Dense matrices over an exact Field, reduced row-echelon form, kernels, images,
coset representatives and quotients. This is the machinery behind
H^n = Ker D_n / Im D_{n-1}.

Elimination is plain Gauss-Jordan with the pivot scaled to 1. The pivot is
the first nonzero entry in column order, so every basis computed here is
reproducible entry for entry.
"""

from __future__ import annotations

import logging
from typing import Any, List, Optional, Sequence, Tuple

from preoperad.errors import DimensionMismatchError, InclusionViolationError
from preoperad.exactfield import Field

log = logging.getLogger(__name__)

Vector = List[Any]


def _is_zero_vector(v: Sequence[Any]) -> bool:
    return all(x == 0 for x in v)


class ExactMatrix:
    """rows × cols table of field elements, row-major."""

    def __init__(self, field: Field, rows: int, cols: int, entries: Optional[Sequence[Sequence[Any]]] = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if entries is None:
            zero = field.zero()
            self.entries = [[zero] * cols for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise DimensionMismatchError(f"entry table does not have shape {rows}x{cols}")
            self.entries = [[field.element(x) for x in r] for r in entries]

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "ExactMatrix":
        rows = list(rows)
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(field, len(rows), width, rows)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence[Any]], rows: int) -> "ExactMatrix":
        m = cls(field, rows, len(columns))
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise DimensionMismatchError(f"column {j} has {len(col)} entries, expected {rows}")
            for i, x in enumerate(col):
                m.entries[i][j] = field.element(x)
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        m = cls(field, n, n)
        for i in range(n):
            m.entries[i][i] = field.one()
        return m

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> Vector:
        return [r[j] for r in self.entries]

    def apply(self, v: Sequence[Any]) -> Vector:
        """m · v."""
        if len(v) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(v)} for a matrix with {self.cols} columns")
        zero = self.field.zero()
        support = [(j, x) for j, x in enumerate(v) if x != 0]
        out = []
        for r in self.entries:
            acc = zero
            for j, x in support:
                if r[j] != 0:
                    acc = acc + r[j] * x
            out.append(acc)
        return out

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        columns = [self.apply(other.column(j)) for j in range(other.cols)]
        return ExactMatrix.from_columns(self.field, columns, self.rows)

    def is_zero(self) -> bool:
        return all(_is_zero_vector(r) for r in self.entries)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field!r})"


# -------------------------
# Elimination
# -------------------------
def _rref_rows(rows: List[Vector], cols: int, field: Field) -> Tuple[List[Vector], List[int]]:
    """In-place Gauss-Jordan on a list of rows; returns (rows, pivot columns)."""
    one = field.one()
    pivots: List[int] = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        if r == nrows:
            break
        pivot_row = None
        for k in range(r, nrows):
            if rows[k][c] != 0:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        p = rows[r][c]
        if p != one:
            scale = one / p
            rows[r] = [x * scale if x != 0 else x for x in rows[r]]
        prow = rows[r]
        support = [j for j in range(c, cols) if prow[j] != 0]
        for k in range(nrows):
            if k == r:
                continue
            factor = rows[k][c]
            if factor == 0:
                continue
            row = rows[k]
            for j in support:
                row[j] = row[j] - factor * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: ExactMatrix) -> Tuple[ExactMatrix, int, List[int]]:
    """Reduced row-echelon form, rank and pivot columns."""
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref_rows(rows, m.cols, m.field)
    out = ExactMatrix(m.field, m.rows, m.cols)
    out.entries = rows
    return out, len(pivots), pivots


def rank(m: ExactMatrix) -> int:
    return rref(m)[1]


class Subspace:
    """Subspace of K^ambient held as a reduced echelon basis (pivots strictly increasing)."""

    def __init__(self, field: Field, ambient: int, basis: List[Vector], pivots: List[int]):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Sequence[Sequence[Any]]) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatchError(f"vector of length {len(v)} in K^{ambient}")
            rows.append([field.element(x) for x in v])
        rows, pivots = _rref_rows(rows, ambient, field)
        return cls(field, ambient, rows[: len(pivots)], pivots)

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, [], [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in K^{self.ambient})"


def kernel_basis(m: ExactMatrix) -> Subspace:
    """Null space of m; dim = cols - rank."""
    reduced, _, pivots = rref(m)
    pivot_set = set(pivots)
    zero, one = m.field.zero(), m.field.one()
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [zero] * m.cols
        v[free] = one
        for r, p in enumerate(pivots):
            v[p] = -reduced.entries[r][free]
        vectors.append(v)
    for v in vectors:
        if not _is_zero_vector(m.apply(v)):
            raise ArithmeticError("kernel vector does not map to zero")
    kernel = Subspace.span(m.field, m.cols, vectors)
    log.debug("kernel of %dx%d matrix has dimension %d", m.rows, m.cols, kernel.dim)
    return kernel


def image_basis(m: ExactMatrix) -> Subspace:
    """Column space of m; dim = rank."""
    return Subspace.span(m.field, m.rows, [m.column(j) for j in range(m.cols)])


def _check_ambient(s: Subspace, v: Sequence[Any]) -> None:
    if len(v) != s.ambient:
        raise DimensionMismatchError(f"vector of length {len(v)} against a subspace of K^{s.ambient}")


def coset_reduce(s: Subspace, v: Sequence[Any]) -> Vector:
    """Canonical representative of v + s: the pivot coordinates of s are eliminated."""
    _check_ambient(s, v)
    out = [s.field.element(x) for x in v]
    for row, p in zip(s.basis, s.pivots):
        factor = out[p]
        if factor == 0:
            continue
        for j in range(p, s.ambient):
            if row[j] != 0:
                out[j] = out[j] - factor * row[j]
    return out


def contains(s: Subspace, v: Sequence[Any]) -> bool:
    return _is_zero_vector(coset_reduce(s, v))


def quotient_basis(ker: Subspace, im: Subspace) -> List[Vector]:
    """
    Vectors of ker whose cosets form a basis of ker / im.

    These are the echelon vectors of ker whose pivots are not pivots of im;
    each one is already reduced against im.
    """
    if ker.ambient != im.ambient:
        raise DimensionMismatchError(f"K^{ker.ambient} and K^{im.ambient}")
    for v in im.basis:
        if not contains(ker, v):
            raise InclusionViolationError("image is not contained in the kernel", witness=v)
    im_pivots = set(im.pivots)
    reps = [list(v) for v, p in zip(ker.basis, ker.pivots) if p not in im_pivots]
    if len(reps) != ker.dim - im.dim:
        raise ArithmeticError("quotient size disagrees with dim ker - dim im")
    return reps


def solve(m: ExactMatrix, b: Sequence[Any]) -> Optional[Vector]:
    """One solution x of m · x = b (free variables set to 0), or None."""
    if len(b) != m.rows:
        raise DimensionMismatchError(f"right-hand side of length {len(b)} for {m.rows} rows")
    augmented = [list(r) + [m.field.element(x)] for r, x in zip(m.entries, b)]
    rows, pivots = _rref_rows(augmented, m.cols + 1, m.field)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [m.field.zero()] * m.cols
    for r, p in enumerate(pivots):
        x[p] = rows[r][m.cols]
    return x
