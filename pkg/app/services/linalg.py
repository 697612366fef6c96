"""Exact dense linear algebra over a `FieldInterface`.

Matrices are immutable and row-major. Vectors are plain tuples of field
values. Every entry is kept in canonical form (`field.reduce`), so a zero test
is a comparison with 0.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Any, Iterable, Optional, Sequence

from app.exceptions import DimensionMismatchError
from app.interfaces import FieldInterface

Vector = tuple


@dataclass(frozen=True)
class Matrix:
    field: FieldInterface
    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatchError(
                f"matrix data does not have shape {self.rows}x{self.cols}"
            )

    # constructors

    @classmethod
    def from_rows(cls, field: FieldInterface, rows: Iterable[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        data = tuple(tuple(field.coerce(v) for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(field, len(data), cols, data)

    @classmethod
    def from_columns(cls, field: FieldInterface, columns: Sequence[Sequence[Any]], rows: int) -> "Matrix":
        data = tuple(tuple(field.reduce(c[i]) for c in columns) for i in range(rows))
        return cls(field, rows, len(columns), data)

    @classmethod
    def zeros(cls, field: FieldInterface, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, tuple((field.zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldInterface, n: int) -> "Matrix":
        return cls(field, n, n, tuple(
            tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
        ))

    @classmethod
    def block_diagonal(cls, field: FieldInterface, blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = []
        offset = 0
        for b in blocks:
            for r in b.data:
                data.append((field.zero,) * offset + r + (field.zero,) * (cols - offset - b.cols))
            offset += b.cols
        return cls(field, rows, cols, tuple(data))

    # accessors

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def entries(self) -> Vector:
        return tuple(v for r in self.data for v in r)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.data for v in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        cols = other.columns()
        data = tuple(
            tuple(f.reduce(sum(a * b for a, b in zip(r, c) if a != 0)) for c in cols)
            for r in self.data
        )
        return Matrix(f, self.rows, other.cols, data)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.reduce(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)
        ))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.reduce(a - b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)
        ))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c: Any) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(tuple(f.reduce(c * a) for a in r) for r in self.data))

    def apply(self, v: Sequence[Any]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(v)} for {self.shape} matrix")
        f = self.field
        return tuple(f.reduce(sum(a * b for a, b in zip(r, v) if a != 0)) for r in self.data)

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(row_idx), len(col_idx), tuple(
            tuple(self.data[i][j] for j in col_idx) for i in row_idx
        ))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        return Matrix(self.field, self.rows, self.cols + other.cols, tuple(
            r + s for r, s in zip(self.data, other.data)
        ))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack needs equal column counts")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.data + other.data)

    def rank(self) -> int:
        return len(rref(self)[1])

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shape {self.shape} vs {other.shape}")

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(v) for v in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols} over {self.field}: [{body}])"


def _reduce_rows(rows: list[list], pivot_cols: int, field: FieldInterface) -> tuple[list[list], list[int]]:
    """Gauss-Jordan in place; pivots are only searched among the first `pivot_cols` columns."""
    pivots = []
    r = 0
    n = len(rows)
    for c in range(pivot_cols):
        if r == n:
            break
        pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        if inv != 1:
            rows[r] = [field.reduce(v * inv) for v in rows[r]]
        prow = rows[r]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a if b == 0 else field.reduce(a - factor * b) for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows, pivots = _reduce_rows([list(r) for r in m.data], m.cols, m.field)
    return Matrix(m.field, m.rows, m.cols, tuple(tuple(r) for r in rows)), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some x with a @ x == b, or None."""
    if a.rows != b.rows:
        raise DimensionMismatchError(f"solve: a has {a.rows} rows, b has {b.rows}")
    f = a.field
    rows, pivots = _reduce_rows([list(r) + list(s) for r, s in zip(a.data, b.data)], a.cols, f)
    for r in rows[len(pivots):]:
        if any(v != 0 for v in r[a.cols:]):
            return None
    x = [[f.zero] * b.cols for _ in range(a.cols)]
    for r, c in zip(rows, pivots):
        x[c] = r[a.cols:]
    return Matrix(f, a.cols, b.cols, tuple(tuple(r) for r in x))


def nullspace_basis(a: Matrix) -> list[Vector]:
    f = a.field
    rows, pivots = _reduce_rows([list(r) for r in a.data], a.cols, f)
    pivot_set = set(pivots)
    basis = []
    for free in range(a.cols):
        if free in pivot_set:
            continue
        v = [f.zero] * a.cols
        v[free] = f.one
        for r, c in zip(rows, pivots):
            v[c] = f.reduce(-r[free])
        basis.append(tuple(v))
    return basis


def inverse(a: Matrix) -> Optional[Matrix]:
    if not a.is_square():
        raise DimensionMismatchError(f"inverse of non-square {a.shape} matrix")
    n = a.rows
    ident = Matrix.identity(a.field, n)
    rows, pivots = _reduce_rows([list(r) + list(s) for r, s in zip(a.data, ident.data)], n, a.field)
    if pivots != list(range(n)):
        return None
    return Matrix(a.field, n, n, tuple(tuple(r[n:]) for r in rows))


def is_invertible(a: Matrix) -> bool:
    return a.is_square() and rank(a) == a.rows


def echelon_basis(vectors: Iterable[Sequence[Any]], dim: int, field: FieldInterface) -> list[Vector]:
    """Canonical basis (nonzero rref rows) of the span of `vectors` in k^dim."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    rows, pivots = _reduce_rows(rows, dim, field)
    return [tuple(r) for r in rows[:len(pivots)]]


def pivot_columns(echelon: Sequence[Vector]) -> list[int]:
    return [next(i for i, v in enumerate(r) if v != 0) for r in echelon]


def complement_basis(echelon: Sequence[Vector], dim: int, field: FieldInterface) -> list[Vector]:
    """Standard basis vectors spanning a complement of an echelonized subspace."""
    taken = set(pivot_columns(echelon))
    return [
        tuple(field.one if i == j else field.zero for i in range(dim))
        for j in range(dim) if j not in taken
    ]


def intersect_subspaces(u: Sequence[Vector], v: Sequence[Vector], dim: int, field: FieldInterface) -> list[Vector]:
    if not u or not v:
        return []
    # columns of [U^T | -V^T]; a kernel vector (s, t) gives the common element s.U
    stacked = Matrix.from_columns(field, list(u) + [tuple(field.reduce(-x) for x in w) for w in v], dim)
    common = []
    for kernel in nullspace_basis(stacked):
        s = kernel[:len(u)]
        common.append(tuple(field.reduce(sum(c * w[i] for c, w in zip(s, u))) for i in range(dim)))
    return echelon_basis(common, dim, field)


class SpanCoordinates:
    """Coordinates of vectors with respect to a fixed list of vectors."""

    def __init__(self, vectors: Sequence[Sequence[Any]], dim: int, field: FieldInterface):
        self.field = field
        self.dim = dim
        self.count = len(vectors)
        rows = [
            list(v) + [field.one if i == j else field.zero for j in range(self.count)]
            for i, v in enumerate(vectors)
        ]
        rows, self.pivots = _reduce_rows(rows, dim, field)
        self._reduced = [r[:dim] for r in rows[:len(self.pivots)]]
        self._transform = [r[dim:] for r in rows[:len(self.pivots)]]
        self.relations = [tuple(r[dim:]) for r in rows[len(self.pivots):]]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def coordinates(self, v: Sequence[Any]) -> Optional[Vector]:
        f = self.field
        coords = [f.zero] * self.count
        residual = list(v)
        for red, trans, c in zip(self._reduced, self._transform, self.pivots):
            s = residual[c]
            if s == 0:
                continue
            residual = [f.reduce(a - s * b) for a, b in zip(residual, red)]
            coords = [f.reduce(a + s * b) for a, b in zip(coords, trans)]
        if any(x != 0 for x in residual):
            return None
        return tuple(coords)

    def contains(self, v: Sequence[Any]) -> bool:
        return self.coordinates(v) is not None


# Polynomials are coefficient lists, lowest degree first.

def minimal_polynomial(m: Matrix) -> list:
    if not m.is_square():
        raise DimensionMismatchError("minimal polynomial of a non-square matrix")
    f = m.field
    powers = [Matrix.identity(f, m.rows)]
    while True:
        nxt = powers[-1] @ m
        span = SpanCoordinates([p.entries() for p in powers], m.rows * m.cols, f)
        coords = span.coordinates(nxt.entries())
        if coords is not None:
            return [f.reduce(-c) for c in coords] + [f.one]
        powers.append(nxt)


def poly_eval(coeffs: Sequence[Any], x: Any, field: FieldInterface) -> Any:
    acc = field.zero
    for c in reversed(coeffs):
        acc = field.reduce(acc * x + c)
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def poly_roots(coeffs: Sequence[Any], field: FieldInterface) -> list:
    """Distinct roots in the field, in increasing order of representative."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    if field.is_finite():
        return [x for x in field.elements() if poly_eval(coeffs, x, field) == 0]
    # rational root theorem on the integer-scaled polynomial
    scale = lcm(*[Fraction(c).denominator for c in coeffs])
    ints = [int(Fraction(c) * scale) for c in coeffs]
    roots = set()
    while ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) > 1:
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if poly_eval(ints, cand, field) == 0:
                        roots.add(cand)
    return sorted(roots)
