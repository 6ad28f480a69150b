"""Exact matrices over the rationals or a prime field.

Rational entries are :class:`fractions.Fraction`; prime-field entries are
plain ``int`` in ``range(p)``. Elimination always pivots on the first nonzero
entry in column order, so every derived basis is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import UsageError

Vector = tuple


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise UsageError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``q``, ``f2``, ``f3``, ... as used on the command line."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls()
        if t.startswith("f") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise UsageError(f"unknown field {text!r}; expected q or f<p>")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def name(self) -> str:
        return "q" if self.p is None else f"f{self.p}"

    def __call__(self, x) -> object:
        """Coerce ``x`` into this field."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def elements(self) -> list:
        """All field elements; only defined for finite fields."""
        if self.p is None:
            raise UsageError("the rationals cannot be enumerated")
        return list(range(self.p))

    def __repr__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()
F2 = Field(2)


@dataclass(frozen=True, eq=False)
class Matrix:
    """Immutable dense matrix with exact entries.

    ``rows`` and ``cols`` are stored explicitly so that empty shapes such as
    0x3 behave correctly.
    """

    nrows: int
    ncols: int
    data: tuple  # tuple of row tuples
    field: Field = QQ

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, ncols: int | None = None) -> "Matrix":
        rows = [tuple(field(x) for x in r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise UsageError("ragged matrix rows")
        return cls(len(rows), ncols, tuple(rows), field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int, field: Field = QQ) -> "Matrix":
        cols = [tuple(c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise UsageError("column length does not match row count")
        data = tuple(tuple(field(c[i]) for c in cols) for i in range(nrows))
        return cls(nrows, len(cols), data, field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        z = field(0)
        return cls(nrows, ncols, tuple((z,) * ncols for _ in range(nrows)), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        one, z = field(1), field(0)
        return cls(n, n, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> tuple:
        """Entries in row-major order."""
        return tuple(x for r in self.data for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.shape, self.data, self.field))

    def __repr__(self) -> str:
        return f"Matrix({[list(map(str, r)) for r in self.data]}, {self.field!r})"

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    @cached_property
    def T(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, tuple(zip(*self.data)) if self.nrows else tuple(() for _ in range(self.ncols)), self.field)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise UsageError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        cols = other.T.data
        out = []
        for r in self.data:
            row = []
            for c in cols:
                s = sum(a * b for a, b in zip(r, c) if a and b)
                row.append(s % p if p else Fraction(s))
            out.append(tuple(row))
        return Matrix(self.nrows, other.ncols, tuple(out), self.field)

    def apply(self, v: Sequence) -> Vector:
        p = self.field.p
        out = []
        for r in self.data:
            s = sum(a * b for a, b in zip(r, v) if a and b)
            out.append(s % p if p else Fraction(s))
        return tuple(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise UsageError("shape mismatch in addition")
        f = self.field
        return Matrix(self.nrows, self.ncols, tuple(tuple(f(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)), f)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f(c)
        return Matrix(self.nrows, self.ncols, tuple(tuple(f(c * a) for a in r) for r in self.data), f)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix(len(rows), len(cols), tuple(tuple(self.data[i][j] for j in cols) for i in rows), self.field)


def hstack(blocks: Sequence[Matrix], nrows: int, field: Field = QQ) -> Matrix:
    """Horizontal concatenation; ``nrows`` fixes the shape when ``blocks`` is empty."""
    for b in blocks:
        if b.nrows != nrows:
            raise UsageError("hstack row mismatch")
    data = tuple(tuple(x for b in blocks for x in b.data[i]) for i in range(nrows))
    return Matrix(nrows, sum(b.ncols for b in blocks), data, field)


def vstack(blocks: Sequence[Matrix], ncols: int, field: Field = QQ) -> Matrix:
    for b in blocks:
        if b.ncols != ncols:
            raise UsageError("vstack column mismatch")
    data = tuple(r for b in blocks for r in b.data)
    return Matrix(len(data), ncols, data, field)


def block_diag(blocks: Sequence[Matrix], field: Field = QQ) -> Matrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    z = field(0)
    out = []
    col_off = 0
    for b in blocks:
        left, right = (z,) * col_off, (z,) * (ncols - col_off - b.ncols)
        out.extend(left + r + right for r in b.data)
        col_off += b.ncols
    return Matrix(nrows, ncols, tuple(out), field)


def rref(m: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    f = m.field
    p = f.p
    rows = [list(r) for r in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, m.nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = f.inv(rows[r][c])
        if p:
            rows[r] = [x * inv % p for x in rows[r]]
        else:
            rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(m.nrows):
            if i != r and rows[i][c] != 0:
                a = rows[i][c]
                if p:
                    rows[i] = [(x - a * y) % p for x, y in zip(rows[i], pr)]
                else:
                    rows[i] = [x - a * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    return rows[:r], pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of the null space, one vector per free column in increasing order."""
    f = m.field
    reduced, pivots = rref(m)
    pivset = set(pivots)
    one, z = f(1), f(0)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [z] * m.ncols
        v[free] = one
        for row, pc in zip(reduced, pivots):
            v[pc] = f(-row[free])
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """A particular solution of ``m x = b`` (free variables set to zero), or None."""
    if len(b) != m.nrows:
        raise UsageError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    f = m.field
    aug = Matrix(m.nrows, m.ncols + 1, tuple(r + (f(x),) for r, x in zip(m.data, b)), f)
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [f(0)] * m.ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[-1]
    return tuple(x)


def image_basis(m: Matrix) -> list[Vector]:
    """Basis of the column space: the pivot columns of ``m``."""
    _, pivots = rref(m)
    return [m.column(j) for j in pivots]


def complement_basis(vectors: Sequence[Vector], dim: int, field: Field = QQ) -> list[int]:
    """Indices of standard basis vectors that extend ``vectors`` to a basis of k^dim.

    ``vectors`` must be linearly independent. Greedy in increasing index order.
    """
    one, z = field(1), field(0)
    chosen: list[int] = []
    current = list(vectors)
    r = len(current)
    for j in range(dim):
        if r == dim:
            break
        e = tuple(one if i == j else z for i in range(dim))
        trial = current + [e]
        if rank(Matrix.from_columns(trial, dim, field)) > r:
            current = trial
            chosen.append(j)
            r += 1
    return chosen


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if m.ncols != n:
        raise UsageError("inverse of a non-square matrix")
    aug = hstack([m, Matrix.identity(n, m.field)], n, m.field)
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise UsageError("matrix is singular")
    return Matrix(n, n, tuple(tuple(r[n:]) for r in reduced), m.field)
