"""Exact dense linear algebra over the rationals and prime fields.

Matrices are immutable, dense and row-major.  Entries are stored in canonical
form: :class:`fractions.Fraction` over Q, residues ``0..p-1`` over F_p.
Products and eliminations iterate over nonzero entries only, which keeps the
structure-constant matrices used elsewhere in the package cheap to handle.
"""

from __future__ import annotations

import itertools

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence


class FieldMismatch(ValueError):
    """Raised when two operands live over different fields."""


class ShapeError(ValueError):
    """Raised when matrix shapes are incompatible."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The base field: ``characteristic == 0`` is Q, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``"Q"`` or ``"F<p>"``."""
        text = text.strip()
        if text == "Q":
            return cls(0)
        if text.startswith("F") and text[1:].isdigit():
            return cls.prime(int(text[1:]))
        raise ValueError(f"unknown field {text!r}")

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, ``"a/b"`` string or Scalar) to canonical form."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"scalar over {x.field} used over {self}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x.strip())
        elif isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {x!r} into {self}")
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return x % p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / x
        return pow(x, -1, self.characteristic)

    def format(self, x) -> str:
        if self.characteristic == 0:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)

    def elements(self) -> Iterator[int]:
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return iter(range(self.characteristic))


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; arithmetic refuses to mix fields."""

    value: object
    field: FieldSpec

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def _wrap(self, v) -> Scalar:
        return Scalar(v, self.field)

    def __add__(self, other):
        return self._wrap(self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._other(other))

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inverse(self) -> Scalar:
        return self._wrap(self.field.inv(self.value))

    def __truediv__(self, other):
        return self * self._wrap(self._other(other)).inverse()

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)


def _canonical_row(field: FieldSpec, acc: dict) -> list:
    p = field.characteristic
    if p:
        return sorted((j, v % p) for j, v in acc.items() if v % p)
    return sorted((j, v) for j, v in acc.items() if v)


def _reduce(field: FieldSpec, values: list) -> list:
    p = field.characteristic
    if p:
        return [v % p for v in values]
    return values


class Matrix:
    """Immutable dense matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "rows", "cols", "entries", "_sparse")

    def __init__(self, field: FieldSpec, rows: int, cols: int, entries: Iterable | None = None):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimension")
        if entries is None:
            flat = (field.zero,) * (rows * cols)
        else:
            flat = tuple(field(x) for x in entries)
            if len(flat) != rows * cols:
                raise ShapeError(f"{len(flat)} entries for a {rows}x{cols} matrix")
        self._set(field, rows, cols, flat)

    def _set(self, field, rows, cols, flat):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", flat)
        object.__setattr__(self, "_sparse", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _of(cls, field, rows, cols, flat) -> Matrix:
        # entries already canonical
        m = object.__new__(cls)
        m._set(field, rows, cols, tuple(flat))
        return m

    @classmethod
    def _of_sparse(cls, field, rows, cols, srows: list) -> Matrix:
        # srows[i] lists the canonical nonzero (column, value) pairs of row i in column order
        flat = [field.zero] * (rows * cols)
        for i, row in enumerate(srows):
            base = i * cols
            for j, v in row:
                flat[base + j] = v
        m = cls._of(field, rows, cols, flat)
        object.__setattr__(m, "_sparse", srows)
        return m

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeError("column count of an empty row list is ambiguous")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        return cls(field, len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls._of(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        flat = [field.zero] * (n * n)
        for i in range(n):
            flat[i * n + i] = field.one
        return cls._of(field, n, n, flat)

    @classmethod
    def from_sparse(cls, field: FieldSpec, rows: int, cols: int, items: Iterable) -> Matrix:
        """Build from ``((i, j), value)`` pairs; repeated positions accumulate."""
        acc: list[dict] = [{} for _ in range(rows)]
        for (i, j), v in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            r = acc[i]
            r[j] = r.get(j, 0) + field(v)
        return cls._of_sparse(field, rows, cols, [_canonical_row(field, r) for r in acc])

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def sparse_rows(self) -> list[list[tuple[int, object]]]:
        if self._sparse is None:
            c = self.cols
            e = self.entries
            object.__setattr__(
                self,
                "_sparse",
                [list(itertools.compress(enumerate(e[i * c:(i + 1) * c]), e[i * c:(i + 1) * c])) for i in range(self.rows)],
            )
        return self._sparse

    def nonzero(self) -> Iterator[tuple[int, int, object]]:
        for i, row in enumerate(self.sparse_rows()):
            for j, v in row:
                yield i, j, v

    def is_zero(self) -> bool:
        return not any(self.entries)

    # arithmetic ---------------------------------------------------------

    def _same_field(self, other: Matrix):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field, self.rows, self.cols, self.entries) == (
            other.field, other.rows, other.cols, other.entries
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __add__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        p = self.field.characteristic
        if p:
            flat = [(a + b) % p for a, b in zip(self.entries, other.entries)]
        else:
            flat = [a + b for a, b in zip(self.entries, other.entries)]
        return Matrix._of(self.field, self.rows, self.cols, flat)

    def __neg__(self) -> Matrix:
        return Matrix._of(self.field, self.rows, self.cols, _reduce(self.field, [-a for a in self.entries]))

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} - {other.shape}")
        p = self.field.characteristic
        if p:
            flat = [(a - b) % p for a, b in zip(self.entries, other.entries)]
        else:
            flat = [a - b for a, b in zip(self.entries, other.entries)]
        return Matrix._of(self.field, self.rows, self.cols, flat)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix._of(self.field, self.rows, self.cols, _reduce(self.field, [c * a for a in self.entries]))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"{self.shape} @ {other.shape}")
        brows = other.sparse_rows()
        out = []
        for arow in self.sparse_rows():
            acc: dict = {}
            for k, a in arow:
                for j, b in brows[k]:
                    acc[j] = acc.get(j, 0) + a * b
            out.append(_canonical_row(self.field, acc))
        return Matrix._of_sparse(self.field, self.rows, other.cols, out)

    def transpose(self) -> Matrix:
        r, c = self.rows, self.cols
        if self._sparse is not None:
            cols: list[list] = [[] for _ in range(c)]
            for i, row in enumerate(self._sparse):
                for j, v in row:
                    cols[j].append((i, v))
            return Matrix._of_sparse(self.field, c, r, cols)
        e = self.entries
        return Matrix._of(self.field, c, r, itertools.chain.from_iterable(e[j::c] for j in range(c)))

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix._of(self.field, len(idx), self.cols, [x for i in idx for x in self.row(i)])

    def select_cols(self, idx: Sequence[int]) -> Matrix:
        return self.transpose().select_rows(idx).transpose()

    def hstack(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.rows != other.rows:
            raise ShapeError("hstack row mismatch")
        flat = []
        for i in range(self.rows):
            flat.extend(self.row(i))
            flat.extend(other.row(i))
        return Matrix._of(self.field, self.rows, self.cols + other.cols, flat)

    def vstack(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.cols != other.cols:
            raise ShapeError("vstack column mismatch")
        return Matrix._of(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def format_rows(self) -> list[list[str]]:
        f = self.field.format
        return [[f(x) for x in self.row(i)] for i in range(self.rows)]

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols}, {self.format_rows()})"


# elimination ----------------------------------------------------------------


def _axpy(target: dict, coef, src: dict, p: int):
    """In place ``target -= coef * src`` on sparse rows."""
    for k, v in src.items():
        nv = target.get(k, 0) - coef * v
        if p:
            nv %= p
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def _echelon(field: FieldSpec, rows: Iterable[dict]) -> dict[int, dict]:
    """Fully reduced row basis, keyed by pivot column."""
    p = field.characteristic
    basis: dict[int, dict] = {}
    for r in rows:
        r = dict(r)
        while r:
            c = min(r)
            if c in basis:
                _axpy(r, r[c], basis[c], p)
                continue
            inv = field.inv(r[c])
            r = {k: (v * inv) % p if p else v * inv for k, v in r.items()}
            basis[c] = r
            break
    # back substitution
    for c in sorted(basis, reverse=True):
        pr = basis[c]
        for c2, r2 in basis.items():
            if c2 < c and c in r2:
                _axpy(r2, r2[c], pr, p)
    return basis


class RREF(NamedTuple):
    reduced: Matrix
    pivots: list[int]
    rank: int


def _sparse_input(m: Matrix) -> list[dict]:
    return [dict(r) for r in m.sparse_rows() if r]


def rref(m: Matrix) -> RREF:
    """Reduced row-echelon form; zero rows are placed at the bottom."""
    basis = _echelon(m.field, _sparse_input(m))
    pivots = sorted(basis)
    items = [((i, j), v) for i, c in enumerate(pivots) for j, v in basis[c].items()]
    return RREF(Matrix.from_sparse(m.field, m.rows, m.cols, items), pivots, len(pivots))


def rank(m: Matrix) -> int:
    return len(_echelon(m.field, _sparse_input(m)))


def row_space_basis(m: Matrix) -> Matrix:
    """Rows of the RREF spanning the row space (rank x cols)."""
    r = rref(m)
    return r.reduced.select_rows(range(r.rank))


def column_space_basis(m: Matrix) -> Matrix:
    """Columns spanning the image of ``m`` (rows x rank), in RREF-of-transpose form."""
    return row_space_basis(m.transpose()).transpose()


def kernel_basis(m: Matrix) -> Matrix:
    """Rows form a basis of ``{v : m v = 0}``, one per free column in increasing order."""
    field = m.field
    basis = _echelon(field, _sparse_input(m))
    pivots = set(basis)
    free = [j for j in range(m.cols) if j not in pivots]
    items = []
    for k, f in enumerate(free):
        items.append(((k, f), field.one))
        for c, row in basis.items():
            v = row.get(f)
            if v:
                items.append(((k, c), -v))
    return Matrix.from_sparse(field, len(free), m.cols, items)


def solve(m: Matrix, rhs: Matrix) -> Matrix | None:
    """One solution ``X`` of ``m X = rhs`` with free variables zeroed, or ``None``."""
    m._same_field(rhs)
    if m.rows != rhs.rows:
        raise ShapeError(f"solve: {m.shape} vs rhs {rhs.shape}")
    n = m.cols
    aug = m.hstack(rhs)
    basis = _echelon(m.field, _sparse_input(aug))
    if any(c >= n for c in basis):
        return None
    items = []
    for c, row in basis.items():
        for j, v in row.items():
            if j >= n:
                items.append(((c, j - n), v))
    return Matrix.from_sparse(m.field, n, rhs.cols, items)


def invert(m: Matrix) -> Matrix | None:
    """Two-sided inverse, or ``None`` when ``m`` is singular or not square."""
    if m.rows != m.cols:
        return None
    # m X = I solvable forces m surjective, hence invertible
    return solve(m, Matrix.identity(m.field, m.rows))


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    """``(a⊗b)[i*rb+k, j*cb+l] = a[i,j]*b[k,l]``."""
    a._same_field(b)
    rb, cb = b.rows, b.cols
    rows, cols = a.rows * rb, a.cols * cb
    p = a.field.characteristic
    brows = b.sparse_rows()
    out = []
    for arow in a.sparse_rows():
        for brow in brows:
            if p:
                out.append([(j * cb + l, x * y % p) for j, x in arow for l, y in brow])
            else:
                out.append([(j * cb + l, x * y) for j, x in arow for l, y in brow])
    return Matrix._of_sparse(a.field, rows, cols, out)


@dataclass(frozen=True)
class QuotientPresentation:
    """``ambient / span(relations)`` with a chosen basis of non-pivot coordinates.

    ``projection`` is ``quotient_dim x ambient_dim`` and ``section`` is
    ``ambient_dim x quotient_dim``; the section sends each quotient basis
    vector to the ambient coordinate vector it is named after.
    """

    ambient_dim: int
    relations: Matrix
    projection: Matrix
    section: Matrix
    basis: tuple[int, ...]
    relation_basis: Matrix

    @property
    def quotient_dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> FieldSpec:
        return self.projection.field


def quotient_by(relations: Matrix, ambient_dim: int | None = None) -> QuotientPresentation:
    if ambient_dim is None:
        ambient_dim = relations.cols
    if relations.cols != ambient_dim:
        raise ShapeError(f"relations have {relations.cols} columns, ambient is {ambient_dim}")
    field = relations.field
    basis = _echelon(field, _sparse_input(relations))
    pivots = sorted(basis)
    pivot_set = set(pivots)
    free = [j for j in range(ambient_dim) if j not in pivot_set]
    slot = {j: k for k, j in enumerate(free)}
    proj = [((k, j), field.one) for j, k in slot.items()]
    for c in pivots:
        for j, v in basis[c].items():
            if j != c:
                proj.append(((slot[j], c), -v))
    projection = Matrix.from_sparse(field, len(free), ambient_dim, proj)
    section = Matrix.from_sparse(field, ambient_dim, len(free), [((j, k), field.one) for j, k in slot.items()])
    rel_basis = Matrix.from_sparse(
        field, len(pivots), ambient_dim, [((i, j), v) for i, c in enumerate(pivots) for j, v in basis[c].items()]
    )
    return QuotientPresentation(ambient_dim, relations, projection, section, tuple(free), rel_basis)
