"""Z/2-graded finite-dimensional spaces with a symmetric braiding.

The category is strict: the basis vector ``(i, j)`` of ``X⊗Y`` sits at flat
index ``i*dim(Y) + j`` and carries degree ``deg(i) + deg(j) mod 2``.  With this
fixed indexing ``(X⊗Y)⊗Z`` and ``X⊗(Y⊗Z)`` are literally the same object and
the associator is the identity matrix.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .linalg import FieldMismatch, FieldSpec, Matrix, ShapeError, kronecker
from .report import Report, Witness


@dataclass(frozen=True)
class Obj:
    """A graded space described by the degree of each basis vector.

    Objects built with :meth:`of` list the even basis vectors first; tensor
    products keep the lexicographic pair order, so their degrees interleave.
    """

    degrees: tuple[int, ...]

    def __post_init__(self):
        if any(d not in (0, 1) for d in self.degrees):
            raise ValueError(f"degrees must be 0 or 1, got {self.degrees}")

    @classmethod
    def of(cls, even: int, odd: int = 0) -> Obj:
        return cls((0,) * even + (1,) * odd)

    @property
    def dims(self) -> tuple[int, int]:
        odd = sum(self.degrees)
        return len(self.degrees) - odd, odd

    @property
    def total_dim(self) -> int:
        return len(self.degrees)

    def __str__(self) -> str:
        return "({}|{})".format(*self.dims)


UNIT = Obj((0,))


class BraidingKind(enum.Enum):
    TRIVIAL = "trivial"
    SUPER = "super"


@dataclass(frozen=True)
class MonoidalCtx:
    field: FieldSpec
    braiding: BraidingKind = BraidingKind.TRIVIAL


@dataclass(frozen=True, eq=False)
class LinMap:
    """A degree-preserving linear map; ``mat`` is ``cod.total_dim x dom.total_dim``."""

    dom: Obj
    cod: Obj
    mat: Matrix

    def __post_init__(self):
        if self.mat.shape != (self.cod.total_dim, self.dom.total_dim):
            raise ShapeError(
                f"matrix {self.mat.shape} does not fit {self.dom} -> {self.cod}"
            )
        dd, cd = self.dom.degrees, self.cod.degrees
        for i, j, _ in self.mat.nonzero():
            if dd[j] != cd[i]:
                raise ValueError(f"entry ({i},{j}) mixes degrees {dd[j]} and {cd[i]}")

    @classmethod
    def _trusted(cls, dom: Obj, cod: Obj, mat: Matrix) -> LinMap:
        # compositions and tensors of degree-preserving maps need no re-check
        f = object.__new__(cls)
        object.__setattr__(f, "dom", dom)
        object.__setattr__(f, "cod", cod)
        object.__setattr__(f, "mat", mat)
        return f

    @property
    def field(self) -> FieldSpec:
        return self.mat.field

    def __matmul__(self, other: LinMap) -> LinMap:
        """``f @ g`` is the composite ``f∘g``."""
        if other.cod != self.dom:
            raise ShapeError(f"cannot compose {self.dom}->{self.cod} after {other.dom}->{other.cod}")
        return LinMap._trusted(other.dom, self.cod, self.mat @ other.mat)

    def _check_parallel(self, other: LinMap):
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise ShapeError("maps are not parallel")

    def __add__(self, other: LinMap) -> LinMap:
        self._check_parallel(other)
        return LinMap._trusted(self.dom, self.cod, self.mat + other.mat)

    def __sub__(self, other: LinMap) -> LinMap:
        self._check_parallel(other)
        return LinMap._trusted(self.dom, self.cod, self.mat - other.mat)

    def __neg__(self) -> LinMap:
        return LinMap._trusted(self.dom, self.cod, -self.mat)

    def scale(self, c) -> LinMap:
        return LinMap._trusted(self.dom, self.cod, self.mat.scale(c))

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.mat == other.mat

    def __hash__(self):
        return hash((self.dom, self.cod, self.mat))

    def transpose(self) -> LinMap:
        return LinMap._trusted(self.cod, self.dom, self.mat.transpose())

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def __repr__(self):
        return f"LinMap({self.dom} -> {self.cod}, {self.mat.format_rows()})"


def identity(obj: Obj, field: FieldSpec) -> LinMap:
    return LinMap._trusted(obj, obj, Matrix.identity(field, obj.total_dim))


def zero_map(dom: Obj, cod: Obj, field: FieldSpec) -> LinMap:
    return LinMap._trusted(dom, cod, Matrix.zeros(field, cod.total_dim, dom.total_dim))


def vector(obj: Obj, field: FieldSpec, values: Sequence) -> LinMap:
    """The map ``I -> obj`` picking out ``values`` (which must be even)."""
    return LinMap(UNIT, obj, Matrix(field, obj.total_dim, 1, values))


def basis_vector(obj: Obj, field: FieldSpec, i: int) -> LinMap:
    vals = [0] * obj.total_dim
    vals[i] = 1
    return LinMap(Obj((obj.degrees[i],)), obj, Matrix(field, obj.total_dim, 1, vals))


def tensor_obj(*objs: Obj) -> Obj:
    degrees: tuple[int, ...] = (0,)
    for o in objs:
        degrees = tuple((a + b) % 2 for a in degrees for b in o.degrees)
    return Obj(degrees)


def tensor_map(*maps: LinMap) -> LinMap:
    if not maps:
        raise ValueError("tensor_map needs at least one map")
    out = maps[0]
    for g in maps[1:]:
        if g.field != out.field:
            raise FieldMismatch(f"{out.field} vs {g.field}")
        out = LinMap._trusted(
            tensor_obj(out.dom, g.dom), tensor_obj(out.cod, g.cod), kronecker(out.mat, g.mat)
        )
    return out


def braiding(x: Obj, y: Obj, ctx: MonoidalCtx) -> LinMap:
    """``σ_{X,Y}: X⊗Y -> Y⊗X``; the super kind adds the Koszul sign."""
    field = ctx.field
    sign = ctx.braiding is BraidingKind.SUPER
    dx, dy = x.total_dim, y.total_dim
    items = []
    for i, di in enumerate(x.degrees):
        for j, dj in enumerate(y.degrees):
            v = -1 if sign and di and dj else 1
            items.append(((j * dx + i, i * dy + j), v))
    return LinMap._trusted(
        tensor_obj(x, y), tensor_obj(y, x), Matrix.from_sparse(field, dx * dy, dx * dy, items)
    )


def first_difference(lhs: LinMap, rhs: LinMap) -> Witness | None:
    """``None`` if the maps agree, else the first domain basis index where they differ."""
    if lhs.mat.shape != rhs.mat.shape:
        raise ShapeError(f"compared maps have shapes {lhs.mat.shape} and {rhs.mat.shape}")
    a, b = lhs.mat, rhs.mat
    if a.entries == b.entries:
        return None
    for j in range(a.cols):
        ca, cb = a.column(j), b.column(j)
        if ca != cb:
            fmt = a.field.format
            return Witness(j, tuple(fmt(v) for v in ca), tuple(fmt(v) for v in cb))
    return None


def random_scalar(field: FieldSpec, rng: random.Random):
    if field.characteristic:
        return rng.randrange(field.characteristic)
    return field(rng.randint(-3, 3))


def random_map(dom: Obj, cod: Obj, field: FieldSpec, rng: random.Random) -> LinMap:
    """A random degree-preserving map."""
    items = []
    for i, di in enumerate(cod.degrees):
        for j, dj in enumerate(dom.degrees):
            if di == dj:
                items.append(((i, j), random_scalar(field, rng)))
    return LinMap._trusted(dom, cod, Matrix.from_sparse(field, cod.total_dim, dom.total_dim, items))


def check_braiding(
    ctx: MonoidalCtx,
    sample: Iterable[Obj],
    seed: int = 0,
    braid=None,
) -> Report:
    """Naturality, both hexagons and symmetry of the braiding on ``sample``.

    ``braid(x, y, ctx)`` may replace :func:`braiding`, which is how the
    mutation tests feed in deliberately broken swaps.
    """
    braid = braid or braiding
    sample = list(sample)
    rng = random.Random(seed)
    field = ctx.field
    rep = Report(f"braiding {ctx.braiding.value} over {field}")

    def first(pairs):
        for lhs, rhs in pairs:
            w = first_difference(lhs, rhs)
            if w is not None:
                return w
        return None

    def nat():
        for x in sample:
            for y in sample:
                for x2 in sample:
                    for y2 in sample:
                        f = random_map(x, x2, field, rng)
                        g = random_map(y, y2, field, rng)
                        yield braid(x2, y2, ctx) @ tensor_map(f, g), tensor_map(g, f) @ braid(x, y, ctx)

    def hex1():
        for x in sample:
            for y in sample:
                for z in sample:
                    lhs = braid(x, tensor_obj(y, z), ctx)
                    rhs = tensor_map(identity(y, field), braid(x, z, ctx)) @ tensor_map(
                        braid(x, y, ctx), identity(z, field)
                    )
                    yield lhs, rhs

    def hex2():
        for x in sample:
            for y in sample:
                for z in sample:
                    lhs = braid(tensor_obj(x, y), z, ctx)
                    rhs = tensor_map(braid(x, z, ctx), identity(y, field)) @ tensor_map(
                        identity(x, field), braid(y, z, ctx)
                    )
                    yield lhs, rhs

    def sym():
        for x in sample:
            for y in sample:
                yield braid(y, x, ctx) @ braid(x, y, ctx), identity(tensor_obj(x, y), field)

    for name, anchor, gen in (
        ("naturality", "braiding natural in both variables", nat),
        ("hexagon", "braiding past a tensor product on the right", hex1),
        ("hexagon (mirror)", "braiding past a tensor product on the left", hex2),
        ("symmetry", "braiding squares to the identity", sym),
    ):
        w = first(gen())
        rep.add(name, anchor, w is None, w)
    return rep
