"""Algebras, coalgebras and their (co)modules as structure-constant bundles.

Every checker compares full composite matrices and returns a
:class:`~entwine.report.Report`; shape problems are recorded as structural
errors rather than axiom failures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .linalg import FieldMismatch, FieldSpec, Matrix, QuotientPresentation, ShapeError, invert, quotient_by
from .monoidal import (
    UNIT,
    LinMap,
    Obj,
    identity,
    random_map,
    random_scalar,
    tensor_map,
    tensor_obj,
)
from .report import Report


class GiveUp(RuntimeError):
    """The random generator exhausted its attempt budget."""


@dataclass(frozen=True)
class Algebra:
    carrier: Obj
    unit: LinMap
    mult: LinMap

    @property
    def field(self) -> FieldSpec:
        return self.mult.field

    @property
    def id(self) -> LinMap:
        return identity(self.carrier, self.field)


@dataclass(frozen=True)
class Coalgebra:
    carrier: Obj
    counit: LinMap
    comult: LinMap

    @property
    def field(self) -> FieldSpec:
        return self.comult.field

    @property
    def id(self) -> LinMap:
        return identity(self.carrier, self.field)


@dataclass(frozen=True)
class RightModule:
    carrier: Obj
    action: LinMap
    over: Algebra


@dataclass(frozen=True)
class LeftModule:
    carrier: Obj
    action: LinMap
    over: Algebra


@dataclass(frozen=True)
class RightComodule:
    carrier: Obj
    coaction: LinMap
    over: Coalgebra


@dataclass(frozen=True)
class Bimodule:
    carrier: Obj
    left_action: LinMap
    right_action: LinMap
    left_over: Algebra
    right_over: Algebra

    @property
    def left(self) -> LeftModule:
        return LeftModule(self.carrier, self.left_action, self.left_over)

    @property
    def right(self) -> RightModule:
        return RightModule(self.carrier, self.right_action, self.right_over)


def base_algebra(field: FieldSpec) -> Algebra:
    return Algebra(UNIT, identity(UNIT, field), identity(UNIT, field))


def base_coalgebra(field: FieldSpec) -> Coalgebra:
    return Coalgebra(UNIT, identity(UNIT, field), identity(UNIT, field))


def regular_module(a: Algebra) -> RightModule:
    return RightModule(a.carrier, a.mult, a)


def idm(obj: Obj, field: FieldSpec) -> LinMap:
    return identity(obj, field)


# checkers --------------------------------------------------------------------


def _shape(rep: Report, label: str, f: LinMap, dom: Obj, cod: Obj) -> bool:
    if f.dom != dom or f.cod != cod:
        rep.error(f"{label}: expected {dom}->{cod}, got {f.dom}->{f.cod}")
        return False
    return True


class _Guard:
    """Turn shape and field errors inside a checker into structural errors."""

    def __init__(self, rep: Report):
        self.rep = rep

    def __enter__(self):
        return self

    def __exit__(self, et, ev, tb):
        if et is not None and issubclass(et, (ShapeError, FieldMismatch)):
            self.rep.error(str(ev))
            return True
        return False


def check_algebra(a: Algebra, title: str = "algebra") -> Report:
    rep = Report(title)
    A, k = a.carrier, a.field
    ok = _shape(rep, "unit", a.unit, UNIT, A) & _shape(rep, "mult", a.mult, tensor_obj(A, A), A)
    if not ok:
        return rep
    with _Guard(rep):
        m, e, i = a.mult, a.unit, a.id
        rep.compare("associativity", "m∘(m⊗A) = m∘(A⊗m)", m @ tensor_map(m, i), m @ tensor_map(i, m))
        rep.compare("unit law (left)", "m∘(e⊗A) = id", m @ tensor_map(e, i), i)
        rep.compare("unit law (right)", "m∘(A⊗e) = id", m @ tensor_map(i, e), i)
    return rep


def check_coalgebra(c: Coalgebra, title: str = "coalgebra") -> Report:
    rep = Report(title)
    C = c.carrier
    ok = _shape(rep, "counit", c.counit, C, UNIT) & _shape(rep, "comult", c.comult, C, tensor_obj(C, C))
    if not ok:
        return rep
    with _Guard(rep):
        d, eps, i = c.comult, c.counit, c.id
        rep.compare("coassociativity", "(δ⊗C)∘δ = (C⊗δ)∘δ", tensor_map(d, i) @ d, tensor_map(i, d) @ d)
        rep.compare("counit law (left)", "(ε⊗C)∘δ = id", tensor_map(eps, i) @ d, i)
        rep.compare("counit law (right)", "(C⊗ε)∘δ = id", tensor_map(i, eps) @ d, i)
    return rep


def check_module(m: RightModule, title: str = "right module") -> Report:
    rep = Report(title)
    a = m.over
    M, A, k = m.carrier, a.carrier, a.field
    if not _shape(rep, "action", m.action, tensor_obj(M, A), M):
        return rep
    with _Guard(rep):
        xi, iM, iA = m.action, idm(M, k), a.id
        rep.compare(
            "action associativity", "ξ∘(ξ⊗A) = ξ∘(M⊗m)", xi @ tensor_map(xi, iA), xi @ tensor_map(iM, a.mult)
        )
        rep.compare("action unit law", "ξ∘(M⊗e) = id", xi @ tensor_map(iM, a.unit), iM)
    return rep


def check_left_module(m: LeftModule, title: str = "left module") -> Report:
    rep = Report(title)
    a = m.over
    M, A, k = m.carrier, a.carrier, a.field
    if not _shape(rep, "action", m.action, tensor_obj(A, M), M):
        return rep
    with _Guard(rep):
        lam, iM, iA = m.action, idm(M, k), a.id
        rep.compare(
            "action associativity", "λ∘(A⊗λ) = λ∘(m⊗M)", lam @ tensor_map(iA, lam), lam @ tensor_map(a.mult, iM)
        )
        rep.compare("action unit law", "λ∘(e⊗M) = id", lam @ tensor_map(a.unit, iM), iM)
    return rep


def check_comodule(m: RightComodule, title: str = "right comodule") -> Report:
    rep = Report(title)
    c = m.over
    M, C, k = m.carrier, c.carrier, c.field
    if not _shape(rep, "coaction", m.coaction, M, tensor_obj(M, C)):
        return rep
    with _Guard(rep):
        nu, iM, iC = m.coaction, idm(M, k), c.id
        rep.compare(
            "coaction coassociativity",
            "(ν⊗C)∘ν = (M⊗δ)∘ν",
            tensor_map(nu, iC) @ nu,
            tensor_map(iM, c.comult) @ nu,
        )
        rep.compare("coaction counit law", "(M⊗ε)∘ν = id", tensor_map(iM, c.counit) @ nu, iM)
    return rep


def check_bimodule(b: Bimodule, title: str = "bimodule") -> Report:
    rep = Report(title)
    rep.absorb(check_left_module(b.left), "left ")
    rep.absorb(check_module(b.right), "right ")
    if rep.errors:
        return rep
    with _Guard(rep):
        M, k = b.carrier, b.left_over.field
        iA, iB = b.left_over.id, b.right_over.id
        rep.compare(
            "middle compatibility",
            "ρ∘(λ⊗B) = λ∘(A⊗ρ)",
            b.right_action @ tensor_map(b.left_action, iB),
            b.left_action @ tensor_map(iA, b.right_action),
        )
    return rep


def check_algebra_morphism(f: LinMap, a: Algebra, b: Algebra, title: str = "algebra morphism") -> Report:
    rep = Report(title)
    if not _shape(rep, "map", f, a.carrier, b.carrier):
        return rep
    with _Guard(rep):
        rep.compare("preserves unit", "f∘e = e'", f @ a.unit, b.unit)
        rep.compare("preserves product", "f∘m = m'∘(f⊗f)", f @ a.mult, b.mult @ tensor_map(f, f))
    return rep


def dualize(s: Algebra | Coalgebra) -> Algebra | Coalgebra:
    """Transpose structure constants: coalgebra to algebra and back."""
    if isinstance(s, Coalgebra):
        return Algebra(s.carrier, s.counit.transpose(), s.comult.transpose())
    return Coalgebra(s.carrier, s.unit.transpose(), s.mult.transpose())


# random instances ------------------------------------------------------------


def _as_obj(dims) -> Obj:
    if isinstance(dims, Obj):
        return dims
    if isinstance(dims, int):
        return Obj.of(dims)
    return Obj.of(*dims)


def random_invertible(obj: Obj, field: FieldSpec, rng: random.Random, tries: int = 200) -> tuple[LinMap, LinMap]:
    for _ in range(tries):
        p = random_map(obj, obj, field, rng)
        pinv = invert(p.mat)
        if pinv is not None:
            return p, LinMap(obj, obj, pinv)
    raise GiveUp("no invertible basis change found")


def transport_algebra(a: Algebra, p: LinMap, pinv: LinMap) -> Algebra:
    """The algebra structure moved along the basis change ``p``."""
    return Algebra(a.carrier, pinv @ a.unit, pinv @ a.mult @ tensor_map(p, p))


def random_structure(kind: str, dims, field: FieldSpec, seed: int, budget: int = 5000) -> Algebra | Coalgebra:
    """A seeded random algebra or coalgebra that passes its own checker.

    Candidates fix the unit on the first (even) basis vector, draw the
    remaining products at random and are rejected unless associative; the
    survivor is moved by a random basis change.  Coalgebras are duals of such
    algebras.  Only prime fields are supported.
    """
    if kind not in ("algebra", "coalgebra"):
        raise ValueError(f"unknown kind {kind!r}")
    if not field.is_finite:
        raise ValueError("random structures are drawn over prime fields only")
    obj = _as_obj(dims)
    if obj.total_dim > 4:
        raise ValueError("random structures are limited to total dimension 4")
    if obj.total_dim == 0 or obj.degrees[0] != 0:
        raise ValueError("an algebra needs an even unit vector")
    if obj.total_dim == 1:
        a = base_algebra(field)
        return a if kind == "algebra" else dualize(a)
    rng = random.Random(seed)
    n = obj.total_dim
    deg = obj.degrees
    nn = n * n
    for _ in range(budget):
        # e_0 is a two-sided unit
        items = [((j, j), 1) for j in range(n)] + [((j, j * n), 1) for j in range(1, n)]
        for i in range(1, n):
            for j in range(1, n):
                d = (deg[i] + deg[j]) % 2
                for k in range(n):
                    if deg[k] == d:
                        items.append(((k, i * n + j), random_scalar(field, rng)))
        mult = LinMap(tensor_obj(obj, obj), obj, Matrix.from_sparse(field, n, nn, items))
        unit = LinMap(UNIT, obj, Matrix.from_sparse(field, n, 1, [((0, 0), 1)]))
        cand = Algebra(obj, unit, mult)
        if not check_algebra(cand).passed:
            continue
        p, pinv = random_invertible(obj, field, rng)
        alg = transport_algebra(cand, p, pinv)
        if not check_algebra(alg).passed:  # pragma: no cover - transport preserves axioms
            raise AssertionError("basis change broke the algebra axioms")
        return alg if kind == "algebra" else dualize(alg)
    raise GiveUp(f"no {kind} of shape {obj} found in {budget} attempts")


# quotients and balanced tensor products ---------------------------------------


@dataclass(frozen=True)
class Quotient:
    """A graded quotient ``ambient / relations`` with its projection and section."""

    ambient: Obj
    obj: Obj
    presentation: QuotientPresentation

    @property
    def field(self) -> FieldSpec:
        return self.presentation.field

    @property
    def projection(self) -> LinMap:
        return LinMap._trusted(self.ambient, self.obj, self.presentation.projection)

    @property
    def section(self) -> LinMap:
        return LinMap._trusted(self.obj, self.ambient, self.presentation.section)

    def relation_map(self) -> LinMap | None:
        """Inclusion of a basis of the relation space, or ``None`` if it is zero."""
        rb = self.presentation.relation_basis
        if rb.rows == 0:
            return None
        degs = self.ambient.degrees
        rel_obj = Obj(tuple(_row_degree({degs[j] for j, _ in row}) for row in rb.sparse_rows()))
        return LinMap._trusted(rel_obj, self.ambient, rb.transpose())

    def kills_relations(self, f: LinMap) -> bool:
        k = self.relation_map()
        return k is None or (f @ k).is_zero()

    def descend(self, f: LinMap) -> LinMap | None:
        """The map induced on the quotient by ``f``, or ``None`` if ``f`` is not well defined."""
        if f.dom != self.ambient:
            raise ShapeError("descend: map does not start at the ambient space")
        if not self.kills_relations(f):
            return None
        return f @ self.section

    def descend_in(self, f: LinMap, left: Obj | None = None, right: Obj | None = None) -> LinMap | None:
        """Like :meth:`descend` for ``f`` defined on ``left⊗ambient⊗right``."""
        k = self.field

        def wrap(g: LinMap) -> LinMap:
            parts = ([idm(left, k)] if left is not None else []) + [g] + ([idm(right, k)] if right is not None else [])
            return tensor_map(*parts)

        rel = self.relation_map()
        if rel is not None and not (f @ wrap(rel)).is_zero():
            return None
        return f @ wrap(self.section)


def _row_degree(degs: set) -> int:
    if len(degs) > 1:
        raise ValueError("inhomogeneous relation vector")
    return degs.pop() if degs else 0


def _vector_degree(obj: Obj, values) -> int:
    return _row_degree({obj.degrees[j] for j, v in enumerate(values) if v})


def quotient(ambient: Obj, relations: Matrix) -> Quotient:
    """Quotient of ``ambient`` by the span of the rows of ``relations`` (homogeneous)."""
    qp = quotient_by(relations, ambient.total_dim)
    obj = Obj(tuple(ambient.degrees[j] for j in qp.basis))
    # validate degree preservation of the projection once
    LinMap(ambient, obj, qp.projection)
    return Quotient(ambient, obj, qp)


def relations_of(f: LinMap, g: LinMap) -> Matrix:
    """Rows spanning the image of ``f - g`` (the coequalizer relations)."""
    k = f.field
    items = [((j, i), v) for i, j, v in f.mat.nonzero()]
    items += [((j, i), -v) for i, j, v in g.mat.nonzero()]
    return Matrix.from_sparse(k, f.mat.cols, f.mat.rows, items)


def balanced_tensor(x: Obj, right_action: LinMap, y: Obj, left_action: LinMap, over: Algebra) -> Quotient:
    """``X⊗_A Y`` as the quotient of ``X⊗Y`` by ``(ξ⊗Y - X⊗λ)(X⊗A⊗Y)``."""
    k = over.field
    f = tensor_map(right_action, idm(y, k))
    g = tensor_map(idm(x, k), left_action)
    return quotient(tensor_obj(x, y), relations_of(f, g))


def submodule_span(m: RightModule, vectors: Matrix) -> Matrix:
    """Rows spanning the submodule generated by the rows of ``vectors``."""
    from .linalg import row_space_basis

    A = m.over.carrier
    k = m.over.field
    rows = []
    for i in range(vectors.rows):
        v = vectors.row(i)
        dv = _vector_degree(m.carrier, v)
        vmap = LinMap(Obj((dv,)), m.carrier, Matrix(k, m.carrier.total_dim, 1, v))
        img = m.action @ tensor_map(vmap, m.over.id)  # (dv)⊗A -> M
        rows.extend(img.mat.transpose().to_rows())
    if not rows:
        return Matrix.zeros(k, 0, m.carrier.total_dim)
    return row_space_basis(Matrix.from_rows(k, rows, m.carrier.total_dim))


def quotient_module(m: RightModule, q: Quotient) -> RightModule:
    A = m.over
    rel = q.relation_map()
    if rel is not None and not (q.projection @ m.action @ tensor_map(rel, A.id)).is_zero():
        raise ValueError("relations do not span a submodule")
    return RightModule(q.obj, q.projection @ m.action @ tensor_map(q.section, A.id), A)


def free_module(v: Obj, a: Algebra) -> RightModule:
    return RightModule(tensor_obj(v, a.carrier), tensor_map(idm(v, a.field), a.mult), a)


def random_object(rng: random.Random, max_dim: int, graded: bool) -> Obj:
    n = rng.randint(1, max_dim)
    odd = rng.randint(0, n) if graded else 0
    return Obj.of(n - odd, odd)


def random_homogeneous_vector(obj: Obj, field: FieldSpec, rng: random.Random) -> list:
    d = rng.choice(sorted(set(obj.degrees)))
    vals = [random_scalar(field, rng) if obj.degrees[j] == d else 0 for j in range(obj.total_dim)]
    if not any(vals):
        vals[obj.degrees.index(d)] = 1
    return vals


def random_right_module(a: Algebra, rng: random.Random, max_rank: int = 2, graded: bool = False) -> RightModule:
    """A free module ``V⊗A`` or its quotient by a random cyclic submodule."""
    k = a.field
    v = random_object(rng, max_rank, graded)
    m = free_module(v, a)
    if rng.random() < 0.5:
        return m
    vec = Matrix(k, 1, m.carrier.total_dim, random_homogeneous_vector(m.carrier, k, rng))
    sub = submodule_span(m, vec)
    return quotient_module(m, quotient(m.carrier, sub))
