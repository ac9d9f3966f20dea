"""Shared fixtures-as-functions and hypothesis strategies."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from entwine.linalg import FieldSpec, Matrix
from entwine.monoidal import UNIT, LinMap, MonoidalCtx, Obj, tensor_obj
from entwine.structures import Algebra, Coalgebra

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)
Q = FieldSpec.rationals()


def mat(k, rows, cols=None):
    return Matrix.from_rows(k, rows, cols)


def lin(dom, cod, k, rows):
    return LinMap(dom, cod, Matrix.from_rows(k, rows, dom.total_dim))


fields = st.sampled_from([F2, F3, F5, Q])


def scalars(k):
    if k.characteristic:
        return st.integers(0, k.characteristic - 1)
    return st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def matrices(draw, k=None, max_rows=4, max_cols=4, rows=None, cols=None):
    k = k or draw(fields)
    r = rows if rows is not None else draw(st.integers(0, max_rows))
    c = cols if cols is not None else draw(st.integers(0, max_cols))
    vals = draw(st.lists(scalars(k), min_size=r * c, max_size=r * c))
    return Matrix(k, r, c, vals)


def truncated_poly(k) -> Algebra:
    """``k[x]/(x²)`` on basis ``1, x``."""
    A = Obj.of(2)
    return Algebra(A, lin(UNIT, A, k, [[1], [0]]), lin(tensor_obj(A, A), A, k, [[1, 0, 0, 0], [0, 1, 1, 0]]))


def naive_grouplike(c: Coalgebra, vals) -> bool:
    """Evaluate ``ε(g) = 1`` and ``δ(g) = g⊗g`` with explicit loops over the structure constants."""
    k = c.field
    n = c.carrier.total_dim
    eps = sum(c.counit.mat[0, j] * vals[j] for j in range(n))
    if k(eps) != k.one:
        return False
    for a in range(n):
        for b in range(n):
            lhs = sum(c.comult.mat[a * n + b, j] * vals[j] for j in range(n))
            if k(lhs) != k(vals[a] * vals[b]):
                return False
    return True


def ctx_of(k, kind="trivial"):
    from entwine.monoidal import BraidingKind

    return MonoidalCtx(k, BraidingKind(kind))


__all__ = ["F2", "F3", "F5", "Q", "Fraction", "mat", "lin", "matrices", "truncated_poly", "naive_grouplike", "ctx_of"]
