import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entwine.entwining import (
    EntwinedModule,
    Entwining,
    PreconditionError,
    action_from_lambda,
    build_coring,
    check_coring,
    check_coring_triple,
    check_entwined,
    check_entwined_morphism,
    check_entwining,
    flip_entwining,
    lambda_from_xi,
    lift_comonad,
    lift_monad,
    lifted_entwined,
    lifted_entwined_from_comodule,
    trivial_entwined,
    xi_from_lambda,
)
from entwine.linalg import Matrix
from entwine.monoidal import UNIT, BraidingKind, LinMap, MonoidalCtx, Obj, tensor_map, tensor_obj
from entwine.structures import (
    Bimodule,
    RightComodule,
    base_algebra,
    base_coalgebra,
    check_bimodule,
    check_module,
    random_right_module,
    random_structure,
    regular_module,
)
from support import F2, F3, Q, lin, truncated_poly
from test_structures import group_algebra_f2, group_coalgebra_f2


def flip_f2() -> Entwining:
    return flip_entwining(group_algebra_f2(), group_coalgebra_f2(), MonoidalCtx(F2))


def trivial_coalgebra_entwining(a) -> Entwining:
    return Entwining(a, base_coalgebra(a.field), a.id)


def perturb(f: LinMap, pos: int, delta) -> LinMap:
    e = list(f.mat.entries)
    e[pos % len(e)] += delta
    return LinMap(f.dom, f.cod, Matrix(f.field, f.mat.rows, f.mat.cols, e))


shapes = st.sampled_from([(1, 0), (2, 0), (3, 0), (1, 1), (2, 1)])


@st.composite
def flip_pairs(draw):
    k = draw(st.sampled_from([F2, F3]))
    kind = draw(st.sampled_from(list(BraidingKind)))
    a = random_structure("algebra", draw(shapes), k, draw(st.integers(0, 10**6)))
    c = random_structure("coalgebra", draw(shapes), k, draw(st.integers(0, 10**6)))
    return flip_entwining(a, c, MonoidalCtx(k, kind))


def test_trivial_coalgebra_with_identity():
    assert check_entwining(trivial_coalgebra_entwining(truncated_poly(Q))).passed


@given(flip_pairs())
def test_flip_entwines_any_pair(e):
    rep = check_entwining(e)
    assert rep.passed, rep.render()


def test_negated_flip_entry_fails():
    from entwine.hopf import group_algebra

    h = group_algebra(2, Q)
    e = flip_entwining(h.alg, h.coalg, MonoidalCtx(Q))
    for pos, x in enumerate(e.lam.mat.entries):
        if x:
            broken = Entwining(h.alg, h.coalg, perturb(e.lam, pos, -2))
            assert not check_entwining(broken).passed


def test_sign_twisted_flip_on_dual_numbers_still_entwines():
    # negating only the x*⊗x entry gives the super sign rule, again an entwining
    from entwine.structures import dualize

    a = truncated_poly(Q)
    c = dualize(a)
    e = flip_entwining(a, c, MonoidalCtx(Q))
    assert check_entwining(Entwining(a, c, perturb(e.lam, 15, -2))).passed
    assert not check_entwining(Entwining(a, c, perturb(e.lam, 6, -2))).passed


def test_gate_rejects_broken_algebra():
    a = truncated_poly(Q)
    bad = type(a)(a.carrier, a.unit.scale(2), a.mult)
    rep = check_entwining(Entwining(bad, base_coalgebra(Q), bad.id))
    assert rep.errors and not rep.passed


def test_xi_for_trivial_coalgebra_is_multiplication():
    a = truncated_poly(Q)
    assert xi_from_lambda(trivial_coalgebra_entwining(a)).action == a.mult
    assert lambda_from_xi(a, base_coalgebra(Q), a.mult) == a.id


def test_xi_of_flip_on_basis():
    e = flip_f2()
    xi = xi_from_lambda(e).action
    # ξ(a_i ⊗ c_j ⊗ a_k) = (a_i a_k) ⊗ c_j, with a_i a_k = a_{i+k mod 2}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                col = xi.mat.column(i * 4 + j * 2 + k)
                expected = [0] * 4
                expected[((i + k) % 2) * 2 + j] = 1
                assert list(col) == expected


@given(flip_pairs())
def test_bijection_round_trip_and_bimodule(e):
    xi = xi_from_lambda(e)
    assert check_module(xi).passed
    a, c = e.alg, e.coalg
    bim = Bimodule(xi.carrier, tensor_map(a.mult, c.id), xi.action, a, a)
    assert check_bimodule(bim).passed
    assert lambda_from_xi(a, c, xi.action) == e.lam
    assert action_from_lambda(a, c, lambda_from_xi(a, c, xi.action)) == xi.action


def test_bad_xi_gives_bad_lambda():
    e = flip_f2()
    xi = perturb(xi_from_lambda(e).action, 3, 1)
    assert not check_coring_triple(e.alg, e.coalg, xi).passed
    assert not check_entwining(Entwining(e.alg, e.coalg, lambda_from_xi(e.alg, e.coalg, xi))).passed


def test_coring_of_trivial_coalgebra():
    a = truncated_poly(Q)
    cor = build_coring(trivial_coalgebra_entwining(a))
    assert cor.carrier.carrier.total_dim == 2
    assert cor.counit == a.id
    assert check_coring(cor).passed


def test_flip_coring_f2():
    cor = build_coring(flip_f2())
    assert cor.carrier.carrier.total_dim == 4
    rep = check_coring(cor)
    assert rep.passed, rep.render()


def test_coring_refused_for_non_entwining():
    e = flip_f2()
    with pytest.raises(PreconditionError):
        build_coring(Entwining(e.alg, e.coalg, perturb(e.lam, 1, 1)))


@given(flip_pairs(), st.integers(0, 10**6))
def test_lifted_modules_are_entwined(e, seed):
    rng = random.Random(seed)
    m = random_right_module(e.alg, rng, graded=any(e.alg.carrier.degrees))
    lm = lift_comonad(e, m)
    assert check_module(lm).passed
    assert check_entwined(lifted_entwined(e, m)).passed
    comod = RightComodule(e.coalg.carrier, e.coalg.comult, e.coalg)
    assert check_entwined(lifted_entwined_from_comodule(e, comod)).passed


def test_lift_of_regular_module_is_xi():
    e = flip_f2()
    assert lift_comonad(e, regular_module(e.alg)).action == xi_from_lambda(e).action


def test_lift_over_trivial_coalgebra_is_identity():
    a = truncated_poly(Q)
    e = trivial_coalgebra_entwining(a)
    m = regular_module(a)
    assert lift_comonad(e, m) == m
    comod = RightComodule(UNIT, base_coalgebra(Q).comult, base_coalgebra(Q))
    assert lift_monad(e, comod).carrier == a.carrier


def test_entwined_module_examples():
    e = flip_f2()
    g = lin(UNIT, e.coalg.carrier, F2, [[0], [1]])
    g_a = e.lam @ tensor_map(g, e.alg.id)
    assert check_entwined(EntwinedModule(e.alg.carrier, e.alg.mult, g_a, e)).passed
    base = Entwining(base_algebra(Q), base_coalgebra(Q), base_algebra(Q).id)
    assert check_entwined(trivial_entwined(base)).passed
    zero = EntwinedModule(e.alg.carrier, e.alg.mult, LinMap(e.alg.carrier, tensor_obj(e.alg.carrier, e.coalg.carrier), Matrix.zeros(F2, 4, 2)), e)
    assert not check_entwined(zero)["coaction counit law"].passed


def test_entwined_morphisms():
    e = flip_f2()
    m = lifted_entwined(e, regular_module(e.alg))
    ident = LinMap(m.carrier, m.carrier, Matrix.identity(F2, 4))
    assert check_entwined_morphism(ident, m, m).passed
    swap = LinMap(m.carrier, m.carrier, Matrix.from_rows(F2, [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]))
    # left multiplication by g commutes with right actions and the free coaction
    assert check_entwined_morphism(swap, m, m).passed
    # projecting onto a group-like component is still a morphism
    proj = LinMap(m.carrier, m.carrier, Matrix.from_rows(F2, [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]))
    assert check_entwined_morphism(proj, m, m).passed
    # exchanging the two group-likes is A-linear but not colinear
    flip_c = LinMap(m.carrier, m.carrier, Matrix.from_rows(F2, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]))
    rep = check_entwined_morphism(flip_c, m, m)
    assert rep["module map"].passed and not rep["comodule map"].passed


def test_super_flip_on_odd_pair():
    from entwine.hopf import exterior

    ctx = MonoidalCtx(F3, BraidingKind.SUPER)
    h = exterior(F3, ctx)
    e = flip_entwining(h.alg, h.coalg, ctx)
    assert check_entwining(e).passed
    assert check_coring(build_coring(e)).passed
    assert Obj.of(1, 1) == h.carrier
