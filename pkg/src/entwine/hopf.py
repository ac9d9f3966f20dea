"""Bialgebras, Hopf algebras and comodule algebras in the braided category.

A right ``H``-comodule algebra ``(A, α)`` entwines ``A`` with the coalgebra
of ``H`` through ``λ = (A⊗m_H)∘(σ_{H,A}⊗H)∘(H⊗α)``; its entwined modules are
exactly the relative Hopf modules.  For ``H`` over itself the canonical map
is ``x = (m⊗H)∘(H⊗δ)`` with inverse ``y = (m⊗H)∘(H⊗S⊗H)∘(H⊗δ)``, which makes
``V ↦ V⊗H`` an equivalence; :func:`fundamental_theorem_battery` checks all of
this on concrete instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import FieldSpec, Matrix, rank
from .monoidal import (
    UNIT,
    BraidingKind,
    LinMap,
    MonoidalCtx,
    Obj,
    braiding,
    identity,
    tensor_map,
    tensor_obj,
)
from .report import Report
from .entwining import (
    EntwinedModule,
    Entwining,
    _gate,
    lifted_entwined,
)
from .galois import (
    GroupLike,
    _factor,
    _is_iso,
    canonical_map,
    coinvariant_algebra,
    coinvariants,
    counit_comparison,
    verify_grouplike,
)
from .structures import (
    Algebra,
    Coalgebra,
    RightComodule,
    RightModule,
    _Guard,
    check_algebra,
    check_coalgebra,
    check_comodule,
    check_module,
    idm,
    random_object,
    random_right_module,
)


@dataclass(frozen=True)
class Bialgebra:
    alg: Algebra
    coalg: Coalgebra

    @property
    def carrier(self) -> Obj:
        return self.alg.carrier

    @property
    def field(self) -> FieldSpec:
        return self.alg.field


@dataclass(frozen=True)
class HopfAlgebra:
    bialg: Bialgebra
    antipode: LinMap

    @property
    def alg(self) -> Algebra:
        return self.bialg.alg

    @property
    def coalg(self) -> Coalgebra:
        return self.bialg.coalg

    @property
    def carrier(self) -> Obj:
        return self.bialg.carrier

    @property
    def field(self) -> FieldSpec:
        return self.bialg.field


@dataclass(frozen=True)
class ComoduleAlgebra:
    alg: Algebra
    coaction: LinMap
    over: Bialgebra

    @property
    def comodule(self) -> RightComodule:
        return RightComodule(self.alg.carrier, self.coaction, self.over.coalg)


def tensor_algebra(a: Algebra, b: Algebra, ctx: MonoidalCtx) -> Algebra:
    """``A⊗B`` with product ``(m_A⊗m_B)∘(A⊗σ_{B,A}⊗B)``."""
    mult = tensor_map(a.mult, b.mult) @ tensor_map(a.id, braiding(b.carrier, a.carrier, ctx), b.id)
    return Algebra(tensor_obj(a.carrier, b.carrier), tensor_map(a.unit, b.unit), mult)


def _bialgebra_axioms(rep: Report, b: Bialgebra, ctx: MonoidalCtx):
    a, c = b.alg, b.coalg
    hh = tensor_algebra(a, a, ctx)
    rep.compare(
        "comultiplication multiplicative",
        "δ∘m = m_{H⊗H}∘(δ⊗δ)",
        c.comult @ a.mult,
        hh.mult @ tensor_map(c.comult, c.comult),
    )
    rep.compare("comultiplication unital", "δ∘e = e⊗e", c.comult @ a.unit, tensor_map(a.unit, a.unit))
    rep.compare("counit multiplicative", "ε∘m = ε⊗ε", c.counit @ a.mult, tensor_map(c.counit, c.counit))
    rep.compare("counit unital", "ε∘e = id_I", c.counit @ a.unit, identity(UNIT, a.field))


def _gated(title: str, *pre: Report) -> Report:
    rep = Report(title)
    for p in pre:
        if not p.passed:
            rep.error(f"{p.title} fails its axioms")
            rep.section(p)
    return rep


def check_bialgebra(b: Bialgebra, ctx: MonoidalCtx) -> Report:
    rep = _gated("bialgebra", check_algebra(b.alg), check_coalgebra(b.coalg))
    if rep.errors:
        return rep
    if b.alg.carrier != b.coalg.carrier:
        rep.error("algebra and coalgebra live on different carriers")
        return rep
    with _Guard(rep):
        _bialgebra_axioms(rep, b, ctx)
    return rep


def check_hopf(h: HopfAlgebra, ctx: MonoidalCtx) -> Report:
    rep = check_bialgebra(h.bialg, ctx)
    rep.title = "Hopf algebra"
    if rep.errors:
        return rep
    a, c, S = h.alg, h.coalg, h.antipode
    H = h.carrier
    if S.dom != H or S.cod != H:
        rep.error(f"antipode must be an endomorphism of {H}")
        return rep
    with _Guard(rep):
        left = a.mult @ tensor_map(S, a.id) @ c.comult
        right = a.mult @ tensor_map(a.id, S) @ c.comult
        ee = a.unit @ c.counit
        rep.compare("antipode (left)", "m∘(S⊗H)∘δ = e∘ε", left, ee)
        rep.compare("antipode (right)", "m∘(H⊗S)∘δ = e∘ε", right, ee)
        rep.compare("antipode sides agree", "m∘(H⊗S)∘δ = m∘(S⊗H)∘δ", right, left)
    return rep


# catalog ---------------------------------------------------------------------


def _structure_map(k: FieldSpec, dom: Obj, cod: Obj, images: dict[int, dict[int, int]]) -> LinMap:
    """Map given by ``images[column] = {row: coefficient}``."""
    items = [((r, col), v) for col, img in images.items() for r, v in img.items()]
    return LinMap(dom, cod, Matrix.from_sparse(k, cod.total_dim, dom.total_dim, items))


def _from_tables(k, degrees, unit, mult, comult, counit, antipode) -> HopfAlgebra:
    H = Obj(tuple(degrees))
    n = H.total_dim
    HH = tensor_obj(H, H)
    m = _structure_map(k, HH, H, {i * n + j: img for (i, j), img in mult.items()})
    d = _structure_map(k, H, HH, {i: {a * n + b: v for (a, b), v in img.items()} for i, img in comult.items()})
    e = _structure_map(k, UNIT, H, {0: {unit: 1}})
    eps = _structure_map(k, H, UNIT, {i: {0: v} for i, v in counit.items()})
    s = _structure_map(k, H, H, antipode)
    return HopfAlgebra(Bialgebra(Algebra(H, e, m), Coalgebra(H, eps, d)), s)


def group_algebra(n: int, k: FieldSpec) -> HopfAlgebra:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return _from_tables(
        k,
        [0] * n,
        0,
        {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)},
        {i: {(i, i): 1} for i in range(n)},
        {i: 1 for i in range(n)},
        {i: {(-i) % n: 1} for i in range(n)},
    )


def sweedler4(k: FieldSpec) -> HopfAlgebra:
    """Basis ``1, g, x, gx`` (indices 0..3)."""
    if k.characteristic == 2:
        raise ValueError("Sweedler's algebra needs characteristic other than 2")
    idx = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}
    mult = {}
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            # g^a x^b · g^c x^d = (-1)^{bc} g^{a+c} x^{b+d}
            mult[(i, j)] = {} if b + d > 1 else {idx[((a + c) % 2, b + d)]: (-1) ** (b * c)}
    comult = {
        0: {(0, 0): 1},
        1: {(1, 1): 1},
        2: {(2, 0): 1, (1, 2): 1},
        3: {(3, 1): 1, (0, 3): 1},
    }
    return _from_tables(
        k,
        [0, 0, 0, 0],
        0,
        mult,
        comult,
        {0: 1, 1: 1},
        {0: {0: 1}, 1: {1: 1}, 2: {3: -1}, 3: {2: 1}},
    )


def exterior(k: FieldSpec, ctx: MonoidalCtx) -> HopfAlgebra:
    """``k[x]/(x²)`` with ``x`` odd and primitive; a Hopf algebra only for super braiding or char 2."""
    if ctx.braiding is not BraidingKind.SUPER and k.characteristic != 2:
        raise ValueError("the exterior Hopf algebra needs the super braiding (or characteristic 2)")
    return _from_tables(
        k,
        [0, 1],
        0,
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}},
        {0: {(0, 0): 1}, 1: {(1, 0): 1, (0, 1): 1}},
        {0: 1},
        {0: {0: 1}, 1: {1: -1}},
    )


CATALOG = ("group_algebra", "sweedler4", "exterior")


def catalog(name: str, params: dict | None, k: FieldSpec, ctx: MonoidalCtx) -> HopfAlgebra:
    params = params or {}
    if name == "group_algebra":
        h = group_algebra(int(params.get("n", 2)), k)
    elif name == "sweedler4":
        h = sweedler4(k)
    elif name == "exterior":
        h = exterior(k, ctx)
    else:
        raise ValueError(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG)}")
    return h


# comodule algebras -------------------------------------------------------------


def regular_comodule_algebra(h: HopfAlgebra | Bialgebra) -> ComoduleAlgebra:
    b = h.bialg if isinstance(h, HopfAlgebra) else h
    return ComoduleAlgebra(b.alg, b.coalg.comult, b)


def trivial_comodule_algebra(a: Algebra, h: HopfAlgebra | Bialgebra) -> ComoduleAlgebra:
    """``α = A⊗e_H``."""
    b = h.bialg if isinstance(h, HopfAlgebra) else h
    return ComoduleAlgebra(a, tensor_map(a.id, b.alg.unit), b)


def check_comodule_algebra(ca: ComoduleAlgebra, ctx: MonoidalCtx) -> Report:
    rep = _gated("comodule algebra", check_bialgebra(ca.over, ctx), check_algebra(ca.alg))
    if rep.errors:
        return rep
    rep.absorb(check_comodule(ca.comodule))
    if rep.errors:
        return rep
    a, h = ca.alg, ca.over.alg
    al = ca.coaction
    with _Guard(rep):
        rep.compare(
            "coaction multiplicative",
            "α∘m_A = (m_A⊗m_H)∘(A⊗σ_{H,A}⊗H)∘(α⊗α)",
            al @ a.mult,
            tensor_algebra(a, h, ctx).mult @ tensor_map(al, al),
        )
        rep.compare("coaction unital", "α∘e_A = e_A⊗e_H", al @ a.unit, tensor_map(a.unit, h.unit))
    return rep


def entwining_from_comodule_algebra(ca: ComoduleAlgebra, ctx: MonoidalCtx) -> Entwining:
    """``λ = (A⊗m_H)∘(σ_{H,A}⊗H)∘(H⊗α)``."""
    _gate(check_comodule_algebra(ca, ctx), "comodule algebra")
    a, h = ca.alg, ca.over.alg
    lam = (
        tensor_map(a.id, h.mult)
        @ tensor_map(braiding(h.carrier, a.carrier, ctx), h.id)
        @ tensor_map(h.id, ca.coaction)
    )
    return Entwining(a, ca.over.coalg, lam)


@dataclass(frozen=True)
class RelativeHopfModule:
    carrier: Obj
    action: LinMap
    coaction: LinMap
    over: ComoduleAlgebra

    def entwined(self, ctx: MonoidalCtx) -> EntwinedModule:
        return EntwinedModule(self.carrier, self.action, self.coaction, entwining_from_comodule_algebra(self.over, ctx))


def check_relative_hopf_module(m: RelativeHopfModule, ctx: MonoidalCtx) -> Report:
    """Module and comodule axioms and ``ν∘ξ = (ξ⊗m_H)∘(M⊗σ_{H,A}⊗H)∘(ν⊗α)``."""
    ca = m.over
    _gate(check_comodule_algebra(ca, ctx), "comodule algebra")
    rep = Report("relative Hopf module")
    rep.absorb(check_module(RightModule(m.carrier, m.action, ca.alg)))
    rep.absorb(check_comodule(RightComodule(m.carrier, m.coaction, ca.over.coalg)))
    if rep.errors:
        return rep
    a, h = ca.alg, ca.over.alg
    with _Guard(rep):
        rhs = (
            tensor_map(m.action, h.mult)
            @ tensor_map(idm(m.carrier, a.field), braiding(h.carrier, a.carrier, ctx), h.id)
            @ tensor_map(m.coaction, ca.coaction)
        )
        rep.compare("coaction is A-linear", "ν∘ξ = (ξ⊗m_H)∘(M⊗σ_{H,A}⊗H)∘(ν⊗α)", m.coaction @ m.action, rhs)
    return rep


def free_hopf_module(v: Obj, h: HopfAlgebra) -> RelativeHopfModule:
    """``V⊗H`` with action ``V⊗m`` and coaction ``V⊗δ``."""
    iv = idm(v, h.field)
    return RelativeHopfModule(
        tensor_obj(v, h.carrier),
        tensor_map(iv, h.alg.mult),
        tensor_map(iv, h.coalg.comult),
        regular_comodule_algebra(h),
    )


@dataclass(frozen=True)
class XMap:
    x: LinMap
    y: LinMap
    report: Report


def x_map(h: HopfAlgebra, ctx: MonoidalCtx) -> XMap:
    """``x = (m⊗H)∘(H⊗δ)`` and ``y = (m⊗H)∘(H⊗S⊗H)∘(H⊗δ)``."""
    _gate(check_hopf(h, ctx), "Hopf algebra")
    a, c = h.alg, h.coalg
    x = tensor_map(a.mult, a.id) @ tensor_map(a.id, c.comult)
    y = tensor_map(a.mult, a.id) @ tensor_map(a.id, h.antipode, a.id) @ tensor_map(a.id, c.comult)
    rep = Report("x and y")
    HH = identity(tensor_obj(h.carrier, h.carrier), h.field)
    rep.compare("x∘y = id", "y is a right inverse of x", x @ y, HH)
    rep.compare("y∘x = id", "y is a left inverse of x", y @ x, HH)
    return XMap(x, y, rep)


def _spans_equal(f: LinMap, g: LinMap) -> bool:
    r = rank(f.mat)
    return r == rank(g.mat) == rank(f.mat.hstack(g.mat))


def fundamental_theorem_battery(h: HopfAlgebra, ctx: MonoidalCtx, samples: int = 10, seed: int = 0) -> Report:
    """Coinvariants of ``H``, Galois property of ``H`` over itself and ``V ↦ V⊗H`` on samples."""
    rep = Report("fundamental theorem")
    hop = rep.section(check_hopf(h, ctx))
    if not hop.passed:
        return rep
    a, c = h.alg, h.coalg
    H, k = h.carrier, h.field
    reg = regular_comodule_algebra(h)
    e = entwining_from_comodule_algebra(reg, ctx)
    g = GroupLike(c, a.unit)

    co = rep.section(Report("coinvariants of H"))
    co.add("unit is group-like", "ε∘e = 1 and δ∘e = e⊗e", verify_grouplike(c, a.unit))
    co.compare("induced coaction recovers α", "λ∘(e_H⊗A) = α", e.lam @ tensor_map(a.unit, a.id), reg.coaction)
    inc = coinvariants(RightComodule(H, c.comult, c), g)
    co.add("coinvariants are one-dimensional", "dim H^co = 1", inc.dom.total_dim == 1, note=f"dim {inc.dom.total_dim}")
    co.add("coinvariants spanned by the unit", "image of i_H = image of e_H", _spans_equal(inc, a.unit))
    co.compare("unit equalizes", "δ∘e = (H⊗e)∘e", c.comult @ a.unit, tensor_map(a.id, a.unit) @ a.unit)
    co.compare("split by counit", "ε∘e = id_I", c.counit @ a.unit, identity(UNIT, k))
    co.compare("split coaction", "(ε⊗H)∘δ = id_H", tensor_map(c.counit, a.id) @ c.comult, a.id)
    co.compare("split middle", "(ε⊗H)∘(H⊗e) = e∘ε", tensor_map(c.counit, a.id) @ tensor_map(a.id, a.unit), a.unit @ c.counit)

    gal = rep.section(Report("H is Galois over itself"))
    xm = x_map(h, ctx)
    gal.absorb(xm.report)
    cm = canonical_map(e, g)
    gal.absorb(cm.report)
    if cm.can is not None:
        gal.compare("can equals x", "can∘q = (m⊗H)∘(H⊗δ)", cm.can @ cm.sweedler.presentation.projection, xm.x)
    if samples <= 0:
        return rep

    bat = rep.section(Report(f"battery seed={seed} samples={samples}"))
    ca = coinvariant_algebra(e, g)
    graded = any(H.degrees)
    for i in range(samples):
        rng = random.Random(f"{seed}/{i}")
        v = random_object(rng, 3, graded)
        fm = free_hopf_module(v, h)
        ok = check_relative_hopf_module(fm, ctx).passed
        bat.add(f"instance {i}: V⊗H is a relative Hopf module", "V⊗H with V⊗m and V⊗δ", ok, note=f"V {v}")
        em = EntwinedModule(fm.carrier, fm.action, fm.coaction, e)
        inc_v = coinvariants(em.comodule, g)
        bat.add(
            f"instance {i}: coinvariants of V⊗H",
            "dim (V⊗H)^co = dim V",
            inc_v.dom.total_dim == v.total_dim,
            note=f"{inc_v.dom.total_dim} vs {v.total_dim}",
        )
        unit_v = tensor_map(idm(v, k), a.unit)
        u = _factor(inc_v, unit_v)
        bat.add(f"instance {i}: unit comparison", "V -> (V⊗H)^co, v ↦ v⊗1 is invertible", _is_iso(u))
        bat.add(
            f"instance {i}: counit comparison",
            "(V⊗H)^co⊗H -> V⊗H is invertible",
            _is_iso(counit_comparison(em, ca)),
        )
        m = random_right_module(a, rng, max_rank=2, graded=graded)
        lm = lifted_entwined(e, m)
        rh = RelativeHopfModule(lm.carrier, lm.action, lm.coaction, reg)
        bat.add(
            f"instance {i}: lifted module is a relative Hopf module",
            "(M⊗H, (ξ⊗H)∘(M⊗λ), M⊗δ)",
            check_relative_hopf_module(rh, ctx).passed,
            note=f"M {m.carrier}",
        )
        bat.add(
            f"instance {i}: counit comparison on lifted module",
            "M^co⊗H -> M is invertible",
            _is_iso(counit_comparison(lm, ca)),
        )
    return rep
