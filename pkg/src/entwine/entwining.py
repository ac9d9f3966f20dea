"""Entwining structures, their corings and entwined modules.

An entwining ``λ: C⊗A -> A⊗C`` between an algebra and a coalgebra is checked
through its four compatibility squares.  It corresponds bijectively to a right
``A``-action ``ξ = (m⊗C)∘(A⊗λ)`` on ``A⊗C`` that turns ``A⊗C`` into an
``A``-coring; both directions of that correspondence live here, together with
the quotient-based coring checker used for every coring in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import invert
from .monoidal import UNIT, LinMap, MonoidalCtx, Obj, braiding, tensor_map, tensor_obj
from .report import Report
from .structures import (
    Algebra,
    Bimodule,
    Coalgebra,
    Quotient,
    RightComodule,
    RightModule,
    _Guard,
    _shape,
    balanced_tensor,
    check_algebra,
    check_bimodule,
    check_coalgebra,
    check_comodule,
    check_module,
    idm,
    quotient,
    relations_of,
)


class PreconditionError(ValueError):
    """An input failed the checker that gates an operation."""


@dataclass(frozen=True)
class Entwining:
    alg: Algebra
    coalg: Coalgebra
    lam: LinMap

    @property
    def field(self):
        return self.alg.field


def flip_entwining(alg: Algebra, coalg: Coalgebra, ctx: MonoidalCtx) -> Entwining:
    return Entwining(alg, coalg, braiding(coalg.carrier, alg.carrier, ctx))


def check_entwining(e: Entwining) -> Report:
    rep = Report("entwining")
    pre_a, pre_c = check_algebra(e.alg), check_coalgebra(e.coalg)
    if not pre_a.passed or not pre_c.passed:
        rep.error("precondition: algebra and coalgebra must pass their own checks")
        rep.section(pre_a)
        rep.section(pre_c)
        return rep
    A, C = e.alg.carrier, e.coalg.carrier
    if not _shape(rep, "lambda", e.lam, tensor_obj(C, A), tensor_obj(A, C)):
        return rep
    with _Guard(rep):
        lam = e.lam
        iA, iC = e.alg.id, e.coalg.id
        m, u = e.alg.mult, e.alg.unit
        d, eps = e.coalg.comult, e.coalg.counit
        rep.compare("unit compatibility", "λ∘(C⊗e) = e⊗C", lam @ tensor_map(iC, u), tensor_map(u, iC))
        rep.compare("counit compatibility", "(A⊗ε)∘λ = ε⊗A", tensor_map(iA, eps) @ lam, tensor_map(eps, iA))
        rep.compare(
            "comultiplication compatibility",
            "(A⊗δ)∘λ = (λ⊗C)∘(C⊗λ)∘(δ⊗A)",
            tensor_map(iA, d) @ lam,
            tensor_map(lam, iC) @ tensor_map(iC, lam) @ tensor_map(d, iA),
        )
        rep.compare(
            "multiplication compatibility",
            "λ∘(C⊗m) = (m⊗C)∘(A⊗λ)∘(λ⊗A)",
            lam @ tensor_map(iC, m),
            tensor_map(m, iC) @ tensor_map(iA, lam) @ tensor_map(lam, iA),
        )
    return rep


def _gate(rep: Report, what: str):
    if not rep.passed:
        names = ", ".join(c.name for c in rep.failures()) or "; ".join(rep.errors)
        raise PreconditionError(f"{what} rejected: {names}")


def action_from_lambda(alg: Algebra, coalg: Coalgebra, lam: LinMap) -> LinMap:
    """``(m⊗C)∘(A⊗λ): A⊗C⊗A -> A⊗C`` without checking ``λ``."""
    return tensor_map(alg.mult, coalg.id) @ tensor_map(alg.id, lam)


def xi_from_lambda(e: Entwining) -> RightModule:
    _gate(check_entwining(e), "entwining")
    return RightModule(tensor_obj(e.alg.carrier, e.coalg.carrier), action_from_lambda(e.alg, e.coalg, e.lam), e.alg)


def lambda_from_xi(a: Algebra, c: Coalgebra, xi: LinMap) -> LinMap:
    """``ξ∘(e⊗C⊗A): C⊗A -> A⊗C``."""
    A, C = a.carrier, c.carrier
    return xi @ tensor_map(a.unit, c.id, a.id)


# corings ---------------------------------------------------------------------


@dataclass(frozen=True)
class Coring:
    """An ``A``-coring: a bimodule ``M`` with counit ``M -> A`` and ``Δ: M -> M⊗_A M``."""

    over: Algebra
    carrier: Bimodule
    counit: LinMap
    tensor: Quotient
    comult: LinMap
    comult_on_ambient: LinMap | None = None


def bimodule_tensor(b: Bimodule) -> Quotient:
    return balanced_tensor(b.carrier, b.right_action, b.carrier, b.left_action, b.right_over)


def coring_from_action(a: Algebra, c: Coalgebra, xi: LinMap) -> Coring:
    """The triple ``(A⊗C, A⊗ε, A⊗δ)`` with left action ``m⊗C`` and right action ``xi``, unchecked."""
    M = tensor_obj(a.carrier, c.carrier)
    bim = Bimodule(M, tensor_map(a.mult, c.id), xi, a, a)
    q2 = bimodule_tensor(bim)
    counit = tensor_map(a.id, c.counit)
    # a⊗c1⊗c2 -> (a⊗c1)⊗(1⊗c2)
    lift = tensor_map(a.id, c.id, a.unit, c.id) @ tensor_map(a.id, c.comult)
    return Coring(a, bim, counit, q2, q2.projection @ lift, lift)


def build_coring(e: Entwining) -> Coring:
    xi = xi_from_lambda(e).action
    cor = coring_from_action(e.alg, e.coalg, xi)
    rep = check_coring(cor)
    if not rep.passed:  # pragma: no cover - guaranteed for a passing entwining
        raise AssertionError(f"coring of a valid entwining failed: {[c.name for c in rep.failures()]}")
    return cor


def check_coring_triple(a: Algebra, c: Coalgebra, xi: LinMap) -> Report:
    """Bimodule and coring axioms of the triple built from a right action on ``A⊗C``."""
    rep = Report("coring triple")
    if not _shape(rep, "xi", xi, tensor_obj(a.carrier, c.carrier, a.carrier), tensor_obj(a.carrier, c.carrier)):
        return rep
    rep.absorb(check_coring(coring_from_action(a, c, xi)))
    return rep


def check_coring(cor: Coring, title: str = "coring") -> Report:
    rep = Report(title)
    b = cor.carrier
    a = cor.over
    rep.absorb(check_bimodule(b))
    if rep.errors:
        return rep
    with _Guard(rep):
        _coring_axioms(rep, cor)
    return rep


def _coring_axioms(rep: Report, cor: Coring):
    b, a, q2 = cor.carrier, cor.over, cor.tensor
    k = a.field
    M, A = b.carrier, a.carrier
    lm, rm = b.left_action, b.right_action
    iM, iA = idm(M, k), a.id
    eps, delta = cor.counit, cor.comult
    P2, S2 = q2.projection, q2.section

    rep.compare("counit left linear", "ε∘λ_M = m∘(A⊗ε)", eps @ lm, a.mult @ tensor_map(iA, eps))
    rep.compare("counit right linear", "ε∘ρ_M = m∘(ε⊗A)", eps @ rm, a.mult @ tensor_map(eps, iA))

    left_q2 = q2.descend_in(P2 @ tensor_map(lm, iM), left=A)
    right_q2 = q2.descend_in(P2 @ tensor_map(iM, rm), right=A)
    rep.add("left action on M⊗_A M well defined", "A acts on the balanced tensor square", left_q2 is not None)
    rep.add("right action on M⊗_A M well defined", "A acts on the balanced tensor square", right_q2 is not None)
    if left_q2 is not None:
        rep.compare("comultiplication left linear", "Δ∘λ_M = λ∘(A⊗Δ)", delta @ lm, left_q2 @ tensor_map(iA, delta))
    if right_q2 is not None:
        rep.compare("comultiplication right linear", "Δ∘ρ_M = ρ∘(Δ⊗A)", delta @ rm, right_q2 @ tensor_map(delta, iA))

    counit_l = q2.descend(lm @ tensor_map(eps, iM))
    counit_r = q2.descend(rm @ tensor_map(iM, eps))
    rep.add("ε⊗_A M well defined", "counit descends to the balanced tensor", counit_l is not None)
    rep.add("M⊗_A ε well defined", "counit descends to the balanced tensor", counit_r is not None)
    if counit_l is not None:
        rep.compare("counit law (left)", "(ε⊗_A M)∘Δ = id", counit_l @ delta, iM)
    if counit_r is not None:
        rep.compare("counit law (right)", "(M⊗_A ε)∘Δ = id", counit_r @ delta, iM)

    # triple tensor built by iteration; the joint quotient of M⊗M⊗M is far larger
    lift = S2 @ delta
    q3a = q3b = None
    if right_q2 is not None:
        q3a = balanced_tensor(q2.obj, right_q2, M, lm, a)
        pa = q3a.projection @ tensor_map(P2, iM)
    if left_q2 is not None:
        q3b = balanced_tensor(M, rm, q2.obj, left_q2, a)
        pb = q3b.projection @ tensor_map(iM, P2)
    if q3a is not None and q3b is not None:
        rep.add(
            "associativity comparison (M⊗_A M)⊗_A M ≅ M⊗_A (M⊗_A M)",
            "iterated balanced tensors are canonically isomorphic",
            _same_quotient(pa, pb, q2, q3a, iM),
        )
    if q3a is None and q3b is None:
        return
    p3 = pa if q3a is not None else pb
    lhs_amb = p3 @ tensor_map(lift, iM)
    rhs_amb = p3 @ tensor_map(iM, lift)
    lhs_ok = q2.kills_relations(lhs_amb)
    rhs_ok = q2.kills_relations(rhs_amb)
    rep.add("Δ⊗_A M well defined", "comultiplication extends to the triple tensor", lhs_ok)
    rep.add("M⊗_A Δ well defined", "comultiplication extends to the triple tensor", rhs_ok)
    if lhs_ok and rhs_ok:
        rep.compare("coassociativity", "(Δ⊗_A M)∘Δ = (M⊗_A Δ)∘Δ", lhs_amb @ lift, rhs_amb @ lift)


def _same_quotient(pa: LinMap, pb: LinMap, q2, q3a, iM: LinMap) -> bool:
    # ker pa is spanned by ker(P2)⊗M and the section image of the outer relations
    if pa.cod.total_dim != pb.cod.total_dim:
        return False
    inner = q2.relation_map()
    if inner is not None and not (pb @ tensor_map(inner, iM)).is_zero():
        return False
    outer = q3a.relation_map()
    lift = tensor_map(q2.section, iM)
    if outer is not None and not (pb @ lift @ outer).is_zero():
        return False
    return invert((pb @ lift @ q3a.section).mat) is not None


# lifted (co)monads and entwined modules ----------------------------------------


@dataclass(frozen=True)
class EntwinedModule:
    carrier: Obj
    action: LinMap
    coaction: LinMap
    over: Entwining

    @property
    def module(self) -> RightModule:
        return RightModule(self.carrier, self.action, self.over.alg)

    @property
    def comodule(self) -> RightComodule:
        return RightComodule(self.carrier, self.coaction, self.over.coalg)


def check_entwined(x: EntwinedModule, title: str = "entwined module") -> Report:
    rep = Report(title)
    rep.absorb(check_module(x.module))
    rep.absorb(check_comodule(x.comodule))
    if rep.errors:
        return rep
    e = x.over
    with _Guard(rep):
        iM = idm(x.carrier, e.field)
        lhs = tensor_map(x.action, e.coalg.id) @ tensor_map(iM, e.lam) @ tensor_map(x.coaction, e.alg.id)
        rep.compare("entwined compatibility", "(ξ⊗C)∘(M⊗λ)∘(ν⊗A) = ν∘ξ", lhs, x.coaction @ x.action)
    return rep


def check_entwined_morphism(f: LinMap, x: EntwinedModule, y: EntwinedModule) -> Report:
    rep = Report("entwined module morphism")
    if not _shape(rep, "map", f, x.carrier, y.carrier):
        return rep
    e = x.over
    with _Guard(rep):
        rep.compare("module map", "ξ'∘(f⊗A) = f∘ξ", y.action @ tensor_map(f, e.alg.id), f @ x.action)
        rep.compare("comodule map", "ν'∘f = (f⊗C)∘ν", y.coaction @ f, tensor_map(f, e.coalg.id) @ x.coaction)
    return rep


def _require_same(a, b, what: str):
    if a != b:
        raise PreconditionError(f"{what} does not match the entwining")


def lift_comonad(e: Entwining, m: RightModule) -> RightModule:
    """``(M⊗C, (ξ⊗C)∘(M⊗λ))``."""
    _require_same(m.over, e.alg, "module algebra")
    _gate(check_entwining(e), "entwining")
    _gate(check_module(m), "module")
    iM = idm(m.carrier, e.field)
    act = tensor_map(m.action, e.coalg.id) @ tensor_map(iM, e.lam)
    return RightModule(tensor_obj(m.carrier, e.coalg.carrier), act, e.alg)


def lifted_entwined(e: Entwining, m: RightModule) -> EntwinedModule:
    """The lifted module with the free coaction ``M⊗δ``."""
    lm = lift_comonad(e, m)
    coact = tensor_map(idm(m.carrier, e.field), e.coalg.comult)
    return EntwinedModule(lm.carrier, lm.action, coact, e)


def lift_monad(e: Entwining, c: RightComodule) -> RightComodule:
    """``(M⊗A, (M⊗λ)∘(ν⊗A))``."""
    _require_same(c.over, e.coalg, "comodule coalgebra")
    _gate(check_entwining(e), "entwining")
    _gate(check_comodule(c), "comodule")
    iM = idm(c.carrier, e.field)
    coact = tensor_map(iM, e.lam) @ tensor_map(c.coaction, e.alg.id)
    return RightComodule(tensor_obj(c.carrier, e.alg.carrier), coact, e.coalg)


def lifted_entwined_from_comodule(e: Entwining, c: RightComodule) -> EntwinedModule:
    """The lifted comodule with the free action ``M⊗m``."""
    lc = lift_monad(e, c)
    act = tensor_map(idm(c.carrier, e.field), e.alg.mult)
    return EntwinedModule(lc.carrier, act, lc.coaction, e)


def trivial_entwined(e: Entwining) -> EntwinedModule:
    """``I`` with trivial action and coaction, valid when both structures are the base field."""
    k = e.field
    return EntwinedModule(UNIT, idm(UNIT, k), idm(UNIT, k), e)
