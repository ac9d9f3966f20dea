"""Group-likes, coinvariants and the Galois condition for an entwining.

Given an entwining ``(A, C, λ)`` and a group-like ``g: I -> C``, ``A`` becomes
a ``C``-comodule through ``λ∘(g⊗A)``; its coinvariants ``B`` form a subalgebra
and extension of scalars ``X ↦ X⊗_B A`` lands in entwined modules.  ``A`` is
Galois when the canonical map ``A⊗_B A -> A⊗C`` is invertible.  Together with
faithful flatness of ``A`` over ``B`` (decided through projectivity and the
trace ideal) this is the criterion for that functor to be an equivalence,
which :func:`equivalence_battery` also tests instance by instance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .linalg import FieldSpec, Matrix, invert, kernel_basis, rank, solve
from .monoidal import UNIT, LinMap, Obj, identity, tensor_map, tensor_obj
from .report import Report
from .entwining import (
    Coring,
    EntwinedModule,
    Entwining,
    PreconditionError,
    _gate,
    action_from_lambda,
    bimodule_tensor,
    check_coring,
    check_entwined,
    check_entwining,
    coring_from_action,
    lifted_entwined,
)
from .structures import (
    Algebra,
    Bimodule,
    Coalgebra,
    LeftModule,
    Quotient,
    RightComodule,
    RightModule,
    _Guard,
    _vector_degree,
    balanced_tensor,
    check_algebra,
    check_algebra_morphism,
    idm,
    random_right_module,
    regular_module,
)


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the budget; use :func:`verify_grouplike`."""


@dataclass(frozen=True)
class GroupLike:
    coalg: Coalgebra
    vector: LinMap


def verify_grouplike(c: Coalgebra, g: LinMap) -> bool:
    if g.dom != UNIT or g.cod != c.carrier:
        return False
    return c.counit @ g == identity(UNIT, c.field) and c.comult @ g == tensor_map(g, g)


def find_grouplikes(c: Coalgebra, budget: int = 10**6) -> list[GroupLike]:
    """All group-like vectors, in lexicographic order of their coordinates."""
    k = c.field
    C = c.carrier
    even = [j for j, d in enumerate(C.degrees) if d == 0]
    if not k.is_finite:
        raise BudgetExceeded("enumeration needs a finite field")
    if k.characteristic ** len(even) > budget:
        raise BudgetExceeded(f"{k.characteristic}^{len(even)} candidates exceed budget {budget}")
    # ε∘g = 1 and δ∘g = g⊗g, evaluated column-wise on the candidate coordinates
    eps = c.counit.mat
    n = C.total_dim
    p = k.characteristic
    out = []
    for coords in itertools.product(range(p), repeat=len(even)):
        vals = [0] * n
        for j, v in zip(even, coords):
            vals[j] = v
        if sum(eps[0, j] * vals[j] for j in even) % p != 1:
            continue
        g = LinMap._trusted(UNIT, C, Matrix(k, n, 1, vals))
        if c.comult @ g == tensor_map(g, g):
            out.append(GroupLike(c, g))
    return out


def induced_comodule(e: Entwining, g: GroupLike) -> RightComodule:
    if g.coalg != e.coalg:
        raise PreconditionError("group-like belongs to a different coalgebra")
    return RightComodule(e.alg.carrier, e.lam @ tensor_map(g.vector, e.alg.id), e.coalg)


def coinvariants(m: RightComodule, g: GroupLike) -> LinMap:
    """Inclusion of the equalizer of ``ν`` and ``M⊗g``."""
    if g.coalg != m.over:
        raise PreconditionError("group-like belongs to a different coalgebra")
    M = m.carrier
    diff = m.coaction - tensor_map(idm(M, m.over.field), g.vector)
    kb = kernel_basis(diff.mat)
    sub = Obj(tuple(_vector_degree(M, kb.row(i)) for i in range(kb.rows)))
    return LinMap(sub, M, kb.transpose())


@dataclass(frozen=True)
class CoinvariantAlgebra:
    entwining: Entwining
    grouplike: GroupLike
    comodule: RightComodule
    inclusion: LinMap
    structure: Algebra

    @property
    def ambient(self) -> Algebra:
        return self.entwining.alg

    def left_module(self) -> LeftModule:
        a = self.ambient
        return LeftModule(a.carrier, a.mult @ tensor_map(self.inclusion, a.id), self.structure)

    def right_module(self) -> RightModule:
        a = self.ambient
        return RightModule(a.carrier, a.mult @ tensor_map(a.id, self.inclusion), self.structure)


def _factor(i: LinMap, f: LinMap) -> LinMap | None:
    """The unique ``h`` with ``i∘h = f`` for a monomorphism ``i``, if it exists."""
    sol = solve(i.mat, f.mat)
    if sol is None:
        return None
    return LinMap(f.dom, i.dom, sol)


def coinvariant_algebra(e: Entwining, g: GroupLike) -> CoinvariantAlgebra:
    comod = induced_comodule(e, g)
    inc = coinvariants(comod, g)
    a = e.alg
    unit = _factor(inc, a.unit)
    mult = _factor(inc, a.mult @ tensor_map(inc, inc))
    if unit is None or mult is None:
        raise PreconditionError("coinvariants are not a subalgebra; is the entwining valid?")
    return CoinvariantAlgebra(e, g, comod, inc, Algebra(inc.dom, unit, mult))


def check_coinvariant_algebra(ca: CoinvariantAlgebra) -> Report:
    rep = Report("coinvariant subalgebra")
    rep.absorb(check_algebra(ca.structure))
    a, i = ca.ambient, ca.inclusion
    with _Guard(rep):
        rep.compare(
            "inclusion equalizes",
            "g_A∘i = (A⊗g)∘i",
            ca.comodule.coaction @ i,
            tensor_map(a.id, ca.grouplike.vector) @ i,
        )
        rep.absorb(check_algebra_morphism(i, ca.structure, a), "inclusion ")
    return rep


# extension of scalars ----------------------------------------------------------


def induction_quotient(x: RightModule, ca: CoinvariantAlgebra) -> Quotient:
    """``X⊗_B A`` for a right module ``X`` over the coinvariants ``B``."""
    return balanced_tensor(x.carrier, x.action, ca.ambient.carrier, ca.left_module().action, ca.structure)


def tensor_over_subalgebra(x: RightModule, ca: CoinvariantAlgebra) -> EntwinedModule:
    """``(X⊗_B A, X⊗_B m, X⊗_B g_A)``."""
    if x.over != ca.structure:
        raise PreconditionError("module is not over the coinvariant subalgebra")
    a = ca.ambient
    c = ca.entwining.coalg
    q = induction_quotient(x, ca)
    iX = idm(x.carrier, a.field)
    act = q.descend_in(q.projection @ tensor_map(iX, a.mult), right=a.carrier)
    coact = q.descend(tensor_map(q.projection, c.id) @ tensor_map(iX, ca.comodule.coaction))
    if act is None or coact is None:
        raise RuntimeError("structure maps do not descend to X⊗_B A")
    return EntwinedModule(q.obj, act, coact, ca.entwining)


@dataclass(frozen=True)
class SweedlerCoring:
    base: CoinvariantAlgebra
    presentation: Quotient
    coring: Coring


def sweedler_presentation(ca: CoinvariantAlgebra) -> Quotient:
    a = ca.ambient
    return balanced_tensor(a.carrier, ca.right_module().action, a.carrier, ca.left_module().action, ca.structure)


def build_sweedler_coring(ca: CoinvariantAlgebra, verify: bool = True) -> SweedlerCoring:
    """``A⊗_B A`` with counit induced by ``m`` and comultiplication inserting the unit."""
    a = ca.ambient
    A, k = a.carrier, a.field
    q = sweedler_presentation(ca)
    P = q.projection
    left = q.descend_in(P @ tensor_map(a.mult, a.id), left=A)
    right = q.descend_in(P @ tensor_map(a.id, a.mult), right=A)
    counit = q.descend(a.mult)
    if left is None or right is None or counit is None:
        raise RuntimeError("Sweedler coring structure does not descend")
    bim = Bimodule(q.obj, left, right, a, a)
    q2 = bimodule_tensor(bim)
    amb = q2.projection @ tensor_map(P, P) @ tensor_map(a.id, a.unit, a.unit, a.id)
    comult = q.descend(amb)
    if comult is None:
        raise RuntimeError("Sweedler comultiplication does not descend")
    sw = SweedlerCoring(ca, q, Coring(a, bim, counit, q2, comult))
    if verify:
        rep = check_coring(sw.coring, "Sweedler coring")
        if not rep.passed:  # pragma: no cover
            raise AssertionError(f"Sweedler coring failed: {[c.name for c in rep.failures()]}")
    return sw


# canonical map -------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalMap:
    coinvariants: CoinvariantAlgebra
    sweedler: SweedlerCoring
    target: Coring
    can: LinMap | None
    inverse: LinMap | None
    report: Report

    @property
    def is_iso(self) -> bool:
        return self.inverse is not None


def canonical_map(e: Entwining, g: GroupLike, morphism_checks: bool = True) -> CanonicalMap:
    """``can = (m⊗C)∘(A⊗g_A)`` descended to ``A⊗_B A``, with coring-morphism checks."""
    _gate(check_entwining(e), "entwining")
    if not verify_grouplike(e.coalg, g.vector):
        raise PreconditionError("not a group-like element")
    ca = coinvariant_algebra(e, g)
    sw = build_sweedler_coring(ca, verify=False)
    a, c = e.alg, e.coalg
    target = coring_from_action(a, c, action_from_lambda(a, c, e.lam))
    rep = Report("canonical map")
    q = sw.presentation
    amb = tensor_map(a.mult, c.id) @ tensor_map(a.id, ca.comodule.coaction)
    can = q.descend(amb)
    if can is None:
        rep.error("internal inconsistency: can does not descend to A⊗_B A")
        return CanonicalMap(ca, sw, target, None, None, rep)
    inv = invert(can.mat)
    inverse = LinMap(can.cod, can.dom, inv) if inv is not None else None
    rep.add(
        "can invertible",
        "A is Galois: A⊗_B A -> A⊗C is an isomorphism",
        inverse is not None,
        note=f"{q.obj.total_dim} -> {can.cod.total_dim}",
    )
    if morphism_checks:
        with _Guard(rep):
            _coring_morphism(rep, can, sw.coring, target)
    return CanonicalMap(ca, sw, target, can, inverse, rep)


def _coring_morphism(rep: Report, f: LinMap, src: Coring, dst: Coring):
    a = src.over
    A = a.carrier
    rep.compare("commutes with counits", "ε'∘can = ε", dst.counit @ f, src.counit)
    rep.compare(
        "left A-linear",
        "can∘λ = λ'∘(A⊗can)",
        f @ src.carrier.left_action,
        dst.carrier.left_action @ tensor_map(a.id, f),
    )
    rep.compare(
        "right A-linear",
        "can∘ρ = ρ'∘(can⊗A)",
        f @ src.carrier.right_action,
        dst.carrier.right_action @ tensor_map(f, a.id),
    )
    ff = src.tensor.descend(dst.tensor.projection @ tensor_map(f, f))
    rep.add("can⊗_A can well defined", "can is balanced", ff is not None)
    if ff is not None:
        rep.compare("commutes with comultiplications", "Δ'∘can = (can⊗_A can)∘Δ", dst.comult @ f, ff @ src.comult)


# flatness ----------------------------------------------------------------------


@dataclass(frozen=True)
class Flatness:
    flat: bool
    faithfully_flat: bool


def _linear_system(dom: Obj, cod: Obj, k: FieldSpec, fn: Callable[[LinMap], list[LinMap]]):
    """Matrix of the linear map ``s ↦ fn(s)`` on degree-preserving ``s: dom -> cod``."""
    slots = [(i, j) for i, di in enumerate(cod.degrees) for j, dj in enumerate(dom.degrees) if di == dj]
    cols = []
    for i, j in slots:
        s = LinMap._trusted(dom, cod, Matrix.from_sparse(k, cod.total_dim, dom.total_dim, [((i, j), 1)]))
        cols.append([x for f in fn(s) for x in f.mat.entries])
    height = len(cols[0]) if cols else 0
    sys_mat = Matrix(k, len(slots), height, [x for col in cols for x in col]).transpose()
    return slots, sys_mat


def _slots_to_map(dom, cod, k, slots, values) -> LinMap:
    return LinMap(dom, cod, Matrix.from_sparse(k, cod.total_dim, dom.total_dim, list(zip(slots, values))))


def flatness(m: LeftModule | RightModule) -> Flatness:
    """Projectivity (split free cover) and the trace-ideal generator test."""
    r = m.over
    k = r.field
    M, R = m.carrier, r.carrier
    left = isinstance(m, LeftModule)
    iM, iR = idm(M, k), r.id
    if left:
        free = tensor_obj(R, M)
        free_act = tensor_map(r.mult, iM)

        def lin(s):  # s: M -> R⊗M
            return [s @ m.action - free_act @ tensor_map(iR, s)]

        def hom(f):  # f: M -> R
            return [f @ m.action - r.mult @ tensor_map(iR, f)]
    else:
        free = tensor_obj(M, R)
        free_act = tensor_map(iM, r.mult)

        def lin(s):
            return [s @ m.action - free_act @ tensor_map(s, iR)]

        def hom(f):
            return [f @ m.action - r.mult @ tensor_map(f, iR)]

    cover = m.action  # R⊗M -> M (or M⊗R -> M) is onto via the unit
    # flat: find a module map s with cover∘s = id
    slots, A1 = _linear_system(M, free, k, lambda s: [cover @ s] + lin(s))
    rhs = [x for x in identity(M, k).mat.entries] + [0] * (A1.rows - M.total_dim ** 2)
    flat = True
    if slots:
        flat = solve(A1, Matrix(k, A1.rows, 1, rhs)) is not None
    elif M.total_dim:
        flat = False
    if not flat:
        return Flatness(False, False)
    # trace ideal: span of images of all module maps M -> R
    hslots, H = _linear_system(M, R, k, hom)
    if not hslots:
        return Flatness(True, False)
    kb = kernel_basis(H)
    images = []
    for i in range(kb.rows):
        f = _slots_to_map(M, R, k, hslots, kb.row(i))
        images.extend(f.mat.transpose().to_rows())
    trace_dim = rank(Matrix.from_rows(k, images, R.total_dim)) if images else 0
    return Flatness(True, trace_dim == R.total_dim)


# equivalence battery ---------------------------------------------------------------


def counit_comparison(x: EntwinedModule, ca: CoinvariantAlgebra) -> LinMap | None:
    """``M^co⊗_B A -> M``; ``None`` if the coinvariants are not a ``B``-submodule or it fails to descend."""
    a = ca.ambient
    inc = coinvariants(x.comodule, ca.grouplike)
    restricted = x.action @ tensor_map(inc, ca.inclusion)
    rho = _factor(inc, restricted)
    if rho is None:
        return None
    q = balanced_tensor(inc.dom, rho, a.carrier, ca.left_module().action, ca.structure)
    return q.descend(x.action @ tensor_map(inc, a.id))


def unit_comparison(x: RightModule, ca: CoinvariantAlgebra) -> LinMap | None:
    """``X -> (X⊗_B A)^co``, ``x ↦ [x⊗1]``; ``None`` if the image is not coinvariant."""
    y = tensor_over_subalgebra(x, ca)
    q = induction_quotient(x, ca)
    u = q.projection @ tensor_map(idm(x.carrier, ca.ambient.field), ca.ambient.unit)
    inc = coinvariants(y.comodule, ca.grouplike)
    return _factor(inc, u)


def _is_iso(f: LinMap | None) -> bool:
    return f is not None and invert(f.mat) is not None


def _graded(e: Entwining) -> bool:
    return any(e.alg.carrier.degrees) or any(e.coalg.carrier.degrees)


def random_entwined_module(ca: CoinvariantAlgebra, rng: random.Random, kind: str) -> tuple[str, EntwinedModule]:
    e = ca.entwining
    graded = _graded(e)
    if kind == "lift":
        m = random_right_module(e.alg, rng, max_rank=2, graded=graded)
        return f"lift of module {m.carrier}", lifted_entwined(e, m)
    if kind == "induced":
        x = random_right_module(ca.structure, rng, max_rank=2, graded=graded)
        return f"induced from {x.carrier}", tensor_over_subalgebra(x, ca)
    a = e.alg
    return "A itself", EntwinedModule(a.carrier, a.mult, ca.comodule.coaction, e)


BATTERY_KINDS = ("lift", "regular", "induced")


def _instance_rng(seed: int, i: int) -> random.Random:
    return random.Random(f"{seed}/{i}")


def equivalence_battery(e: Entwining, g: GroupLike, samples: int = 10, seed: int = 0) -> Report:
    """Theoretical Galois + faithful-flatness verdict and per-instance unit/counit tests."""
    rep = Report("equivalence battery")
    theory = rep.section(Report("theory"))
    cm = canonical_map(e, g)
    theory.absorb(cm.report)
    ff = flatness(cm.coinvariants.left_module())
    theory.add("A flat over coinvariants", "_B A is projective", ff.flat, note="left structure")
    predicted = cm.is_iso and ff.faithfully_flat
    # informational: positive only when both hypotheses hold
    theory_verdict = Report("predicted equivalence")
    theory_verdict.add(
        "faithfully flat and Galois",
        "Galois and faithfully flat iff extension of scalars is an equivalence",
        predicted,
        note=f"faithfully_flat={ff.faithfully_flat}",
    )
    if samples <= 0:
        rep.section(theory_verdict)
        return rep
    battery = Report(f"battery seed={seed} samples={samples}")
    ca = cm.coinvariants
    graded = _graded(e)
    for i in range(samples):
        rng = _instance_rng(seed, i)
        x = random_right_module(ca.structure, rng, max_rank=2, graded=graded)
        uc = unit_comparison(x, ca)
        battery.add(f"instance {i}: unit comparison", "X -> (X⊗_B A)^co is invertible", _is_iso(uc), note=f"X {x.carrier}")
        label, mod = random_entwined_module(ca, rng, BATTERY_KINDS[i % len(BATTERY_KINDS)])
        ok = check_entwined(mod).passed
        battery.add(f"instance {i}: sample is entwined", "generated sample is an entwined module", ok, note=label)
        cc = counit_comparison(mod, ca)
        battery.add(f"instance {i}: counit comparison", "M^co⊗_B A -> M is invertible", _is_iso(cc), note=label)
    rep.section(battery)
    empirical = battery.passed
    consistency = Report("consistency")
    consistency.add(
        "theory implies battery",
        "a positive theoretical verdict forces every comparison to be invertible",
        (not predicted) or empirical,
        note=f"predicted={predicted} empirical={empirical}",
    )
    rep.section(theory_verdict)
    rep.section(consistency)
    return rep


@dataclass(frozen=True)
class GaloisVerdict:
    can_map: CanonicalMap
    is_iso: bool
    faithfully_flat: bool
    equivalence_battery: Report = field(compare=False)


def decide_galois(e: Entwining, g: GroupLike, samples: int = 10, seed: int = 0) -> GaloisVerdict:
    cm = canonical_map(e, g)
    ff = flatness(cm.coinvariants.left_module())
    return GaloisVerdict(cm, cm.is_iso, ff.faithfully_flat, equivalence_battery(e, g, samples, seed))
