"""Crossed modules of groups with operations."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .actions import (
    ActionSet,
    action_through,
    closure_conditions,
    conjugation_action,
    induced_action,
    is_derived_action,
    semidirect,
    semidirect_subset,
)
from .core import (
    GroupWithOps,
    Morphism,
    ValidationReport,
    Violation,
    _check,
    elements_of,
    is_ideal,
    is_isomorphism,
    is_subobject,
    kernel_and_image,
    morphism_violation,
    quotient_gwo,
    restrict,
    trivial_gwo,
    validate_gwo,
)
from .errors import NotNormalError, PreconditionError, SignatureMismatchError, StructureError
from .witness import IsoWitness


@dataclass(frozen=True, eq=False)
class CrossedModule:
    A: GroupWithOps
    B: GroupWithOps
    acts: ActionSet
    boundary: Morphism
    name: str = ""

    def __post_init__(self):
        if self.A.signature != self.B.signature:
            raise SignatureMismatchError("A and B have different signatures")
        if self.acts.acted.order != self.A.order or self.acts.actor.order != self.B.order:
            raise StructureError("action tables do not match A and B")
        if self.boundary.dom.order != self.A.order or self.boundary.cod.order != self.B.order:
            raise StructureError("boundary must map A to B")

    def __repr__(self):
        return f"<CrossedModule {self.name or ''} |A|={self.A.order} |B|={self.B.order}>"


def validate_xmod(X: CrossedModule) -> ValidationReport:
    """Derived-action test on ``A ⋊ B``, then CM1-CM4 for every symbol."""
    rep = ValidationReport()
    A, B, acts, alpha = X.A, X.B, X.acts, X.boundary.map
    rep.extend(validate_gwo(A), "A: ")
    rep.extend(validate_gwo(B), "B: ")
    _, derived = is_derived_action(A, B, acts)
    rep.extend(derived, "derived-action: ")
    v = morphism_violation(X.boundary)
    if v is not None:
        rep.violations.append(Violation("boundary: " + v.axiom, v.witness, v.detail))
    D = acts.dot
    na, nb = A.order, B.order
    rb, ra = np.arange(nb)[:, None], np.arange(na)[None, :]
    # CM1: alpha(b·a) = b + alpha(a) - b
    _check(rep, "CM1", alpha[D] == B.add_table[B.add_table[rb, alpha[ra]], B.neg_table[rb]])
    # CM2: alpha(a)·a' = a + a' - a
    x, y = np.arange(na)[:, None], np.arange(na)[None, :]
    _check(rep, "CM2", D[alpha[x], y] == A.add_table[A.add_table[x, y], A.neg_table[x]])
    sig = A.signature
    for s in sig.extra_binary:
        S, Sop = acts.star[s], acts.star[sig.opposite(s)]
        MA, MB = A.binary_tables[s], B.binary_tables[s]
        _check(rep, f"CM3[{s}]", S[alpha[x], y] == MA[x, y])
        _check(rep, f"CM4[{s}] left", alpha[S] == MB[rb, alpha[ra]])
        # a s b is the opposite action b s° a
        _check(rep, f"CM4[{s}] right", alpha[Sop] == MB[alpha[ra], rb])
    return rep


# --------------------------------------------------------------------------
# morphisms
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class XModMorphism:
    dom: CrossedModule
    cod: CrossedModule
    f: Morphism
    g: Morphism

    def __post_init__(self):
        if self.f.dom.order != self.dom.A.order or self.f.cod.order != self.cod.A.order:
            raise StructureError("f must map A to A'")
        if self.g.dom.order != self.dom.B.order or self.g.cod.order != self.cod.B.order:
            raise StructureError("g must map B to B'")

    @property
    def components(self):
        return (self.f, self.g)

    def first_violation(self) -> Violation | None:
        for label, m in (("f", self.f), ("g", self.g)):
            v = morphism_violation(m)
            if v is not None:
                return Violation(f"{label}: {v.axiom}", v.witness, v.detail)
        f, g = self.f.map, self.g.map
        X, Y = self.dom, self.cod
        rep = ValidationReport()
        if not _check(rep, "g∘α = α'∘f", g[X.boundary.map] == Y.boundary.map[f]):
            return rep.violations[0]
        gb, fa = g[:, None], f[None, :]
        if not _check(rep, "f(b·a) = g(b)·f(a)", f[X.acts.dot] == Y.acts.dot[gb, fa]):
            return rep.violations[0]
        for s in X.A.signature.extra_binary:
            if not _check(rep, f"f(b{s}a) = g(b){s}f(a)", f[X.acts.star[s]] == Y.acts.star[s][gb, fa]):
                return rep.violations[0]
        return None

    def then(self, other: "XModMorphism") -> "XModMorphism":
        return XModMorphism(self.dom, other.cod, self.f.then(other.f), self.g.then(other.g))

    def inverse(self) -> "XModMorphism":
        return XModMorphism(self.cod, self.dom, self.f.inverse_map(), self.g.inverse_map())

    @classmethod
    def identity(cls, X: CrossedModule) -> "XModMorphism":
        return cls(X, X, Morphism.identity(X.A), Morphism.identity(X.B))


def is_xmod_morphism(m: XModMorphism) -> tuple[bool, Violation | None]:
    v = m.first_violation()
    return v is None, v


def xmod_iso(m: XModMorphism) -> IsoWitness:
    return IsoWitness(m, m.inverse())


# --------------------------------------------------------------------------
# standard crossed modules
# --------------------------------------------------------------------------


def ideal_inclusion_xmod(G: GroupWithOps, I, name="") -> CrossedModule:
    """``(I, G, inclusion)`` with conjugation and multiplication actions."""
    acts = conjugation_action(G, elements_of(I))
    inc = Morphism(acts.acted, G, elements_of(I))
    return CrossedModule(acts.acted, G, acts, inc, name=name or f"{G.name}>{len(inc.map)}")


def identity_xmod(G: GroupWithOps, name="") -> CrossedModule:
    return ideal_inclusion_xmod(G, G.elements, name=name or f"id({G.name})")


def zero_boundary_xmod(A: GroupWithOps, B: GroupWithOps, name="") -> CrossedModule:
    """``(A, B, 0)`` with trivial actions; a crossed module iff ``A`` is singular."""
    return CrossedModule(
        A, B, ActionSet.trivial(B, A), Morphism.zero(A, B),
        name=name or f"({A.name},{B.name},0)",
    )


def zero_xmod(B: GroupWithOps) -> CrossedModule:
    return zero_boundary_xmod(trivial_gwo(B.signature), B, name=f"(0,{B.name},0)")


# --------------------------------------------------------------------------
# subcrossed modules
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SubXMod:
    parent: CrossedModule
    S: tuple[int, ...]
    T: tuple[int, ...]
    is_sub: bool
    is_normal: bool


@dataclass(frozen=True)
class NormalityReport:
    ncm1: bool
    ncm2: bool
    ncm3: bool
    ncm4: bool
    ncm5: bool
    s_is_ideal: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def normal(self) -> bool:
        return self.ncm1 and self.ncm2 and self.ncm3 and self.ncm4 and self.ncm5

    def to_dict(self):
        return {
            "NCM1": self.ncm1, "NCM2": self.ncm2, "NCM3": self.ncm3,
            "NCM4": self.ncm4, "NCM5": self.ncm5, "S_is_ideal": self.s_is_ideal,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def is_subxmod(X: CrossedModule, S, T) -> bool:
    S, T = elements_of(S), elements_of(T)
    if not (is_subobject(X.A, S) and is_subobject(X.B, T)):
        return False
    s_mask = np.zeros(X.A.order, dtype=bool)
    s_mask[list(S)] = True
    t_mask = np.zeros(X.B.order, dtype=bool)
    t_mask[list(T)] = True
    if not t_mask[X.boundary.map[list(S)]].all():
        return False
    sub = np.ix_(list(T), list(S))
    return bool(s_mask[X.acts.dot[sub]].all()) and all(
        s_mask[St[sub]].all() for St in X.acts.star.values()
    )


def is_normal_subxmod(X: CrossedModule, S, T) -> tuple[bool, NormalityReport]:
    S, T = elements_of(S), elements_of(T)
    if not is_subxmod(X, S, T):
        raise PreconditionError(f"({list(S)}, {list(T)}) is not a subcrossed module")
    res = closure_conditions(X.acts, S, T)
    report = NormalityReport(
        is_ideal(X.B, T), res["b"][0], res["c"][0], res["d"][0], res["e"][0],
        is_ideal(X.A, S),
        {f"NCM{i}": res[k][1] for i, k in zip((2, 3, 4, 5), "bcde") if res[k][1] is not None},
    )
    return report.normal, report


def subxmod(X: CrossedModule, S, T) -> SubXMod:
    S, T = elements_of(S), elements_of(T)
    sub = is_subxmod(X, S, T)
    return SubXMod(X, S, T, sub, sub and is_normal_subxmod(X, S, T)[0])


def sub_crossed_module(X: CrossedModule, S, T) -> tuple[CrossedModule, XModMorphism]:
    """``(S, T, α|)`` as a crossed module with its inclusion morphism."""
    S, T = elements_of(S), elements_of(T)
    if not is_subxmod(X, S, T):
        raise PreconditionError(f"({list(S)}, {list(T)}) is not a subcrossed module")
    SA, iS = restrict(X.A, S)
    TB, iT = restrict(X.B, T)
    pos_s = np.full(X.A.order, -1, dtype=np.int64)
    pos_s[list(S)] = np.arange(len(S))
    pos_t = np.full(X.B.order, -1, dtype=np.int64)
    pos_t[list(T)] = np.arange(len(T))
    sub = np.ix_(list(T), list(S))
    acts = ActionSet(TB, SA, pos_s[X.acts.dot[sub]], {k: pos_s[v[sub]] for k, v in X.acts.star.items()})
    sigma = Morphism(SA, TB, pos_t[X.boundary.map[list(S)]])
    Y = CrossedModule(SA, TB, acts, sigma)
    return Y, XModMorphism(Y, X, iS, iT)


# --------------------------------------------------------------------------
# quotients and kernels
# --------------------------------------------------------------------------


def quotient_xmod(X: CrossedModule, S, T) -> tuple[CrossedModule, XModMorphism]:
    """``(A/S, B/T, α*)`` with the projection morphism."""
    S, T = elements_of(S), elements_of(T)
    if not is_subxmod(X, S, T) or not is_normal_subxmod(X, S, T)[0]:
        raise NotNormalError(f"({list(S)}, {list(T)}) is not a normal subcrossed module")
    QA, pA = quotient_gwo(X.A, S)
    QB, pB = quotient_gwo(X.B, T)
    acts = induced_action(X.acts, pA, pB)
    reps = np.array(QA.labels)
    alpha = Morphism(QA, QB, pB.map[X.boundary.map[reps]])
    Q = CrossedModule(QA, QB, acts, alpha, name=f"{X.name}/({len(S)},{len(T)})" if X.name else "")
    return Q, XModMorphism(X, Q, pA, pB)


def xmod_kernel(m: XModMorphism) -> SubXMod:
    kf, _ = kernel_and_image(m.f)
    kg, _ = kernel_and_image(m.g)
    return subxmod(m.dom, kf.elements, kg.elements)


def isomorphism_theorem(m: XModMorphism) -> tuple[SubXMod, IsoWitness]:
    """Image subcrossed module of ``m`` and the isomorphism from the quotient
    by the kernel, ``[a] -> f(a)``, ``[b] -> g(b)``."""
    X, Y = m.dom, m.cod
    K = xmod_kernel(m)
    _, imf = kernel_and_image(m.f)
    _, img = kernel_and_image(m.g)
    image = subxmod(Y, imf.elements, img.elements)
    Im, _ = sub_crossed_module(Y, imf.elements, img.elements)
    Q, _ = quotient_xmod(X, K.S, K.T)
    pos_a = np.full(Y.A.order, -1, dtype=np.int64)
    pos_a[list(imf.elements)] = np.arange(len(imf.elements))
    pos_b = np.full(Y.B.order, -1, dtype=np.int64)
    pos_b[list(img.elements)] = np.arange(len(img.elements))
    ft = Morphism(Q.A, Im.A, pos_a[m.f.map[list(Q.A.labels)]])
    gt = Morphism(Q.B, Im.B, pos_b[m.g.map[list(Q.B.labels)]])
    return image, xmod_iso(XModMorphism(Q, Im, ft, gt))


def semidirect_quotient_iso(X: CrossedModule, S, T) -> IsoWitness:
    """``A/S ⋊ B/T -> (A ⋊ B)/(S ⋊ T)``, ``([a],[b]) -> [(a,b)]``."""
    Q, _ = quotient_xmod(X, S, T)
    left = semidirect(Q.A, Q.B, Q.acts)
    E = semidirect(X.A, X.B, X.acts)
    right, pr = quotient_gwo(E, semidirect_subset(elements_of(S), elements_of(T), X.B.order))
    ra = np.repeat(np.array(Q.A.labels), Q.B.order)
    rb = np.tile(np.array(Q.B.labels), Q.A.order)
    phi = Morphism(left, right, pr.map[ra * X.B.order + rb])
    return IsoWitness(phi, phi.inverse_map())


def is_covering_xmod(m: XModMorphism) -> bool:
    return is_isomorphism(m.f)
