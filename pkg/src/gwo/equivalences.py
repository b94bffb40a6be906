"""Functors between crossed modules, internal groupoids and cat¹-groups.

``gpd_to_xmod`` and ``xmod_to_gpd`` pass between groupoids and crossed
modules, ``xmod_to_cat1`` and ``cat1_to_xmod`` between crossed modules and
cat¹-groups.  Each roundtrip returns an :class:`IsoWitness` that has already
been verified.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import ActionSet, semidirect, semidirect_subset
from .cat1 import (
    Cat1Group,
    Cat1Morphism,
    is_covering_cat1,
    is_normal_subcat1,
    quotient_cat1,
)
from .core import GroupWithOps, Morphism, elements_of, restrict
from .errors import InconsistencyError, NotCoveringError, NotNormalError
from .groupoid import (
    GpdMorphism,
    InternalGroupoid,
    SubGroupoid,
    internal_quotient,
    is_covering_gpd,
    is_internal_normal_subgroupoid,
)
from .witness import IsoWitness
from .xmod import (
    CrossedModule,
    XModMorphism,
    is_covering_xmod,
    is_normal_subxmod,
    is_subxmod,
    quotient_xmod,
    semidirect_quotient_iso,
    xmod_iso,
)


def _positions(elems, n) -> np.ndarray:
    pos = np.full(n, -1, dtype=np.int64)
    pos[list(elems)] = np.arange(len(elems))
    return pos


def _acting_by(G: GroupWithOps, actors, acted, name="") -> tuple[GroupWithOps, GroupWithOps, ActionSet]:
    """Substructures on ``actors`` and ``acted`` (an ideal) with actions by
    conjugation and by the operations of ``G``."""
    B, _ = restrict(G, actors)
    A, _ = restrict(G, acted)
    pos = _positions(acted, G.order)
    b, a = np.array(actors)[:, None], np.array(acted)[None, :]
    AT, N = G.add_table, G.neg_table
    dot = pos[AT[AT[b, a], N[b]]]
    star = {s: pos[T[b, a]] for s, T in G.binary_tables.items()}
    return A, B, ActionSet(B, A, dot, star)


# --------------------------------------------------------------------------
# object functors
# --------------------------------------------------------------------------


def gpd_to_xmod(G: InternalGroupoid) -> CrossedModule:
    """``(Ker d0, G0, d1|)`` with ``b·a = ε(b) + a - ε(b)`` and ``b s a = ε(b) s a``."""
    K = tuple(int(x) for x in np.flatnonzero(G.d0.map == G.objects.zero))
    A, _ = restrict(G.arrows, K)
    units = G.eps.map
    pos = _positions(K, G.arrows.order)
    e, k = units[:, None], np.array(K)[None, :]
    AT, N = G.arrows.add_table, G.arrows.neg_table
    dot = pos[AT[AT[e, k], N[e]]]
    star = {s: pos[T[e, k]] for s, T in G.arrows.binary_tables.items()}
    acts = ActionSet(G.objects, A, dot, star)
    return CrossedModule(A, G.objects, acts, Morphism(A, G.objects, G.d1.map[list(K)]),
                         name=f"delta({G.name})" if G.name else "")


def xmod_to_gpd(X: CrossedModule) -> InternalGroupoid:
    """Arrows ``A ⋊ B``: ``(a, b): b -> α(a) + b``, units ``(0, b)``."""
    E = semidirect(X.A, X.B, X.acts)
    nb = X.B.order
    e = np.arange(E.order)
    a, b = e // nb, e % nb
    d1 = X.B.add_table[X.boundary.map[a], b]
    return InternalGroupoid(
        X.B, E,
        Morphism(E, X.B, b), Morphism(E, X.B, d1),
        Morphism(X.B, E, X.A.zero * nb + np.arange(nb)),
        name=f"eta({X.name})" if X.name else "",
    )


def xmod_to_cat1(X: CrossedModule) -> Cat1Group:
    """``(A ⋊ B, s, t)``, ``s(a, b) = (0, b)``, ``t(a, b) = (0, α(a) + b)``."""
    E = semidirect(X.A, X.B, X.acts)
    nb = X.B.order
    e = np.arange(E.order)
    a, b = e // nb, e % nb
    z = X.A.zero * nb
    return Cat1Group(
        E,
        Morphism(E, E, z + b),
        Morphism(E, E, z + X.B.add_table[X.boundary.map[a], b]),
        name=f"theta({X.name})" if X.name else "",
    )


def cat1_to_xmod(C: Cat1Group) -> CrossedModule:
    """``(Ker s, Im s, t|)`` with actions by conjugation and the operations of ``G``."""
    K, I = C.ker_s, C.im_s
    A, B, acts = _acting_by(C.G, I, K)
    posI = _positions(I, C.G.order)
    boundary = posI[C.t.map[list(K)]]
    if (boundary < 0).any():
        raise InconsistencyError("t does not send Ker s into Im s")
    return CrossedModule(A, B, acts, Morphism(A, B, boundary), name=f"delta1({C.name})" if C.name else "")


def gpd_to_cat1(G: InternalGroupoid) -> Cat1Group:
    return xmod_to_cat1(gpd_to_xmod(G))


# --------------------------------------------------------------------------
# natural isomorphisms
# --------------------------------------------------------------------------


def _verified(forward, backward) -> IsoWitness:
    return IsoWitness(forward, backward)


def roundtrip_xmod_cat1(X: CrossedModule) -> IsoWitness:
    """``X -> δ¹θ(X)``: ``a -> (a, 0)``, ``b -> (0, b)``."""
    Y = cat1_to_xmod(xmod_to_cat1(X))
    nb = X.B.order
    C = xmod_to_cat1(X)
    posK = _positions(C.ker_s, C.G.order)
    posI = _positions(C.im_s, C.G.order)
    f = posK[np.arange(X.A.order) * nb + X.B.zero]
    g = posI[X.A.zero * nb + np.arange(nb)]
    return xmod_iso(XModMorphism(X, Y, Morphism(X.A, Y.A, f), Morphism(X.B, Y.B, g)))


def roundtrip_cat1(C: Cat1Group) -> IsoWitness:
    """``μ: θδ¹(C) -> C``, ``(k, s(b)) -> k + s(b)``."""
    X = cat1_to_xmod(C)
    D = xmod_to_cat1(X)
    K, I = np.array(C.ker_s), np.array(C.im_s)
    e = np.arange(D.G.order)
    mu = C.G.add_table[K[e // len(I)], I[e % len(I)]]
    fwd = Cat1Morphism(D, C, Morphism(D.G, C.G, mu))
    if not fwd.f.is_bijective():
        raise InconsistencyError("μ is not bijective")
    return _verified(fwd, fwd.inverse())


def roundtrip_xmod_gpd(X: CrossedModule) -> IsoWitness:
    """``X -> δη(X)``: ``a -> (a, 0)`` onto ``Ker d0``, identity on ``B``."""
    G = xmod_to_gpd(X)
    Y = gpd_to_xmod(G)
    nb = X.B.order
    K = np.flatnonzero(G.d0.map == G.objects.zero)
    posK = _positions(K, G.arrows.order)
    f = posK[np.arange(X.A.order) * nb + X.B.zero]
    return xmod_iso(XModMorphism(X, Y, Morphism(X.A, Y.A, f), Morphism(X.B, Y.B, np.arange(nb))))


def roundtrip_gpd(G: InternalGroupoid) -> IsoWitness:
    """``ηδ(G) -> G``, ``(a, b) -> a + ε(b)`` on arrows and the identity on objects."""
    X = gpd_to_xmod(G)
    H = xmod_to_gpd(X)
    K = np.flatnonzero(G.d0.map == G.objects.zero)
    nb = G.objects.order
    e = np.arange(H.arrows.order)
    arrows = G.arrows.add_table[K[e // nb], G.eps.map[e % nb]]
    fwd = GpdMorphism(H, G, Morphism(H.arrows, G.arrows, arrows), Morphism(H.objects, G.objects, np.arange(nb)))
    if not fwd.arrows.is_bijective():
        raise InconsistencyError("(a, b) -> a + ε(b) is not bijective")
    return _verified(fwd, fwd.inverse())


# --------------------------------------------------------------------------
# normality transport
# --------------------------------------------------------------------------

DIRECTIONS = ("xmod->gpd", "xmod->cat1", "gpd->xmod", "cat1->xmod")


@dataclass(frozen=True, eq=False)
class NormalTransport:
    direction: str
    source: object
    target: object
    transported: object
    normal: bool
    quotient_witness: IsoWitness


def transport_normality(direction: str, obj, candidate) -> NormalTransport:
    """Move a normal subobject along a functor and check the quotients correspond.

    ``candidate`` is ``(S, T)`` for a crossed module, a :class:`SubGroupoid`
    or ``(N1, N0)`` for a groupoid and a subset for a cat¹-group.
    """
    if direction == "xmod->gpd":
        return _xmod_to_gpd_normal(obj, *candidate)
    if direction == "xmod->cat1":
        return _xmod_to_cat1_normal(obj, *candidate)
    if direction == "gpd->xmod":
        N = candidate if isinstance(candidate, SubGroupoid) else SubGroupoid(obj, *candidate)
        return _gpd_to_xmod_normal(obj, N)
    if direction == "cat1->xmod":
        return _cat1_to_xmod_normal(obj, elements_of(candidate))
    raise ValueError(f"unknown direction {direction!r}; expected one of {DIRECTIONS}")


def _require_normal_pair(X, S, T):
    if not is_subxmod(X, S, T) or not is_normal_subxmod(X, S, T)[0]:
        raise NotNormalError("source is not a normal subcrossed module")


def _xmod_to_gpd_normal(X, S, T):
    S, T = elements_of(S), elements_of(T)
    _require_normal_pair(X, S, T)
    G = xmod_to_gpd(X)
    N = SubGroupoid(G, semidirect_subset(S, T, X.B.order), T)
    normal = is_internal_normal_subgroupoid(G, N)
    if not normal:
        raise InconsistencyError("η does not preserve normality here")
    Q, _ = quotient_xmod(X, S, T)
    GQ = xmod_to_gpd(Q)
    GN, _ = internal_quotient(G, N)
    phi = semidirect_quotient_iso(X, S, T).forward
    fwd = GpdMorphism(GQ, GN, Morphism(GQ.arrows, GN.arrows, phi.map),
                      Morphism(GQ.objects, GN.objects, np.arange(GQ.objects.order)))
    return NormalTransport("xmod->gpd", X, G, N, normal, _verified(fwd, fwd.inverse()))


def _xmod_to_cat1_normal(X, S, T):
    S, T = elements_of(S), elements_of(T)
    _require_normal_pair(X, S, T)
    C = xmod_to_cat1(X)
    N = semidirect_subset(S, T, X.B.order)
    normal = is_normal_subcat1(C, N)
    if not normal:
        raise InconsistencyError("θ does not preserve normality here")
    Q, _ = quotient_xmod(X, S, T)
    CQ = xmod_to_cat1(Q)
    CN, _ = quotient_cat1(C, N)
    phi = semidirect_quotient_iso(X, S, T).forward
    fwd = Cat1Morphism(CQ, CN, Morphism(CQ.G, CN.G, phi.map))
    return NormalTransport("xmod->cat1", X, C, N, normal, _verified(fwd, fwd.inverse()))


def _class_map(sub_elems, quotient_proj, target_elems, n) -> np.ndarray:
    """Send ``[x]`` (indexed by least representatives ``sub_elems``) to the
    position of ``quotient_proj(x)`` in ``target_elems``."""
    pos = _positions(target_elems, n)
    out = pos[quotient_proj.map[list(sub_elems)]]
    if (out < 0).any():
        raise InconsistencyError("class map leaves the target")
    return out


def _gpd_to_xmod_normal(G, N):
    if not is_internal_normal_subgroupoid(G, N):
        raise NotNormalError("source is not an internal normal subgroupoid")
    X = gpd_to_xmod(G)
    K = tuple(int(x) for x in np.flatnonzero(G.d0.map == G.objects.zero))
    posK = _positions(K, G.arrows.order)
    S = tuple(int(posK[a]) for a in N.N1 if posK[a] >= 0)
    T = N.N0
    normal = is_subxmod(X, S, T) and is_normal_subxmod(X, S, T)[0]
    if not normal:
        raise InconsistencyError("δ does not preserve normality here")
    Q, _ = quotient_xmod(X, S, T)
    GN, proj = internal_quotient(G, N)
    Y = gpd_to_xmod(GN)
    KN = np.flatnonzero(GN.d0.map == GN.objects.zero)
    reps = np.array(K)[list(Q.A.labels)]
    f = _class_map(reps, proj.arrows, KN, GN.arrows.order)
    fwd = XModMorphism(Q, Y, Morphism(Q.A, Y.A, f), Morphism(Q.B, Y.B, np.arange(Q.B.order)))
    return NormalTransport("gpd->xmod", G, X, (S, T), normal, xmod_iso(fwd))


def _cat1_to_xmod_normal(C, N):
    if not is_normal_subcat1(C, N):
        raise NotNormalError("source is not a normal subcat¹-group")
    X = cat1_to_xmod(C)
    K, I = C.ker_s, C.im_s
    inside = set(N)
    S = tuple(i for i, k in enumerate(K) if k in inside)
    T = tuple(i for i, b in enumerate(I) if b in inside)
    normal = is_subxmod(X, S, T) and is_normal_subxmod(X, S, T)[0]
    if not normal:
        raise InconsistencyError("δ¹ does not preserve normality here")
    Q, _ = quotient_xmod(X, S, T)
    CN, proj = quotient_cat1(C, N)
    Y = cat1_to_xmod(CN)
    f = _class_map(np.array(K)[list(Q.A.labels)], proj.f, CN.ker_s, CN.G.order)
    g = _class_map(np.array(I)[list(Q.B.labels)], proj.f, CN.im_s, CN.G.order)
    fwd = XModMorphism(Q, Y, Morphism(Q.A, Y.A, f), Morphism(Q.B, Y.B, g))
    return NormalTransport("cat1->xmod", C, X, (S, T), normal, xmod_iso(fwd))


# --------------------------------------------------------------------------
# morphisms and coverings
# --------------------------------------------------------------------------

COVERING_DIRECTIONS = ("xmod->gpd", "xmod->cat1", "gpd->xmod", "cat1->xmod")


def _product_map(m: XModMorphism) -> np.ndarray:
    nb, nb2 = m.dom.B.order, m.cod.B.order
    e = np.arange(m.dom.A.order * nb)
    return m.f.map[e // nb] * nb2 + m.g.map[e % nb]


def transport_morphism(direction: str, m):
    """Image of a morphism under one of the functors."""
    if direction == "xmod->gpd":
        G, H = xmod_to_gpd(m.dom), xmod_to_gpd(m.cod)
        out = GpdMorphism(G, H, Morphism(G.arrows, H.arrows, _product_map(m)), Morphism(G.objects, H.objects, m.g.map))
    elif direction == "xmod->cat1":
        C, D = xmod_to_cat1(m.dom), xmod_to_cat1(m.cod)
        out = Cat1Morphism(C, D, Morphism(C.G, D.G, _product_map(m)))
    elif direction == "gpd->xmod":
        X, Y = gpd_to_xmod(m.dom), gpd_to_xmod(m.cod)
        K = np.flatnonzero(m.dom.d0.map == m.dom.objects.zero)
        K2 = np.flatnonzero(m.cod.d0.map == m.cod.objects.zero)
        f = _positions(K2, m.cod.arrows.order)[m.arrows.map[K]]
        out = XModMorphism(X, Y, Morphism(X.A, Y.A, f), Morphism(X.B, Y.B, m.objects.map))
    elif direction == "cat1->xmod":
        X, Y = cat1_to_xmod(m.dom), cat1_to_xmod(m.cod)
        n = m.cod.G.order
        f = _positions(m.cod.ker_s, n)[m.f.map[list(m.dom.ker_s)]]
        g = _positions(m.cod.im_s, n)[m.f.map[list(m.dom.im_s)]]
        out = XModMorphism(X, Y, Morphism(X.A, Y.A, f), Morphism(X.B, Y.B, g))
    else:
        raise ValueError(f"unknown direction {direction!r}; expected one of {COVERING_DIRECTIONS}")
    v = out.first_violation()
    if v is not None:
        raise InconsistencyError(f"transported morphism is invalid: {v}")
    return out


def is_covering(m) -> bool:
    if isinstance(m, XModMorphism):
        return is_covering_xmod(m)
    if isinstance(m, GpdMorphism):
        return is_covering_gpd(m)
    if isinstance(m, Cat1Morphism):
        return is_covering_cat1(m)
    raise TypeError(f"not a structure morphism: {type(m).__name__}")


@dataclass(frozen=True, eq=False)
class CoveringTransport:
    direction: str
    source_covering: bool
    morphism: object
    covering: bool


def covering_transport(direction: str, m, *, require_covering: bool = True) -> CoveringTransport:
    src = is_covering(m)
    if require_covering and not src:
        raise NotCoveringError("source morphism is not a covering")
    out = transport_morphism(direction, m)
    return CoveringTransport(direction, src, out, is_covering(out))
