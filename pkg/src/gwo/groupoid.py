"""Internal groupoids in groups with operations.

Composition is never stored.  It is always computed as
``b ∘ a = b - 1_y + a`` for ``d0(b) = y = d1(a)``, and the inverse as
``a⁻¹ = 1_{d1 a} - a + 1_{d0 a}``; validation then checks that these
computed operations obey the groupoid and interchange laws.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .core import (
    GroupWithOps,
    Morphism,
    ValidationReport,
    Violation,
    _check,
    direct_product,
    elements_of,
    enumerate_ideals,
    is_ideal,
    is_isomorphism,
    is_subobject,
    morphism_violation,
    quotient_gwo,
    restrict,
    validate_gwo,
)
from .errors import (
    IllDefinedError,
    InconsistencyError,
    NotCoveringError,
    NotNormalError,
    PreconditionError,
    SignatureMismatchError,
    StructureError,
)

_CHUNK = 1 << 21


@dataclass(frozen=True, eq=False)
class InternalGroupoid:
    objects: GroupWithOps
    arrows: GroupWithOps
    d0: Morphism
    d1: Morphism
    eps: Morphism
    name: str = ""

    def __post_init__(self):
        if self.objects.signature != self.arrows.signature:
            raise SignatureMismatchError("objects and arrows have different signatures")
        n0, n1 = self.objects.order, self.arrows.order
        for label, m, shape in (("d0", self.d0, (n1, n0)), ("d1", self.d1, (n1, n0)), ("eps", self.eps, (n0, n1))):
            if (m.dom.order, m.cod.order) != shape:
                raise StructureError(f"{label} has the wrong domain or codomain")

    def unit(self, x) -> int:
        return int(self.eps.map[x])

    def source(self, a) -> int:
        return int(self.d0.map[a])

    def target(self, a) -> int:
        return int(self.d1.map[a])

    def composable(self, b, a) -> bool:
        return self.d0.map[b] == self.d1.map[a]

    def compose(self, b, a) -> int:
        """``b ∘ a`` (first ``a``, then ``b``)."""
        if not self.composable(b, a):
            raise PreconditionError(f"{b} ∘ {a} is not defined")
        G1 = self.arrows
        return G1.sum(b, G1.neg(self.unit(self.target(a))), a)

    def inverse(self, a) -> int:
        G1 = self.arrows
        return G1.sum(self.unit(self.target(a)), G1.neg(a), self.unit(self.source(a)))

    def compose_arrays(self, b, a) -> np.ndarray:
        A, N = self.arrows.add_table, self.arrows.neg_table
        return A[A[b, N[self.eps.map[self.d1.map[a]]]], a]

    def inverse_table(self) -> np.ndarray:
        A, N = self.arrows.add_table, self.arrows.neg_table
        r = np.arange(self.arrows.order)
        return A[A[self.eps.map[self.d1.map], N], self.eps.map[self.d0.map[r]]]

    def composable_pairs(self) -> np.ndarray:
        """All ``(b, a)`` with ``d0(b) = d1(a)``, as an ``(M, 2)`` array."""
        b, a = np.nonzero(self.d0.map[:, None] == self.d1.map[None, :])
        return np.stack([b, a], axis=1)

    def __repr__(self):
        return f"<InternalGroupoid {self.name} |G0|={self.objects.order} |G1|={self.arrows.order}>"


def validate_internal_gpd(G: InternalGroupoid) -> ValidationReport:
    rep = ValidationReport()
    rep.extend(validate_gwo(G.objects), "objects: ")
    rep.extend(validate_gwo(G.arrows), "arrows: ")
    for label, m in (("d0", G.d0), ("d1", G.d1), ("eps", G.eps)):
        v = morphism_violation(m)
        if v is not None:
            rep.violations.append(Violation(f"{label}: {v.axiom}", v.witness, v.detail))
    r0 = np.arange(G.objects.order)
    d0, d1, eps = G.d0.map, G.d1.map, G.eps.map
    _check(rep, "d0∘ε = id", d0[eps] == r0)
    _check(rep, "d1∘ε = id", d1[eps] == r0)
    if not rep.ok:
        return rep

    P = G.composable_pairs()
    b, a = P[:, 0], P[:, 1]
    comp = G.compose_arrays(b, a)
    _check(rep, "source of composite", d0[comp] == d0[a])
    _check(rep, "target of composite", d1[comp] == d1[b])
    r1 = np.arange(G.arrows.order)
    _check(rep, "left unit", G.compose_arrays(eps[d1], r1) == r1)
    _check(rep, "right unit", G.compose_arrays(r1, eps[d0]) == r1)
    inv = G.inverse_table()
    _check(rep, "inverse composable", (d0[inv] == d1) & (d1[inv] == d0))
    if rep.ok:
        _check(rep, "inverse∘a = 1_{d0 a}", G.compose_arrays(inv, r1) == eps[d0])
        _check(rep, "a∘inverse = 1_{d1 a}", G.compose_arrays(r1, inv) == eps[d1])
        v = morphism_violation(Morphism(G.arrows, G.arrows, inv))
        if v is not None:
            rep.violations.append(Violation("inverse map: " + v.axiom, v.witness, v.detail))
    _check_associativity(rep, G, P, comp)
    _check_interchange(rep, G, P, comp)
    return rep


def _check_associativity(rep, G, P, comp):
    # pairs (c, b) followed by a with d0(b) = d1(a): c∘(b∘a) = (c∘b)∘a
    d0, d1 = G.d0.map, G.d1.map
    by_first = {}
    for k, (bb, aa) in enumerate(P):
        by_first.setdefault(int(bb), []).append(k)
    for k, (c, bb) in enumerate(P):
        ks = by_first.get(int(bb))
        if not ks:
            continue
        aa = P[ks, 1]
        left = G.compose_arrays(np.full(len(ks), c), comp[ks])
        right = G.compose_arrays(np.full(len(ks), comp[k]), aa)
        bad = np.flatnonzero(left != right)
        if len(bad):
            rep.add("associativity of ∘", (int(c), int(bb), int(aa[bad[0]])))
            return


def _check_interchange(rep, G, P, comp):
    """(a s b) ∘ (c s d) = (a ∘ c) s (b ∘ d) for composable (a, c) and (b, d)."""
    d0, d1 = G.d0.map, G.d1.map
    M = len(P)
    a_all, c_all = P[:, 0], P[:, 1]
    ops = G.arrows.all_binary()
    step = max(1, _CHUNK // max(M, 1))
    for s, T in ops.items():
        for start in range(0, M, step):
            p = np.arange(start, min(M, start + step))[:, None]
            q = np.arange(M)[None, :]
            left_b = T[a_all[p], a_all[q]]
            left_a = T[c_all[p], c_all[q]]
            ok = d0[left_b] == d1[left_a]
            lhs = G.compose_arrays(left_b, left_a)
            rhs = T[comp[p], comp[q]]
            ok &= lhs == rhs
            if not ok.all():
                i, j = np.argwhere(~ok)[0]
                i = i + start
                rep.add(
                    f"interchange[{s}]",
                    (int(a_all[i]), int(a_all[j]), int(c_all[i]), int(c_all[j])),
                    "(a s b)∘(c s d) != (a∘c) s (b∘d)",
                )
                break
    for w, W in G.arrows.all_unary().items():
        ok = W[comp] == G.compose_arrays(W[a_all], W[c_all])
        if not ok.all():
            k = int(np.flatnonzero(~ok)[0])
            rep.add(f"functorial[{w}]", (int(a_all[k]), int(c_all[k])))


# --------------------------------------------------------------------------
# examples and morphisms
# --------------------------------------------------------------------------


def pair_groupoid(A: GroupWithOps) -> InternalGroupoid:
    """Arrows ``(a, b): a -> b`` on ``A × A`` (encoded ``a * |A| + b``)."""
    G1 = direct_product(A, A, name=f"{A.name}x{A.name}" if A.name else "")
    n = A.order
    e = np.arange(G1.order)
    r = np.arange(n)
    return InternalGroupoid(
        A, G1, Morphism(G1, A, e // n), Morphism(G1, A, e % n), Morphism(A, G1, r * n + r),
        name=f"pair({A.name})",
    )


@dataclass(frozen=True, eq=False)
class GpdMorphism:
    dom: InternalGroupoid
    cod: InternalGroupoid
    arrows: Morphism
    objects: Morphism

    @property
    def components(self):
        return (self.arrows, self.objects)

    def first_violation(self) -> Violation | None:
        for label, m in (("arrows", self.arrows), ("objects", self.objects)):
            v = morphism_violation(m)
            if v is not None:
                return Violation(f"{label}: {v.axiom}", v.witness, v.detail)
        G, H = self.dom, self.cod
        f1, f0 = self.arrows.map, self.objects.map
        rep = ValidationReport()
        for label, ok in (
            ("commutes with d0", f0[G.d0.map] == H.d0.map[f1]),
            ("commutes with d1", f0[G.d1.map] == H.d1.map[f1]),
            ("commutes with ε", f1[G.eps.map] == H.eps.map[f0]),
        ):
            if not _check(rep, label, ok):
                return rep.violations[0]
        return None

    def then(self, other: "GpdMorphism") -> "GpdMorphism":
        return GpdMorphism(self.dom, other.cod, self.arrows.then(other.arrows), self.objects.then(other.objects))

    def inverse(self) -> "GpdMorphism":
        return GpdMorphism(self.cod, self.dom, self.arrows.inverse_map(), self.objects.inverse_map())

    @classmethod
    def identity(cls, G: InternalGroupoid) -> "GpdMorphism":
        return cls(G, G, Morphism.identity(G.arrows), Morphism.identity(G.objects))


# --------------------------------------------------------------------------
# hom sets
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HomQuery:
    star: tuple[int, ...]
    costar: tuple[int, ...]
    hom: tuple[int, ...]
    object_group: tuple[int, ...]


def hom_queries(G: InternalGroupoid, x: int, y: int) -> HomQuery:
    """Star at ``x``, costar at ``y``, ``G(x, y)`` and the object group ``G(x)``."""
    d0, d1 = G.d0.map, G.d1.map
    star = tuple(int(a) for a in np.flatnonzero(d0 == x))
    costar = tuple(int(a) for a in np.flatnonzero(d1 == y))
    hom = tuple(sorted(set(star) & set(costar)))
    vertex = tuple(int(a) for a in np.flatnonzero((d0 == x) & (d1 == x)))
    return HomQuery(star, costar, hom, vertex)


# --------------------------------------------------------------------------
# subgroupoids
# --------------------------------------------------------------------------


def is_subgroupoid(G: InternalGroupoid, N1, N0) -> bool:
    N1, N0 = elements_of(N1), elements_of(N0)
    if not N1:
        return not N0
    m1 = np.zeros(G.arrows.order, dtype=bool)
    m1[list(N1)] = True
    m0 = np.zeros(G.objects.order, dtype=bool)
    m0[list(N0)] = True
    if not (m0[G.d0.map[m1]].all() and m0[G.d1.map[m1]].all() and m1[G.eps.map[m0]].all()):
        return False
    pb, pa, comp, inv = _closure_data(G)
    return bool(m1[inv[m1]].all() and m1[comp[m1[pb] & m1[pa]]].all())


@dataclass(frozen=True, eq=False)
class SubGroupoid:
    """``(N1, N0)`` inside ``parent``; flags are computed on first access."""

    parent: InternalGroupoid
    N1: tuple[int, ...]
    N0: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "N1", elements_of(self.N1))
        object.__setattr__(self, "N0", elements_of(self.N0))

    @cached_property
    def is_subgroupoid(self) -> bool:
        return is_subgroupoid(self.parent, self.N1, self.N0)

    @cached_property
    def is_wide(self) -> bool:
        return len(self.N0) == self.parent.objects.order

    @cached_property
    def is_normal_higgins(self) -> bool:
        return self.is_subgroupoid and self.is_wide and is_normal_subgroupoid_higgins(self.parent, self)

    @cached_property
    def is_internal_normal(self) -> bool:
        return is_internal_normal_subgroupoid(self.parent, self)

    def vertex_group(self, x) -> tuple[int, ...]:
        d0, d1 = self.parent.d0.map, self.parent.d1.map
        return tuple(a for a in self.N1 if d0[a] == x and d1[a] == x)

    def is_transitive(self) -> bool:
        return len(_components(self.parent, self.N1, self.N0)) <= 1


def _components(G, N1, N0) -> list[frozenset[int]]:
    parent = {x: x for x in N0}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in N1:
        x, y = find(int(G.d0.map[a])), find(int(G.d1.map[a]))
        if x != y:
            parent[max(x, y)] = min(x, y)
    groups: dict[int, set[int]] = {}
    for x in N0:
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def _as_sub(G, N) -> SubGroupoid:
    if isinstance(N, SubGroupoid):
        return N
    N1, N0 = N
    return SubGroupoid(G, N1, N0)


@dataclass(frozen=True)
class HigginsVerdict:
    coset: bool
    lemma: bool
    coset_witness: tuple | None = None
    lemma_witness: tuple | None = None


def higgins_normality(G: InternalGroupoid, N) -> HigginsVerdict:
    """Both normality tests for a wide subgroupoid, computed independently.

    ``coset``: ``g ∘ N(x) = N(y) ∘ g`` for every ``g: x -> y``.
    ``lemma``: ``-1_x + N(x) = -1_y + N(y)`` whenever ``G(x, y)`` is nonempty.
    """
    N = _as_sub(G, N)
    if not N.is_subgroupoid:
        raise PreconditionError("not a subgroupoid")
    if not N.is_wide:
        raise PreconditionError("normality is only defined for wide subgroupoids")
    G1 = G.arrows
    d0, d1 = G.d0.map, G.d1.map
    n_arr = np.array(N.N1, dtype=np.int64)
    loops = n_arr[d0[n_arr] == d1[n_arr]]
    vg = {x: loops[d0[loops] == x] for x in G.objects.elements}
    coset, cw = True, None
    first_bad = G1.order
    for x, y in sorted(set(zip(d0.tolist(), d1.tolist()))):
        gs = np.flatnonzero((d0 == x) & (d1 == y))
        if len(vg[x]) != len(vg[y]):
            first_bad = min(first_bad, int(gs[0]))
            continue
        left = np.sort(G.compose_arrays(gs[:, None], vg[x][None, :]), axis=1)
        right = np.sort(G.compose_arrays(vg[y][None, :], gs[:, None]), axis=1)
        bad = np.flatnonzero((left != right).any(axis=1))
        if len(bad):
            first_bad = min(first_bad, int(gs[bad[0]]))
    if first_bad < G1.order:
        coset, cw = False, (first_bad,)
    shifted = {x: frozenset(G1.add_table[G1.neg_table[G.unit(x)], v].tolist()) for x, v in vg.items()}
    lemma, lw = True, None
    linked = set(zip(d0.tolist(), d1.tolist()))
    for x, y in sorted(linked):
        if shifted[x] != shifted[y]:
            lemma, lw = False, (x, y)
            break
    return HigginsVerdict(coset, lemma, cw, lw)


def is_normal_subgroupoid_higgins(G: InternalGroupoid, N) -> bool:
    verdict = higgins_normality(G, N)
    if verdict.coset != verdict.lemma:
        raise InconsistencyError(f"coset test and shifted vertex-group test disagree: {verdict}")
    return verdict.coset


def is_internal_normal_subgroupoid(G: InternalGroupoid, N) -> bool:
    """Subgroupoid whose arrow set is an ideal of the arrows."""
    N = _as_sub(G, N)
    if not N.is_subgroupoid or not is_subobject(G.arrows, N.N1):
        return False
    if not is_ideal(G.arrows, N.N1):
        return False
    if not is_ideal(G.objects, N.N0):
        raise InconsistencyError("arrow ideal whose object set is not an ideal")
    return True


def _closure_data(G: InternalGroupoid):
    cache = G.__dict__
    if "_closure_data" not in cache:
        P = G.composable_pairs()
        cache["_closure_data"] = (P[:, 0], P[:, 1], G.compose_arrays(P[:, 0], P[:, 1]), G.inverse_table())
    return cache["_closure_data"]


def _close_mask(G: InternalGroupoid, mask: np.ndarray) -> np.ndarray:
    pb, pa, comp, inv = _closure_data(G)
    eps, d0, d1 = G.eps.map, G.d0.map, G.d1.map
    idx = np.flatnonzero(mask)
    mask[eps[d0[idx]]] = True
    mask[eps[d1[idx]]] = True
    while True:
        before = int(mask.sum())
        mask[inv[mask]] = True
        mask[comp[mask[pb] & mask[pa]]] = True
        if int(mask.sum()) == before:
            return mask


def subgroupoid_closure(G: InternalGroupoid, arrows: Iterable[int], objects: Iterable[int] = ()) -> SubGroupoid:
    """Smallest subgroupoid containing the arrows and the identities at ``objects``."""
    mask = np.zeros(G.arrows.order, dtype=bool)
    mask[[int(a) for a in arrows]] = True
    mask[G.eps.map[[int(x) for x in objects]]] = True
    mask = _close_mask(G, mask)
    N1 = np.flatnonzero(mask)
    N0 = set(G.d0.map[N1].tolist()) | set(int(x) for x in objects)
    return SubGroupoid(G, tuple(N1.tolist()), tuple(N0))


def enumerate_wide_subgroupoids(G: InternalGroupoid) -> list[SubGroupoid]:
    """Every wide subgroupoid, as joins of the principal ones."""
    n = G.arrows.order
    base = np.zeros(n, dtype=bool)
    base[G.eps.map] = True
    bottom = frozenset(np.flatnonzero(_close_mask(G, base.copy())).tolist())
    principal = set()
    for a in range(n):
        m = base.copy()
        m[a] = True
        principal.add(frozenset(np.flatnonzero(_close_mask(G, m)).tolist()))
    principal = sorted(principal, key=lambda s: (len(s), sorted(s)))
    found = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for I in frontier:
            for P in principal:
                if P <= I:
                    continue
                m = np.zeros(n, dtype=bool)
                m[list(I | P)] = True
                J = frozenset(np.flatnonzero(_close_mask(G, m)).tolist())
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    every = tuple(G.objects.elements)
    return [SubGroupoid(G, tuple(sorted(J)), every) for J in sorted(found, key=lambda s: (len(s), sorted(s)))]


def enumerate_internal_normal(G: InternalGroupoid, *, wide_only=False, bound=None) -> list[SubGroupoid]:
    """Internal normal subgroupoids: arrow ideals closed as subgroupoids."""
    out = []
    for I in enumerate_ideals(G.arrows, bound=bound):
        N1 = I.elements
        N0 = tuple(sorted({int(G.d0.map[a]) for a in N1} | {int(G.d1.map[a]) for a in N1}))
        N = SubGroupoid(G, N1, N0)
        if not N.is_subgroupoid:
            continue
        if wide_only and not N.is_wide:
            continue
        out.append(N)
    return out


# --------------------------------------------------------------------------
# quotients
# --------------------------------------------------------------------------


def internal_quotient(G: InternalGroupoid, N) -> tuple[InternalGroupoid, GpdMorphism]:
    """``G_N``: objects ``G0/N0``, arrows ``G1/N1`` with induced structure maps."""
    N = _as_sub(G, N)
    if not is_internal_normal_subgroupoid(G, N):
        raise NotNormalError("not an internal normal subgroupoid")
    Q0, p0 = quotient_gwo(G.objects, N.N0)
    Q1, p1 = quotient_gwo(G.arrows, N.N1)
    reps1 = np.array(Q1.labels)
    reps0 = np.array(Q0.labels)
    GN = InternalGroupoid(
        Q0, Q1,
        Morphism(Q1, Q0, p0.map[G.d0.map[reps1]]),
        Morphism(Q1, Q0, p0.map[G.d1.map[reps1]]),
        Morphism(Q0, Q1, p1.map[G.eps.map[reps0]]),
        name=f"{G.name}_N" if G.name else "",
    )
    proj = GpdMorphism(G, GN, p1, p0)
    v = proj.first_violation()
    if v is not None:
        raise InconsistencyError(f"quotient projection is not a groupoid morphism: {v}")
    return GN, proj


@dataclass(frozen=True, eq=False)
class PlainGroupoid:
    """A finite groupoid given by classes; arrows and objects are class indices."""

    object_classes: tuple[frozenset, ...]
    arrow_classes: tuple[frozenset, ...]
    source: tuple[int, ...]
    target: tuple[int, ...]
    composition: dict = field(default_factory=dict)

    def compose(self, h, g):
        return self.composition[h, g]


def higgins_quotient(G: InternalGroupoid, N) -> PlainGroupoid:
    """Quotient groupoid ``G/N`` by a normal (wide) subgroupoid.

    Objects are the components of ``N``; ``g ~ h`` iff ``g = n ∘ h ∘ m`` for
    arrows ``m, n`` of ``N``.  ``[h] ∘ [g]`` is tried on every composable pair
    of representatives and must not depend on the choice.
    """
    N = _as_sub(G, N)
    if not N.is_subgroupoid or not N.is_wide:
        raise PreconditionError("needs a wide subgroupoid")
    if not is_normal_subgroupoid_higgins(G, N):
        raise NotNormalError("not a normal subgroupoid")
    d0, d1 = G.d0.map, G.d1.map
    comps = _components(G, N.N1, N.N0)
    obj_class = {x: i for i, c in enumerate(comps) for x in c}
    n_arr = np.array(N.N1)
    cls = np.full(G.arrows.order, -1, dtype=np.int64)
    classes = []
    for h in G.arrows.elements:
        if cls[h] >= 0:
            continue
        ms = n_arr[d1[n_arr] == d0[h]]
        inner = G.compose_arrays(np.full(len(ms), h), ms)
        members = set()
        for k in inner:
            ns = n_arr[d0[n_arr] == d1[k]]
            members.update(int(v) for v in G.compose_arrays(ns, np.full(len(ns), k)))
        if (cls[list(members)] >= 0).any():
            raise InconsistencyError("arrow classes overlap; N is not a subgroupoid")
        cls[list(members)] = len(classes)
        classes.append(frozenset(members))
    source = tuple(obj_class[int(d0[min(c)])] for c in classes)
    target = tuple(obj_class[int(d1[min(c)])] for c in classes)
    composition: dict = {}
    witness: dict = {}
    P = G.composable_pairs()
    comp = G.compose_arrays(P[:, 0], P[:, 1])
    for (h, g), hg in zip(P.tolist(), comp.tolist()):
        key = (int(cls[h]), int(cls[g]))
        val = int(cls[hg])
        if key in composition and composition[key] != val:
            raise IllDefinedError(
                f"[h]∘[g] depends on representatives: {witness[key]} vs {(h, g)}",
                conflict=(witness[key], (h, g)),
            )
        composition[key] = val
        witness.setdefault(key, (h, g))
    return PlainGroupoid(tuple(comps), tuple(classes), source, target, composition)


@dataclass(frozen=True)
class QuotientComparison:
    verdict: str
    transitive: bool
    reason: str = ""


def compare_quotients(G: InternalGroupoid, N) -> QuotientComparison:
    """Compare ``G/N`` with ``G_N`` for a wide internal normal ``N``.

    "equal" means the same number of objects, the same partition of the
    arrows and the same composition under ``[g] -> [g]``.
    """
    N = _as_sub(G, N)
    if not N.is_wide or not is_internal_normal_subgroupoid(G, N):
        raise PreconditionError("needs a wide internal normal subgroupoid")
    GN, proj = internal_quotient(G, N)
    H = higgins_quotient(G, N)
    transitive = len(H.object_classes) == 1
    reason = ""
    if len(H.object_classes) != GN.objects.order:
        reason = f"{len(H.object_classes)} object classes vs {GN.objects.order}"
    else:
        internal_classes = {}
        for a in G.arrows.elements:
            internal_classes.setdefault(int(proj.arrows.map[a]), set()).add(a)
        if set(map(frozenset, internal_classes.values())) != set(H.arrow_classes):
            reason = "arrow partitions differ"
        else:
            to_internal = [int(proj.arrows.map[min(c)]) for c in H.arrow_classes]
            for (h, g), k in H.composition.items():
                if GN.compose(to_internal[h], to_internal[g]) != to_internal[k]:
                    reason = f"composition differs at classes {(h, g)}"
                    break
            else:
                pairs = GN.composable_pairs()
                back = {v: i for i, v in enumerate(to_internal)}
                for hb, ga in pairs.tolist():
                    if (back[hb], back[ga]) not in H.composition:
                        reason = f"classes {(back[hb], back[ga])} composable in G_N only"
                        break
    verdict = "differ" if reason else "equal"
    if (verdict == "equal") != transitive:
        raise InconsistencyError(f"quotients {verdict} but transitive={transitive}: {reason}")
    return QuotientComparison(verdict, transitive, reason)


# --------------------------------------------------------------------------
# kernels and coverings
# --------------------------------------------------------------------------


def gpd_kernel(f: GpdMorphism) -> SubGroupoid:
    """Arrows sent to the identity at 0; always internal normal."""
    H = f.cod
    zero_arrow = H.unit(H.objects.zero)
    N1 = np.flatnonzero(f.arrows.map == zero_arrow)
    N0 = np.flatnonzero(f.objects.map == H.objects.zero)
    K = SubGroupoid(f.dom, tuple(int(a) for a in N1), tuple(int(x) for x in N0))
    if not K.is_internal_normal:
        raise InconsistencyError("kernel of a groupoid morphism is not internal normal")
    return K


def _star_bijective(p: GpdMorphism) -> bool:
    Gt, G = p.dom, p.cod
    for x in Gt.objects.elements:
        star = np.flatnonzero(Gt.d0.map == x)
        target_star = set(np.flatnonzero(G.d0.map == p.objects.map[x]).tolist())
        image = p.arrows.map[star].tolist()
        if len(set(image)) != len(image) or set(image) != target_star:
            return False
    return True


def _pullback_iso(p: GpdMorphism) -> bool:
    Gt, G = p.dom, p.cod
    prod = direct_product(G.arrows, Gt.objects)
    n0 = Gt.objects.order
    pull = [
        g * n0 + x
        for g in G.arrows.elements
        for x in Gt.objects.elements
        if G.d0.map[g] == p.objects.map[x]
    ]
    if not is_subobject(prod, pull):
        raise InconsistencyError("pullback is not a subobject of the product")
    P, inc = restrict(prod, pull)
    pos = {v: i for i, v in enumerate(pull)}
    images = p.arrows.map * n0 + Gt.d0.map
    if any(int(v) not in pos for v in images):
        return False
    return is_isomorphism(Morphism(Gt.arrows, P, [pos[int(v)] for v in images]))


def is_covering_gpd(p: GpdMorphism) -> bool:
    """``(p1, d0)`` onto the pullback is an isomorphism; cross-checked against
    bijectivity on every star."""
    a = _pullback_iso(p)
    b = _star_bijective(p)
    if a != b:
        raise InconsistencyError(f"pullback test ({a}) and star test ({b}) disagree")
    return a


@dataclass(frozen=True, eq=False)
class PulledBackQuotient:
    N_tilde: SubGroupoid
    induced: GpdMorphism
    covering: bool


def covering_pullback_quotient(p: GpdMorphism, N) -> PulledBackQuotient:
    """``Ñ = p⁻¹(N)`` and the induced ``G̃_Ñ -> G_N``, which must be a covering."""
    if not is_covering_gpd(p):
        raise NotCoveringError("p is not a covering morphism")
    G = p.cod
    N = _as_sub(G, N)
    if not is_internal_normal_subgroupoid(G, N):
        raise NotNormalError("N is not internal normal")
    Nt = SubGroupoid(p.dom, p.arrows.preimage_of(N.N1), p.objects.preimage_of(N.N0))
    if not Nt.is_internal_normal:
        raise InconsistencyError("preimage of an internal normal subgroupoid is not internal normal")
    Qt, pt = internal_quotient(p.dom, Nt)
    Q, pq = internal_quotient(G, N)
    star = GpdMorphism(
        Qt, Q,
        Morphism(Qt.arrows, Q.arrows, pq.arrows.map[p.arrows.map[list(Qt.arrows.labels)]]),
        Morphism(Qt.objects, Q.objects, pq.objects.map[p.objects.map[list(Qt.objects.labels)]]),
    )
    v = star.first_violation()
    if v is not None:
        raise InconsistencyError(f"induced map is not a groupoid morphism: {v}")
    covering = is_covering_gpd(star)
    if not covering:
        raise InconsistencyError("induced morphism of internal quotients is not a covering")
    return PulledBackQuotient(Nt, star, covering)
