"""Derived actions, semidirect products and split extensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .core import (
    GroupWithOps,
    Morphism,
    ValidationReport,
    elements_of,
    find_morphisms,
    is_ideal,
    is_subobject,
    kernel_and_image,
    morphism_violation,
    quotient_gwo,
    restrict,
    validate_gwo,
)
from .errors import (
    IllDefinedError,
    InconsistencyError,
    NotSplitError,
    PreconditionError,
    SignatureMismatchError,
    StructureError,
)


@dataclass(frozen=True, eq=False)
class ActionSet:
    """Actions of ``actor`` on ``acted``: ``dot[b, a] = b·a`` and one
    ``star[s][b, a] = b s a`` table per extra binary symbol."""

    actor: GroupWithOps
    acted: GroupWithOps
    dot: np.ndarray
    star: Mapping[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        B, A = self.actor, self.acted
        if A.signature != B.signature:
            raise SignatureMismatchError("actor and acted structures have different signatures")
        shape = (B.order, A.order)
        object.__setattr__(self, "dot", _action_table(self.dot, shape, A.order, "·"))
        if set(self.star) != set(A.signature.extra_binary):
            raise StructureError(
                f"star tables {sorted(self.star)} do not match {list(A.signature.extra_binary)}"
            )
        object.__setattr__(
            self,
            "star",
            {s: _action_table(self.star[s], shape, A.order, s) for s in A.signature.extra_binary},
        )

    def same_tables(self, other: "ActionSet") -> bool:
        return np.array_equal(self.dot, other.dot) and all(
            np.array_equal(self.star[s], other.star[s]) for s in self.star
        )

    @classmethod
    def trivial(cls, B: GroupWithOps, A: GroupWithOps) -> "ActionSet":
        dot = np.tile(np.arange(A.order), (B.order, 1))
        zero = np.full((B.order, A.order), A.zero)
        return cls(B, A, dot, {s: zero for s in A.signature.extra_binary})


def _action_table(data, shape, n, symbol):
    try:
        arr = np.array(data, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"action table {symbol!r} is not rectangular: {exc}") from None
    if arr.shape != shape:
        raise StructureError(f"action table {symbol!r} has shape {arr.shape}, expected {shape}")
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        pos = tuple(int(i) for i in bad[0])
        raise StructureError(
            f"action table {symbol!r} entry {pos} = {int(arr[pos])} out of range",
            index=int(arr[pos]),
        )
    arr.setflags(write=False)
    return arr


def conjugation_action(G: GroupWithOps, I: Iterable[int]) -> ActionSet:
    """Action of ``G`` on a subobject ``I`` by ``g + x - g`` and ``g s x``.

    Requires ``I`` to be an ideal, otherwise the values leave ``I``.
    """
    A, inc = restrict(G, I, name=f"{G.name}|{len(elements_of(I))}" if G.name else "")
    return action_through(G, A, inc, Morphism.identity(G))


def action_through(E: GroupWithOps, A: GroupWithOps, inc: Morphism, sec: Morphism) -> ActionSet:
    """Derived action of ``sec.dom`` on ``A`` via the embedding ``inc`` into ``E``:
    ``b·a = s(b) + a - s(b)`` and ``b s a = s(b) s a``, pulled back along ``inc``."""
    B = sec.dom
    back = np.full(E.order, -1, dtype=np.int64)
    back[inc.map] = np.arange(A.order)
    sb = sec.map[:, None]
    ia = inc.map[None, :]
    conj = E.add_table[E.add_table[sb, ia], E.neg_table[sb]]
    tables = {s: T[sb, ia] for s, T in E.binary_tables.items()}
    for name, T in [("·", conj), *tables.items()]:
        if (back[T] < 0).any():
            b, a = (int(i) for i in np.argwhere(back[T] < 0)[0])
            raise PreconditionError(
                f"action {name!r} of {b} on {a} leaves the embedded subobject"
            )
    return ActionSet(B, A, back[conj], {s: back[T] for s, T in tables.items()})


# --------------------------------------------------------------------------
# semidirect product
# --------------------------------------------------------------------------


def semidirect(A: GroupWithOps, B: GroupWithOps, acts: ActionSet, name="") -> GroupWithOps:
    """``A ⋊ B`` on pairs encoded as ``a * |B| + b``.

    ``(a',b') + (a,b) = (a' + b'·a, b' + b)`` and
    ``(a',b') s (a,b) = (a' s a + a' s b + b' s a, b' s b)`` where the mixed
    term ``a' s b`` is read as ``b s° a'``.  For a pair ``s != s°`` only the
    first symbol uses the formula; its partner is the transposed table.
    Unary operations act componentwise.  No axioms are checked here.
    """
    if A.signature != B.signature:
        raise SignatureMismatchError("A and B have different signatures")
    if acts.acted.order != A.order or acts.actor.order != B.order:
        raise StructureError("action tables do not match the orders of A and B")
    sig = A.signature
    na, nb = A.order, B.order
    ea = np.repeat(np.arange(na), nb)
    eb = np.tile(np.arange(nb), na)
    a1, a2 = ea[:, None], ea[None, :]
    b1, b2 = eb[:, None], eb[None, :]
    AA, BA, D = A.add_table, B.add_table, acts.dot

    add = AA[a1, D[b1, a2]] * nb + BA[b1, b2]
    neg = D[B.neg_table[eb], A.neg_table[ea]] * nb + B.neg_table[eb]

    binary = {}
    for s in sig.extra_binary:
        opp = sig.opposite(s)
        if opp in binary:
            binary[s] = binary[opp].T
            continue
        MA, MB = A.binary_tables[s], B.binary_tables[s]
        S, Sop = acts.star[s], acts.star[opp]
        first = AA[AA[MA[a1, a2], Sop[b2, a1]], S[b1, a2]]
        binary[s] = first * nb + MB[b1, b2]
    unary = {w: A.unary_tables[w][ea] * nb + B.unary_tables[w][eb] for w in sig.extra_unary}
    return GroupWithOps(
        sig,
        na * nb,
        A.zero * nb + B.zero,
        add,
        neg,
        binary,
        unary,
        name=name or (f"{A.name}x|{B.name}" if A.name and B.name else ""),
    )


def is_derived_action(A: GroupWithOps, B: GroupWithOps, acts: ActionSet) -> tuple[bool, ValidationReport]:
    """Derived iff the semidirect product is a valid group with operations."""
    report = validate_gwo(semidirect(A, B, acts))
    return report.ok, report


def semidirect_subset(S: Iterable[int], T: Iterable[int], nb: int) -> tuple[int, ...]:
    return tuple(sorted(s * nb + t for s in S for t in T))


# --------------------------------------------------------------------------
# split extensions
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SplitExtension:
    """``0 -> A --inclusion--> E --projection--> B -> 0`` with ``section``."""

    total: GroupWithOps
    inclusion: Morphism
    projection: Morphism
    section: Morphism

    def problems(self) -> list[str]:
        out = []
        for label, m in [("inclusion", self.inclusion), ("projection", self.projection), ("section", self.section)]:
            v = morphism_violation(m)
            if v is not None:
                out.append(f"{label} is not a morphism ({v.axiom} at {v.witness})")
        if not (self.projection.map[self.section.map] == np.arange(self.section.dom.order)).all():
            out.append("projection ∘ section is not the identity")
        if not self.inclusion.is_injective():
            out.append("inclusion is not injective")
        if not self.projection.is_surjective():
            out.append("projection is not surjective")
        ker, _ = kernel_and_image(self.projection)
        if set(ker.elements) != set(self.inclusion.map.tolist()):
            out.append("image of inclusion differs from kernel of projection")
        return out


def canonical_split_extension(A: GroupWithOps, B: GroupWithOps, acts: ActionSet) -> SplitExtension:
    E = semidirect(A, B, acts)
    nb = B.order
    ea = np.arange(A.order)
    eb = np.arange(B.order)
    return SplitExtension(
        E,
        Morphism(A, E, ea * nb + B.zero),
        Morphism(E, B, np.arange(E.order) % nb),
        Morphism(B, E, A.zero * nb + eb),
    )


def action_from_split_extension(ext: SplitExtension) -> ActionSet:
    problems = ext.problems()
    if problems:
        raise PreconditionError("not a split extension: " + "; ".join(problems))
    return action_through(ext.total, ext.inclusion.dom, ext.inclusion, ext.section)


def find_split_extension(E: GroupWithOps, p: Morphism) -> SplitExtension:
    """Complete ``p: E -> B`` to a split extension by searching for a section."""
    if p.dom is not E:
        raise PreconditionError("projection must start at E")
    if not p.is_surjective() or morphism_violation(p) is not None:
        raise PreconditionError("projection must be a surjective morphism")
    B = p.cod
    fibres = {b: [int(e) for e in np.flatnonzero(p.map == b)] for b in B.elements}
    sections = find_morphisms(B, E, candidates=lambda b: fibres[b], limit=1)
    if not sections:
        raise NotSplitError("no morphism section of the projection exists")
    ker, _ = kernel_and_image(p)
    A, inc = restrict(E, ker.elements)
    return SplitExtension(E, inc, p, sections[0])


# --------------------------------------------------------------------------
# ideals of semidirect products
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaConditions:
    """The five closure conditions on ``(S, T)`` and whether ``S ⋊ T`` is an ideal."""

    a: bool
    b: bool
    c: bool
    d: bool
    e: bool
    semidirect_ideal: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def all_hold(self) -> bool:
        return self.a and self.b and self.c and self.d and self.e


def _sweep(ok: np.ndarray, rows, cols):
    if ok.all():
        return True, None
    i, j = np.argwhere(~ok)[0]
    return False, (int(rows[i]), int(cols[j]))


def closure_conditions(acts: ActionSet, S, T) -> dict[str, tuple[bool, tuple | None]]:
    """Conditions (b)-(e) on element masks, each with a failing ``(b_or_t, a_or_s)`` pair.

    Conditions over extra operations are swept for every symbol.
    """
    A, B = acts.acted, acts.actor
    S, T = elements_of(S), elements_of(T)
    smask = np.zeros(A.order, dtype=bool)
    smask[list(S)] = True
    s_idx, t_idx = np.array(S), np.array(T)
    D = acts.dot
    res = {}
    all_a, all_b = np.arange(A.order), np.arange(B.order)
    res["b"] = _sweep(smask[D[:, s_idx]], all_b, s_idx)
    tmoved = A.add_table[D[t_idx, :], A.neg_table[None, :]]
    res["c"] = _sweep(smask[tmoved], t_idx, all_a)
    d_ok, e_ok = (True, None), (True, None)
    for s in A.signature.extra_binary:
        St = acts.star[s]
        if d_ok[0]:
            d_ok = _sweep(smask[St[:, s_idx]], all_b, s_idx)
        if e_ok[0]:
            e_ok = _sweep(smask[St[t_idx, :]], t_idx, all_a)
    res["d"], res["e"] = d_ok, e_ok
    return res


def ideal_semidirect_conditions(A, B, S, T, acts: ActionSet) -> LemmaConditions:
    S, T = elements_of(S), elements_of(T)
    if not (is_subobject(A, S) and is_subobject(B, T)):
        raise PreconditionError("S and T must be subobjects")
    s_set = set(S)
    for t in T:
        for s in S:
            if int(acts.dot[t, s]) not in s_set or any(
                int(acts.star[x][t, s]) not in s_set for x in acts.star
            ):
                raise PreconditionError(
                    f"restricted action of T on S is not closed: t={t}, s={s}"
                )
    res = closure_conditions(acts, S, T)
    a = is_ideal(A, S) and is_ideal(B, T)
    E = semidirect(A, B, acts)
    st_ideal = is_ideal(E, semidirect_subset(S, T, B.order))
    cond = LemmaConditions(
        a, res["b"][0], res["c"][0], res["d"][0], res["e"][0], st_ideal,
        {k: v[1] for k, v in res.items() if v[1] is not None},
    )
    if st_ideal and not cond.all_hold:
        raise InconsistencyError(f"S⋊T is an ideal but a condition fails: {cond}")
    return cond


# --------------------------------------------------------------------------
# quotient actions
# --------------------------------------------------------------------------


def induced_action(acts: ActionSet, pA: Morphism, pB: Morphism) -> ActionSet:
    """Action of ``pB.cod`` on ``pA.cod`` by ``[b]·[a] = [b·a]``.

    Every representative pair is swept; a conflict raises
    :class:`IllDefinedError` naming two pairs with different results.
    """
    QA, QB = pA.cod, pB.cod
    tables = {"·": acts.dot, **acts.star}
    out = {}
    for name, T in tables.items():
        induced = np.full((QB.order, QA.order), -1, dtype=np.int64)
        first = {}
        values = pA.map[T]
        for b in acts.actor.elements:
            qb = int(pB.map[b])
            for a in acts.acted.elements:
                qa = int(pA.map[a])
                v = int(values[b, a])
                if induced[qb, qa] < 0:
                    induced[qb, qa] = v
                    first[qb, qa] = (b, a)
                elif induced[qb, qa] != v:
                    raise IllDefinedError(
                        f"induced action {name!r} depends on representatives: "
                        f"{first[qb, qa]} vs {(b, a)}",
                        conflict=(first[qb, qa], (b, a)),
                    )
        out[name] = induced
    dot = out.pop("·")
    return ActionSet(QB, QA, dot, out)


def quotient_action(acts: ActionSet, S, T) -> ActionSet:
    """Action of ``B/T`` on ``A/S`` induced by ``acts``."""
    _, pA = quotient_gwo(acts.acted, elements_of(S))
    _, pB = quotient_gwo(acts.actor, elements_of(T))
    return induced_action(acts, pA, pB)
