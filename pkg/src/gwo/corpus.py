"""Deterministic corpora of small structures for exhaustive checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cat1 import standard_cat1
from .core import (
    GroupWithOps,
    cyclic_group,
    cyclic_ring,
    direct_product,
    enumerate_ideals,
    from_group_table,
)
from .equivalences import xmod_to_cat1, xmod_to_gpd
from .errors import BoundExceededError
from .fileformat import Subobject
from .groupoid import pair_groupoid
from .xmod import (
    XModMorphism,
    identity_xmod,
    ideal_inclusion_xmod,
    is_normal_subxmod,
    is_subxmod,
    quotient_xmod,
    zero_boundary_xmod,
)

PROFILES = ("empty", "tiny", "small-rings", "groups", "default")


@dataclass(frozen=True, eq=False)
class CorpusEntry:
    name: str
    kind: str
    obj: object


# --------------------------------------------------------------------------
# base objects
# --------------------------------------------------------------------------


def permutation_group(perms, name="") -> GroupWithOps:
    """Group on a list of permutation tuples closed under composition;
    ``a + b`` is ``a`` after ``b``."""
    perms = sorted(perms)
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(a[b[k]] for k in range(len(b)))] for b in perms] for a in perms]
    return from_group_table(table, name=name)


def symmetric_group(n: int) -> GroupWithOps:
    return permutation_group(itertools.permutations(range(n)), name=f"S{n}")


def dihedral_group(n: int) -> GroupWithOps:
    """Symmetries of the ``n``-gon, order ``2n``."""
    rot = [tuple((k + r) % n for k in range(n)) for r in range(n)]
    ref = [tuple((r - k) % n for k in range(n)) for r in range(n)]
    return permutation_group(rot + ref, name=f"D{n}")


def quaternion_group() -> GroupWithOps:
    # (sign, unit) with units 1, i, j, k
    mult = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, u) for s in (1, -1) for u in range(4)]
    pos = {e: i for i, e in enumerate(elems)}

    def times(x, y):
        sign, unit = mult[x[1], y[1]]
        return (x[0] * y[0] * sign, unit)

    return from_group_table([[pos[times(x, y)] for y in elems] for x in elems], name="Q8")


def _product(*factors) -> GroupWithOps:
    out = factors[0]
    for f in factors[1:]:
        out = direct_product(out, f)
    return out.replace(name="x".join(f.name for f in factors))


def rings(max_order=8) -> list[GroupWithOps]:
    out = [cyclic_ring(n) for n in range(2, max_order + 1)]
    out.append(_product(cyclic_ring(2), cyclic_ring(2)))
    if max_order >= 6:
        out.append(_product(cyclic_ring(2), cyclic_ring(3)))
    return out


def zero_rings(max_order=8) -> list[GroupWithOps]:
    z = lambda n: cyclic_ring(n, zero_mult=True)  # noqa: E731
    out = [z(n) for n in range(2, max_order + 1)]
    out.append(_product(z(2), z(2)))
    if max_order >= 8:
        out.append(_product(z(2), z(4)))
        out.append(_product(z(2), z(2), z(2)))
    return out


def plain_groups(max_order=8) -> list[GroupWithOps]:
    out = [cyclic_group(n) for n in range(1, max_order + 1)]
    out.append(_product(cyclic_group(2), cyclic_group(2)))
    if max_order >= 6:
        out.append(symmetric_group(3))
    if max_order >= 8:
        out += [
            _product(cyclic_group(2), cyclic_group(4)),
            _product(cyclic_group(2), cyclic_group(2), cyclic_group(2)),
            dihedral_group(4),
            quaternion_group(),
        ]
    return out


# --------------------------------------------------------------------------
# derived families
# --------------------------------------------------------------------------


def _xmods(bases, bound):
    out = []
    for G in bases:
        for I in enumerate_ideals(G, bound=None):
            if len(I.elements) * G.order > bound:
                continue
            if len(I.elements) == G.order:
                out.append(identity_xmod(G))
            else:
                out.append(ideal_inclusion_xmod(G, I.elements))
    return out


def _zero_boundary(singular, targets, bound):
    out = []
    for A in singular:
        for B in targets:
            if A.signature == B.signature and A.order * B.order <= bound:
                out.append(zero_boundary_xmod(A, B))
    return out


def xmod_coverings(X) -> list[XModMorphism]:
    """Identity and projections ``X -> X/(0, T)`` for normal ``(0, T)``;
    these have an isomorphism on the ``A`` component."""
    out = [XModMorphism.identity(X)]
    zero = (X.A.zero,)
    for T in enumerate_ideals(X.B, bound=None):
        if len(T.elements) == 1:
            continue
        if is_subxmod(X, zero, T.elements) and is_normal_subxmod(X, zero, T.elements)[0]:
            out.append(quotient_xmod(X, zero, T.elements)[1])
    return out


def _entries_for_base(G):
    yield CorpusEntry(G.name, "gwo", G)
    for I in enumerate_ideals(G, bound=None):
        yield CorpusEntry(f"{G.name}>{len(I.elements)}", "subobject", Subobject(G, {"elements": I.elements}))


def generate_corpus(profile: str = "default", *, bound: int = 64) -> list[CorpusEntry]:
    """Structures for exhaustive checks, in a fixed order.

    ``bound`` caps semidirect products (crossed modules are only generated
    when ``|A| |B| <= bound``); it may not exceed 64.
    """
    if bound > 64:
        raise BoundExceededError(f"corpus bound {bound} exceeds the supported ceiling 64")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    if profile == "empty":
        return []
    if profile == "tiny":
        ring_bases = [cyclic_ring(2), cyclic_ring(3), cyclic_ring(4)]
        zero_bases = [cyclic_ring(2, zero_mult=True)]
        group_bases = [cyclic_group(2), cyclic_group(3)]
        pair_bases = [cyclic_ring(2), cyclic_group(3)]
    elif profile == "small-rings":
        ring_bases = rings()
        zero_bases = zero_rings()
        group_bases = []
        pair_bases = [cyclic_ring(2), cyclic_ring(3), cyclic_ring(4), cyclic_ring(4, zero_mult=True)]
    elif profile == "groups":
        ring_bases, zero_bases = [], []
        group_bases = plain_groups()
        pair_bases = [cyclic_group(2), cyclic_group(3), cyclic_group(4)]
    else:
        ring_bases = rings()
        zero_bases = zero_rings()
        group_bases = plain_groups()
        pair_bases = [cyclic_ring(2), cyclic_ring(3), cyclic_ring(4), cyclic_ring(2, zero_mult=True),
                      cyclic_group(3), cyclic_group(4), _product(cyclic_group(2), cyclic_group(2))]
    scalar = [cyclic_ring(4, zero_mult=True, scalars=(2, 3))] if profile != "groups" else []

    entries: list[CorpusEntry] = []
    bases = ring_bases + zero_bases + group_bases + scalar
    for G in bases:
        entries.extend(_entries_for_base(G))

    xmods = _xmods(bases, bound)
    small_zero = [A for A in zero_bases + scalar if A.order <= 4]
    xmods += _zero_boundary(small_zero, [B for B in zero_bases + ring_bases + scalar if B.order <= 4], bound)
    abelian = [A for A in group_bases if A.is_abelian() and 1 < A.order <= 4]
    xmods += _zero_boundary(abelian, [B for B in group_bases if B.order <= 6], bound)
    for X in xmods:
        entries.append(CorpusEntry(X.name, "xmod", X))
        entries.append(CorpusEntry(f"eta({X.name})", "gpd", xmod_to_gpd(X)))
        entries.append(CorpusEntry(f"theta({X.name})", "cat1", xmod_to_cat1(X)))
    for B in pair_bases:
        entries.append(CorpusEntry(f"pair({B.name})", "gpd", pair_groupoid(B)))
        entries.append(CorpusEntry(f"cat1-pair({B.name})", "cat1", standard_cat1("pair", B)))
        entries.append(CorpusEntry(f"cat1-id({B.name})", "cat1", standard_cat1("identity", B)))
        if B.is_singular():
            entries.append(CorpusEntry(f"cat1-sing({B.name})", "cat1", standard_cat1("singular", B)))
    for X in xmods:
        for k, m in enumerate(xmod_coverings(X)[1:]):
            entries.append(CorpusEntry(f"cover{k}({X.name})", "morphism", m))
    return entries


def by_kind(entries, kind) -> list:
    return [e.obj for e in entries if e.kind == kind]


def corpus_summary(entries) -> dict[str, int]:
    counts: dict[str, int] = {}
    for e in entries:
        counts[e.kind] = counts.get(e.kind, 0) + 1
    return dict(sorted(counts.items()))


def is_group_table(table) -> bool:
    """Independent check (no library code) that a Cayley table is a group."""
    t = np.asarray(table)
    n = len(t)
    r = np.arange(n)
    ids = [e for e in r if (t[e] == r).all() and (t[:, e] == r).all()]
    if len(ids) != 1:
        return False
    latin = all(sorted(row) == list(r) for row in t.tolist()) and all(sorted(col) == list(r) for col in t.T.tolist())
    return latin and bool((t[t[:, :, None], r[None, None, :]] == t[r[:, None, None], t[None, :, :]]).all())
