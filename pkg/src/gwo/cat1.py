"""Cat¹-groups with operations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    GroupWithOps,
    Morphism,
    ValidationReport,
    Violation,
    _check,
    direct_product,
    elements_of,
    is_ideal,
    is_isomorphism,
    morphism_violation,
    quotient_gwo,
    restrict,
    validate_gwo,
)
from .errors import InconsistencyError, NotNormalError, PreconditionError, StructureError


@dataclass(frozen=True, eq=False)
class Cat1Group:
    G: GroupWithOps
    s: Morphism
    t: Morphism
    name: str = ""

    def __post_init__(self):
        n = self.G.order
        for label, m in (("s", self.s), ("t", self.t)):
            if m.dom.order != n or m.cod.order != n:
                raise StructureError(f"{label} must be an endomorphism of G")

    @property
    def ker_s(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.s.map == self.G.zero))

    @property
    def ker_t(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.t.map == self.G.zero))

    @property
    def im_s(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.s.map.tolist())))

    def __repr__(self):
        return f"<Cat1Group {self.name} |G|={self.G.order}>"


def validate_cat1(C: Cat1Group) -> ValidationReport:
    rep = ValidationReport()
    rep.extend(validate_gwo(C.G), "G: ")
    for label, m in (("s", C.s), ("t", C.t)):
        v = morphism_violation(m)
        if v is not None:
            rep.violations.append(Violation(f"{label}: {v.axiom}", v.witness, v.detail))
    s, t = C.s.map, C.t.map
    _check(rep, "st = t", s[t] == t)
    _check(rep, "ts = s", t[s] == s)
    ks, kt = np.array(C.ker_s, dtype=np.int64), np.array(C.ker_t, dtype=np.int64)
    A, N = C.G.add_table, C.G.neg_table
    k, k2 = ks[:, None], kt[None, :]
    comm = A[A[A[k, k2], N[k]], N[k2]]
    _check_pairs(rep, "[Ker s, Ker t] = 0", comm == C.G.zero, ks, kt)
    for sym, T in C.G.binary_tables.items():
        _check_pairs(rep, f"Ker s {sym} Ker t = 0", T[k, k2] == C.G.zero, ks, kt)
        _check_pairs(rep, f"Ker t {sym} Ker s = 0", T[kt[:, None], ks[None, :]] == C.G.zero, kt, ks)
    if rep.ok:
        # consequences of st = t and ts = s
        if not (np.array_equal(s[s], s) and np.array_equal(t[t], t)):
            raise InconsistencyError("s or t is not idempotent on a valid cat¹-group")
    return rep


def _check_pairs(rep, axiom, ok, rows, cols):
    if ok.size and not ok.all():
        i, j = np.argwhere(~ok)[0]
        rep.add(axiom, (int(rows[i]), int(cols[j])))


@dataclass(frozen=True, eq=False)
class Cat1Morphism:
    dom: Cat1Group
    cod: Cat1Group
    f: Morphism

    @property
    def components(self):
        return (self.f,)

    def first_violation(self) -> Violation | None:
        v = morphism_violation(self.f)
        if v is not None:
            return v
        f = self.f.map
        rep = ValidationReport()
        for label, ok in (
            ("f s = s' f", f[self.dom.s.map] == self.cod.s.map[f]),
            ("f t = t' f", f[self.dom.t.map] == self.cod.t.map[f]),
        ):
            if not _check(rep, label, ok):
                return rep.violations[0]
        return None

    def then(self, other: "Cat1Morphism") -> "Cat1Morphism":
        return Cat1Morphism(self.dom, other.cod, self.f.then(other.f))

    def inverse(self) -> "Cat1Morphism":
        return Cat1Morphism(self.cod, self.dom, self.f.inverse_map())

    @classmethod
    def identity(cls, C: Cat1Group) -> "Cat1Morphism":
        return cls(C, C, Morphism.identity(C.G))


def standard_cat1(kind: str, B: GroupWithOps) -> Cat1Group:
    """``identity``: ``(B, id, id)``; ``singular``: ``(B, 0, 0)`` for a
    singular ``B``; ``pair``: ``B × B`` with ``s(b, c) = (b, b)`` and
    ``t(b, c) = (c, c)``."""
    if kind == "identity":
        idm = Morphism.identity(B)
        return Cat1Group(B, idm, idm, name=f"id({B.name})")
    if kind == "singular":
        if not B.is_singular():
            raise PreconditionError("singular cat¹-group needs an abelian B with vanishing products")
        z = Morphism.zero(B, B)
        return Cat1Group(B, z, z, name=f"sing({B.name})")
    if kind == "pair":
        P = direct_product(B, B)
        n = B.order
        e = np.arange(P.order)
        first, second = e // n, e % n
        return Cat1Group(
            P, Morphism(P, P, first * n + first), Morphism(P, P, second * n + second), name=f"pair({B.name})"
        )
    raise ValueError(f"unknown kind {kind!r}")


def is_normal_subcat1(C: Cat1Group, N) -> bool:
    N = elements_of(N)
    if not is_ideal(C.G, N):
        return False
    inside = set(N)
    return all(int(C.s.map[x]) in inside and int(C.t.map[x]) in inside for x in N)


def quotient_cat1(C: Cat1Group, N) -> tuple[Cat1Group, Cat1Morphism]:
    N = elements_of(N)
    if not is_normal_subcat1(C, N):
        raise NotNormalError(f"{list(N)} is not a normal subcat¹-group")
    Q, p = quotient_gwo(C.G, N)
    reps = np.array(Q.labels)
    QC = Cat1Group(Q, Morphism(Q, Q, p.map[C.s.map[reps]]), Morphism(Q, Q, p.map[C.t.map[reps]]),
                   name=f"{C.name}/{len(N)}" if C.name else "")
    proj = Cat1Morphism(C, QC, p)
    if proj.first_violation() is not None:
        raise InconsistencyError("quotient projection is not a cat¹ morphism")
    return QC, proj


def cat1_kernel(f: Cat1Morphism) -> tuple[int, ...]:
    K = tuple(int(x) for x in np.flatnonzero(f.f.map == f.cod.G.zero))
    if not is_normal_subcat1(f.dom, K):
        raise InconsistencyError("kernel of a cat¹ morphism is not normal")
    return K


def is_covering_cat1(p: Cat1Morphism) -> bool:
    """The restriction of ``p`` to ``Ker s`` is an isomorphism onto ``Ker s``."""
    src, dst = p.dom.ker_s, p.cod.ker_s
    if len(src) != len(dst):
        return False
    Ks, _ = restrict(p.dom.G, src)
    Kt, _ = restrict(p.cod.G, dst)
    pos = {v: i for i, v in enumerate(dst)}
    image = [int(p.f.map[x]) for x in src]
    if any(v not in pos for v in image):
        raise InconsistencyError("p does not send Ker s into Ker s")
    return is_isomorphism(Morphism(Ks, Kt, [pos[v] for v in image]))
