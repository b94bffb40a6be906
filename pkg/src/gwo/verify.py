"""Corpus-wide theorem checks.

Each ``check_*`` function runs one family of properties over a corpus and
returns a :class:`CheckResult` counting the instances examined and listing
any failures.  ``corpus-verify`` runs all of them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .actions import (
    action_from_split_extension,
    canonical_split_extension,
    find_split_extension,
    is_derived_action,
    semidirect,
    semidirect_subset,
)
from .cat1 import Cat1Morphism, cat1_kernel, is_covering_cat1, is_normal_subcat1, quotient_cat1, validate_cat1
from .core import (
    direct_product,
    enumerate_ideals,
    is_ideal,
    product_projections,
    validate_gwo,
)
from .corpus import by_kind
from .equivalences import (
    covering_transport,
    roundtrip_cat1,
    roundtrip_gpd,
    roundtrip_xmod_cat1,
    roundtrip_xmod_gpd,
    transport_morphism,
    transport_normality,
    xmod_to_cat1,
    xmod_to_gpd,
)
from .fileformat import parse, serialize
from .groupoid import (
    GpdMorphism,
    SubGroupoid,
    compare_quotients,
    covering_pullback_quotient,
    enumerate_internal_normal,
    enumerate_wide_subgroupoids,
    gpd_kernel,
    higgins_normality,
    internal_quotient,
    is_covering_gpd,
    is_internal_normal_subgroupoid,
    validate_internal_gpd,
)
from .xmod import (
    XModMorphism,
    is_covering_xmod,
    is_normal_subxmod,
    is_subxmod,
    quotient_xmod,
    semidirect_quotient_iso,
    validate_xmod,
    xmod_kernel,
)


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, what, detail=""):
        self.failures.append((what, detail))

    def to_dict(self):
        return {
            "name": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "failures": [[str(w), str(d)] for w, d in self.failures[:20]],
            "seconds": round(self.seconds, 3),
        }


def _timed(fn):
    def run(*args, **kwargs):
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - start
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def normal_pairs(X):
    """Every ``(S, T)`` from ideals of ``A`` and ``B`` forming a subcrossed
    module, with its normality verdict."""
    out = []
    for S in enumerate_ideals(X.A, bound=None):
        for T in enumerate_ideals(X.B, bound=None):
            if is_subxmod(X, S.elements, T.elements):
                out.append((S.elements, T.elements, is_normal_subxmod(X, S.elements, T.elements)[0]))
    return out


def normal_subcat1s(C):
    return [I.elements for I in enumerate_ideals(C.G, bound=None) if is_normal_subcat1(C, I.elements)]


# --------------------------------------------------------------------------


@_timed
def check_validators(entries) -> CheckResult:
    """Every constructed instance passes its validator."""
    res = CheckResult("validators accept constructed instances")
    validators = {"gwo": validate_gwo, "xmod": validate_xmod, "gpd": validate_internal_gpd, "cat1": validate_cat1}
    for e in entries:
        if e.kind in validators:
            res.checked += 1
            rep = validators[e.kind](e.obj)
            if not rep.ok:
                res.fail(e.name, rep.axioms()[:3])
        elif e.kind == "morphism":
            res.checked += 1
            v = e.obj.first_violation()
            if v is not None:
                res.fail(e.name, v)
        elif e.kind == "subobject":
            res.checked += 1
            if not is_ideal(e.obj.parent, e.obj.parts["elements"]):
                res.fail(e.name, "listed ideal is not an ideal")
    return res


@_timed
def check_derived_actions(entries, *, max_product=64) -> CheckResult:
    """Split extensions give derived actions and derived actions give valid
    semidirect products."""
    res = CheckResult("split extensions <-> derived actions")
    for X in by_kind(entries, "xmod"):
        res.checked += 1
        ext = canonical_split_extension(X.A, X.B, X.acts)
        acts = action_from_split_extension(ext)
        if not acts.same_tables(X.acts):
            res.fail(X.name, "split-extension action differs")
        ok, _ = is_derived_action(X.A, X.B, acts)
        if not ok:
            res.fail(X.name, "split-extension action not derived")
        elif not validate_gwo(semidirect(X.A, X.B, acts)).ok:
            res.fail(X.name, "derived action with invalid semidirect product")
    bases = by_kind(entries, "gwo")
    for A in bases:
        for B in bases:
            if A.signature != B.signature or A.order * B.order > max_product or A.order * B.order > 16:
                continue
            P = direct_product(A, B)
            _, p = product_projections(A, B, P)
            ext = find_split_extension(P, p)
            acts = action_from_split_extension(ext)
            res.checked += 1
            ok, _ = is_derived_action(ext.inclusion.dom, B, acts)
            if not ok:
                res.fail(f"{A.name}x{B.name}", "product projection action not derived")
    return res


@_timed
def check_roundtrips(entries) -> CheckResult:
    res = CheckResult("equivalence roundtrips")
    for X in by_kind(entries, "xmod"):
        for label, fn in (("δη", roundtrip_xmod_gpd), ("δ¹θ", roundtrip_xmod_cat1)):
            res.checked += 1
            try:
                fn(X)
            except Exception as exc:  # noqa: BLE001
                res.fail(f"{label}({X.name})", exc)
    for C in by_kind(entries, "cat1"):
        res.checked += 1
        try:
            roundtrip_cat1(C)
        except Exception as exc:  # noqa: BLE001
            res.fail(f"θδ¹({C.name})", exc)
    for G in by_kind(entries, "gpd"):
        res.checked += 1
        try:
            roundtrip_gpd(G)
        except Exception as exc:  # noqa: BLE001
            res.fail(f"ηδ({G.name})", exc)
    return res


@_timed
def check_normality_transport(entries) -> CheckResult:
    """normal (S, T) <=> S⋊T ideal <=> internal normal subgroupoid <=> normal subcat¹."""
    res = CheckResult("normality transport biconditionals")
    for X in by_kind(entries, "xmod"):
        E = semidirect(X.A, X.B, X.acts)
        G = xmod_to_gpd(X)
        C = xmod_to_cat1(X)
        for S, T, normal in normal_pairs(X):
            res.checked += 1
            N = semidirect_subset(S, T, X.B.order)
            verdicts = (
                normal,
                is_ideal(E, N),
                is_internal_normal_subgroupoid(G, SubGroupoid(G, N, T)),
                is_normal_subcat1(C, N),
            )
            if len(set(verdicts)) != 1:
                res.fail(f"{X.name} S={S} T={T}", verdicts)
    return res


@_timed
def check_quotients(entries) -> CheckResult:
    """Semidirect quotient isomorphism and η(X/(S,T)) ≅ η(X)_N."""
    res = CheckResult("quotient coherence")
    for X in by_kind(entries, "xmod"):
        for S, T, normal in normal_pairs(X):
            if not normal:
                continue
            res.checked += 1
            try:
                semidirect_quotient_iso(X, S, T)
                transport_normality("xmod->gpd", X, (S, T))
                transport_normality("xmod->cat1", X, (S, T))
            except Exception as exc:  # noqa: BLE001
                res.fail(f"{X.name} S={S} T={T}", exc)
    return res


def _small_groupoids(entries, limit):
    return [G for G in by_kind(entries, "gpd") if G.arrows.order <= limit]


@_timed
def check_lemma_criterion(entries, *, max_arrows=32) -> CheckResult:
    res = CheckResult("Higgins normality <-> shifted vertex groups")
    for G in _small_groupoids(entries, max_arrows):
        for N in enumerate_wide_subgroupoids(G):
            res.checked += 1
            v = higgins_normality(G, N)
            if v.coset != v.lemma:
                res.fail(f"{G.name} N1={N.N1}", v)
    return res


@_timed
def check_quotient_comparison(entries, *, max_arrows=64) -> CheckResult:
    res = CheckResult("G/N = G_N iff N transitive")
    for G in _small_groupoids(entries, max_arrows):
        for N in enumerate_internal_normal(G, wide_only=True):
            res.checked += 1
            try:
                cmp = compare_quotients(G, N)
            except Exception as exc:  # noqa: BLE001
                res.fail(f"{G.name} N1={N.N1}", exc)
                continue
            if (cmp.verdict == "equal") != N.is_transitive():
                res.fail(f"{G.name} N1={N.N1}", cmp)
    return res


@_timed
def check_coverings(entries, *, max_arrows=64) -> CheckResult:
    res = CheckResult("covering suite")
    for X in by_kind(entries, "xmod"):
        res.checked += 1
        for direction in ("xmod->gpd", "xmod->cat1"):
            if not covering_transport(direction, XModMorphism.identity(X)).covering:
                res.fail(f"id({X.name}) {direction}", "identity not covering")
    for G in _small_groupoids(entries, max_arrows):
        if not is_covering_gpd(GpdMorphism.identity(G)):
            res.fail(f"id({G.name})", "identity groupoid morphism not covering")
        for N in enumerate_internal_normal(G):
            res.checked += 1
            _, p = internal_quotient(G, N)
            units = set(G.eps.map.tolist())
            collapses = any(a not in units for a in N.N1)
            if is_covering_gpd(p) == collapses:
                res.fail(f"{G.name} N1={N.N1}", f"collapses={collapses}")
    for C in by_kind(entries, "cat1"):
        res.checked += 1
        if not is_covering_cat1(Cat1Morphism.identity(C)):
            res.fail(f"id({C.name})", "identity cat¹ morphism not covering")
    for m in by_kind(entries, "morphism"):
        if not isinstance(m, XModMorphism):
            continue
        _covering_roundtrip(res, m)
    return res


def _covering_roundtrip(res, m):
    res.checked += 1
    flag = is_covering_xmod(m)
    for there, back in (("xmod->gpd", "gpd->xmod"), ("xmod->cat1", "cat1->xmod")):
        t = covering_transport(there, m, require_covering=False)
        b = covering_transport(back, t.morphism, require_covering=False)
        if not (t.source_covering == t.covering == b.covering == flag):
            res.fail(f"{m.dom.name} {there}", (flag, t.covering, b.covering))
    if flag:
        p = transport_morphism("xmod->gpd", m)
        for N in enumerate_internal_normal(p.cod):
            res.checked += 1
            out = covering_pullback_quotient(p, N)
            if not is_covering_gpd(out.induced):
                res.fail(f"{m.dom.name} pullback N1={N.N1}", "induced map not covering")


@_timed
def check_functoriality(entries) -> CheckResult:
    """Transporting a composite equals composing transports."""
    res = CheckResult("functoriality of transports")
    for m in by_kind(entries, "morphism"):
        if not isinstance(m, XModMorphism):
            continue
        pairs = [(XModMorphism.identity(m.dom), m), (m, XModMorphism.identity(m.cod))]
        for first, second in pairs:
            res.checked += 1
            for direction in ("xmod->gpd", "xmod->cat1"):
                whole = transport_morphism(direction, first.then(second))
                parts = transport_morphism(direction, first).then(transport_morphism(direction, second))
                if any(not np.array_equal(a.map, b.map) for a, b in zip(whole.components, parts.components)):
                    res.fail(f"{m.dom.name} {direction}", "composite differs")
    return res


@_timed
def check_kernels(entries, *, max_order=64) -> CheckResult:
    """Normal subobjects are kernels of their projections and kernels are normal."""
    res = CheckResult("kernel/normal duality")
    for X in by_kind(entries, "xmod"):
        for S, T, normal in normal_pairs(X):
            if not normal:
                continue
            res.checked += 1
            _, p = quotient_xmod(X, S, T)
            K = xmod_kernel(p)
            if (K.S, K.T) != (S, T) or not K.is_normal:
                res.fail(f"{X.name} S={S} T={T}", (K.S, K.T))
    for m in by_kind(entries, "morphism"):
        if isinstance(m, XModMorphism):
            res.checked += 1
            if not xmod_kernel(m).is_normal:
                res.fail(f"ker({m.dom.name})", "kernel not normal")
    for G in by_kind(entries, "gpd"):
        if G.arrows.order > max_order:
            continue
        for N in enumerate_internal_normal(G):
            res.checked += 1
            _, p = internal_quotient(G, N)
            K = gpd_kernel(p)
            if (K.N1, K.N0) != (N.N1, N.N0):
                res.fail(f"{G.name} N1={N.N1}", (K.N1, K.N0))
            back = transport_normality("gpd->xmod", G, N)
            if not back.normal:
                res.fail(f"{G.name} N1={N.N1}", "δ-image not normal")
    for C in by_kind(entries, "cat1"):
        if C.G.order > max_order:
            continue
        for N in normal_subcat1s(C):
            res.checked += 1
            _, p = quotient_cat1(C, N)
            if cat1_kernel(p) != N:
                res.fail(f"{C.name} N={N}", "kernel differs")
            if not transport_normality("cat1->xmod", C, N).normal:
                res.fail(f"{C.name} N={N}", "δ¹-image not normal")
    return res


@_timed
def check_serialization(entries) -> CheckResult:
    res = CheckResult("serialization roundtrip")
    for e in entries:
        res.checked += 1
        data = serialize(e.obj)
        if serialize(parse(data)) != data:
            res.fail(e.name, "parse∘serialize is not the identity")
    return res


ALL_CHECKS = (
    check_validators,
    check_derived_actions,
    check_roundtrips,
    check_normality_transport,
    check_quotients,
    check_lemma_criterion,
    check_quotient_comparison,
    check_coverings,
    check_functoriality,
    check_kernels,
    check_serialization,
)


def verify_corpus(entries, checks=ALL_CHECKS) -> list[CheckResult]:
    return [check(entries) for check in checks]


__all__ = [c.__name__ for c in ALL_CHECKS] + ["CheckResult", "verify_corpus", "normal_pairs", "normal_subcat1s"]
