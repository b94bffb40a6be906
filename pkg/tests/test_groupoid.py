from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gwo import (
    GpdMorphism,
    Morphism,
    NotCoveringError,
    NotNormalError,
    PreconditionError,
    SubGroupoid,
    XModMorphism,
    compare_quotients,
    covering_pullback_quotient,
    cyclic_group,
    cyclic_ring,
    enumerate_internal_normal,
    enumerate_wide_subgroupoids,
    find_isomorphism,
    gpd_kernel,
    higgins_quotient,
    hom_queries,
    ideal_inclusion_xmod,
    identity_xmod,
    internal_quotient,
    is_covering_gpd,
    is_ideal,
    is_internal_normal_subgroupoid,
    is_normal_subgroupoid_higgins,
    pair_groupoid,
    quotient_xmod,
    transport_morphism,
    trivial_gwo,
    validate_internal_gpd,
    xmod_to_gpd,
    zero_boundary_xmod,
)
from gwo.corpus import by_kind
from gwo.groupoid import InternalGroupoid, higgins_normality, subgroupoid_closure

Z4 = cyclic_ring(4)


def arrow(a, b, n):
    return a * n + b


def isomorphic_gpds(G, H):
    return (
        find_isomorphism(G.objects, H.objects) is not None
        and find_isomorphism(G.arrows, H.arrows) is not None
    )


def brute_wide_subgroupoids(G):
    units = set(G.eps.map.tolist())
    rest = [a for a in G.arrows.elements if a not in units]
    out = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            N = units | set(extra)
            ok = all(G.inverse(a) in N for a in N) and all(
                G.compose(b, a) in N for a in N for b in N if G.composable(b, a)
            )
            if ok:
                out.append(tuple(sorted(N)))
    return sorted(out, key=lambda s: (len(s), s))


@pytest.fixture(scope="module")
def groupoids(corpus):
    return [G for G in by_kind(corpus, "gpd") if G.arrows.order <= 16]


# validation ---------------------------------------------------------------------


def test_eta_image_and_pair_groupoid_are_valid():
    for G in (xmod_to_gpd(ideal_inclusion_xmod(Z4, [0, 2])), pair_groupoid(Z4)):
        assert validate_internal_gpd(G).ok
        assert oracles.gpd_valid(G)


def test_corrupted_unit_is_reported():
    G = pair_groupoid(cyclic_group(3))
    eps = G.eps.map.copy()
    eps[1] = arrow(1, 2, 3)
    bad = InternalGroupoid(G.objects, G.arrows, G.d0, G.d1, Morphism(G.objects, G.arrows, eps))
    rep = validate_internal_gpd(bad)
    assert "d1∘ε = id" in rep.axioms()
    assert not oracles.gpd_valid(bad)


def test_corpus_groupoids_agree_with_oracle(groupoids):
    for G in groupoids:
        assert validate_internal_gpd(G).ok
        assert oracles.gpd_valid(G), G.name


def test_swapped_source_and_target_still_valid():
    # the opposite groupoid is again internal
    G = xmod_to_gpd(identity_xmod(Z4))
    op = InternalGroupoid(G.objects, G.arrows, G.d1, G.d0, G.eps)
    assert validate_internal_gpd(op).ok == oracles.gpd_valid(op)


# composition --------------------------------------------------------------------


def test_pair_groupoid_composition():
    G = pair_groupoid(cyclic_group(2))
    assert G.arrows.order == 4
    assert G.compose(arrow(1, 0, 2), arrow(0, 1, 2)) == arrow(0, 0, 2)
    for a in range(2):
        u = G.unit(a)
        assert G.compose(u, u) == u
        for b in range(2):
            assert G.compose(arrow(b, a, 2), arrow(a, b, 2)) == arrow(a, a, 2)
    with pytest.raises(PreconditionError):
        G.compose(arrow(0, 1, 2), arrow(0, 1, 2))


def test_inverse_formula(groupoids):
    for G in groupoids:
        for a in G.arrows.elements:
            inv = G.inverse(a)
            assert G.compose(inv, a) == G.unit(G.source(a))
            assert G.compose(a, inv) == G.unit(G.target(a))


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_interchange_law(data):
    G = data.draw(st.sampled_from([
        xmod_to_gpd(identity_xmod(Z4)), pair_groupoid(cyclic_ring(3)), xmod_to_gpd(ideal_inclusion_xmod(Z4, [0, 2])),
    ]))
    pairs = G.composable_pairs().tolist()
    (b, a), (d, c) = data.draw(st.sampled_from(pairs)), data.draw(st.sampled_from(pairs))
    for s in G.arrows.signature.binary_symbols:
        lhs = G.compose(G.arrows.op(s, b, d), G.arrows.op(s, a, c))
        assert lhs == G.arrows.op(s, G.compose(b, a), G.compose(d, c))


# hom sets -------------------------------------------------------------------------


def test_hom_queries_on_pair_groupoid():
    G = pair_groupoid(cyclic_group(2))
    q = hom_queries(G, 0, 1)
    assert q.star == (arrow(0, 0, 2), arrow(0, 1, 2))
    assert q.hom == (arrow(0, 1, 2),)
    assert q.object_group == (G.unit(0),)
    assert sum(len(hom_queries(G, x, x).star) for x in range(2)) == G.arrows.order


# subgroupoids and normality ------------------------------------------------------------


def test_wide_subgroupoid_enumeration_matches_brute_force(groupoids):
    for G in groupoids:
        if G.arrows.order > 9:
            continue
        found = [N.N1 for N in enumerate_wide_subgroupoids(G)]
        assert found == brute_wide_subgroupoids(G), G.name


def test_trivial_normal_subgroupoids():
    G = xmod_to_gpd(identity_xmod(Z4))
    units = tuple(sorted(G.eps.map.tolist()))
    every = tuple(G.objects.elements)
    assert is_normal_subgroupoid_higgins(G, (units, every))
    assert is_normal_subgroupoid_higgins(G, (tuple(G.arrows.elements), every))


def test_lemma_criterion_agrees_on_eta_image():
    G = xmod_to_gpd(identity_xmod(Z4))
    verdicts = [higgins_normality(G, N) for N in enumerate_wide_subgroupoids(G)]
    assert verdicts and all(v.coset == v.lemma for v in verdicts)
    assert any(v.coset for v in verdicts)


def test_higgins_normality_needs_a_wide_subgroupoid():
    G = pair_groupoid(cyclic_group(2))
    with pytest.raises(PreconditionError):
        higgins_normality(G, ((0,), (0,)))


def test_pair_of_ideal_is_internal_normal():
    G = pair_groupoid(Z4)
    N = SubGroupoid(G, [arrow(a, b, 4) for a in (0, 2) for b in (0, 2)], [0, 2])
    assert N.is_subgroupoid and is_internal_normal_subgroupoid(G, N)


def test_identities_are_normal_but_not_an_ideal():
    G = pair_groupoid(Z4)
    N = SubGroupoid(G, G.eps.map.tolist(), G.objects.elements)
    assert N.is_normal_higgins
    assert not is_internal_normal_subgroupoid(G, N)


def test_kernel_is_internal_normal(groupoids):
    for G in groupoids:
        for N in enumerate_internal_normal(G):
            _, p = internal_quotient(G, N)
            K = gpd_kernel(p)
            assert (K.N1, K.N0) == (N.N1, N.N0)
            assert K.is_internal_normal


def test_transitivity_component_of_zero_is_internal_normal(groupoids):
    for G in groupoids:
        reach = set(G.d1.map[G.d0.map == G.objects.zero].tolist())
        arrows = [a for a in G.arrows.elements if G.source(a) in reach and G.target(a) in reach]
        N = SubGroupoid(G, arrows, reach)
        assert N.is_subgroupoid and N.is_internal_normal and N.is_transitive()


def test_ideal_arrows_give_ideal_objects(groupoids):
    for G in groupoids:
        for N in enumerate_internal_normal(G):
            assert is_ideal(G.objects, N.N0)


def test_closure_of_a_single_arrow():
    G = pair_groupoid(cyclic_group(3))
    N = subgroupoid_closure(G, [arrow(0, 1, 3)])
    assert set(N.N1) == {arrow(0, 0, 3), arrow(1, 1, 3), arrow(0, 1, 3), arrow(1, 0, 3)}
    assert N.N0 == (0, 1)


# quotients --------------------------------------------------------------------------


def test_internal_quotient_of_pair_groupoid():
    G = pair_groupoid(Z4)
    N = SubGroupoid(G, [arrow(a, b, 4) for a in (0, 2) for b in (0, 2)], [0, 2])
    GN, p = internal_quotient(G, N)
    assert validate_internal_gpd(GN).ok
    assert isomorphic_gpds(GN, pair_groupoid(cyclic_ring(2)))
    assert p.first_violation() is None


def test_trivial_internal_quotients():
    G = xmod_to_gpd(identity_xmod(cyclic_ring(3)))
    GN, _ = internal_quotient(G, ((G.unit(0),), (0,)))
    assert isomorphic_gpds(GN, G)
    GN, _ = internal_quotient(G, (tuple(G.arrows.elements), tuple(G.objects.elements)))
    assert GN.objects.order == 1 and GN.arrows.order == 1


def test_internal_quotient_requires_normality():
    G = pair_groupoid(Z4)
    with pytest.raises(NotNormalError):
        internal_quotient(G, (tuple(G.eps.map.tolist()), tuple(G.objects.elements)))


def test_higgins_quotient_by_identities_is_g():
    G = xmod_to_gpd(ideal_inclusion_xmod(Z4, [0, 2]))
    H = higgins_quotient(G, (tuple(G.eps.map.tolist()), tuple(G.objects.elements)))
    assert len(H.arrow_classes) == G.arrows.order
    assert len(H.object_classes) == G.objects.order


def test_higgins_quotient_by_totally_intransitive_n_has_coset_arrows():
    G = xmod_to_gpd(identity_xmod(Z4))
    for N in enumerate_wide_subgroupoids(G):
        if not _totally_intransitive(G, N) or not N.is_normal_higgins:
            continue
        H = higgins_quotient(G, N)
        for cls in H.arrow_classes:
            g = min(cls)
            coset = {G.compose(g, n) for n in N.vertex_group(G.source(g))}
            assert coset == set(cls)


def _totally_intransitive(G, N):
    return all(G.source(a) == G.target(a) for a in N.N1)


def test_transitive_n_gives_one_object():
    G = xmod_to_gpd(identity_xmod(Z4))
    N = (tuple(G.arrows.elements), tuple(G.objects.elements))
    H = higgins_quotient(G, N)
    assert len(H.object_classes) == 1


def test_compare_quotients_examples():
    G = xmod_to_gpd(identity_xmod(Z4))
    every = tuple(G.objects.elements)
    assert compare_quotients(G, (tuple(G.arrows.elements), every)).verdict == "equal"
    P = pair_groupoid(Z4)
    N = SubGroupoid(P, [arrow(a, b, 4) for a in (0, 2) for b in (0, 2)], [0, 2])
    with pytest.raises(PreconditionError):
        compare_quotients(P, N)  # not wide
    single = xmod_to_gpd(zero_boundary_xmod(cyclic_ring(2, zero_mult=True), trivial_gwo(Z4.signature)))
    assert single.objects.order == 1
    for M in enumerate_internal_normal(single, wide_only=True):
        assert compare_quotients(single, M).verdict == "equal"


def test_identities_only_quotients_differ():
    G = xmod_to_gpd(ideal_inclusion_xmod(Z4, [0, 2]))
    for N in enumerate_internal_normal(G, wide_only=True):
        cmp = compare_quotients(G, N)
        assert (cmp.verdict == "equal") == N.is_transitive() == cmp.transitive


# coverings -------------------------------------------------------------------------


def test_identity_is_a_covering(groupoids):
    for G in groupoids:
        assert is_covering_gpd(GpdMorphism.identity(G))


def test_projection_collapsing_a_star_is_not_a_covering():
    G = xmod_to_gpd(identity_xmod(Z4))
    for N in enumerate_internal_normal(G):
        _, p = internal_quotient(G, N)
        collapses = len(N.N1) > len(N.N0)
        assert is_covering_gpd(p) != collapses


def test_transported_xmod_covering_is_a_covering():
    X = ideal_inclusion_xmod(Z4, [0, 2])
    _, m = quotient_xmod(X, [0], [0, 2])
    p = transport_morphism("xmod->gpd", m)
    assert is_covering_gpd(p)
    Y, q = quotient_xmod(identity_xmod(Z4), [0, 2], [0, 2])
    assert not is_covering_gpd(transport_morphism("xmod->gpd", q))


def test_pullback_quotient_along_identity():
    G = xmod_to_gpd(identity_xmod(Z4))
    for N in enumerate_internal_normal(G):
        out = covering_pullback_quotient(GpdMorphism.identity(G), N)
        assert out.covering
        assert out.induced.arrows.map.tolist() == list(range(out.induced.dom.arrows.order))


def test_pullback_quotient_of_trivial_n():
    X = ideal_inclusion_xmod(Z4, [0, 2])
    _, m = quotient_xmod(X, [0], [0, 2])
    p = transport_morphism("xmod->gpd", m)
    G = p.cod
    out = covering_pullback_quotient(p, ((G.unit(0),), (0,)))
    assert out.covering
    K = gpd_kernel(p)
    assert (out.N_tilde.N1, out.N_tilde.N0) == (K.N1, K.N0)
    assert isomorphic_gpds(out.induced.cod, G)
    # p is onto with kernel K, so the induced map is an isomorphism
    assert out.induced.arrows.is_bijective() and out.induced.objects.is_bijective()


def test_pullback_requires_a_covering():
    G = xmod_to_gpd(identity_xmod(Z4))
    N = enumerate_internal_normal(G)[1]
    _, q = internal_quotient(G, N)
    with pytest.raises(NotCoveringError):
        covering_pullback_quotient(q, enumerate_internal_normal(q.cod)[0])


def test_pullback_quotients_over_corpus_coverings(corpus):
    for m in by_kind(corpus, "morphism"):
        if not isinstance(m, XModMorphism) or m.dom.A.order * m.dom.B.order > 16:
            continue
        p = transport_morphism("xmod->gpd", m)
        for N in enumerate_internal_normal(p.cod):
            assert covering_pullback_quotient(p, N).covering
