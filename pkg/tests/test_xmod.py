import numpy as np
import pytest

import oracles
from gwo import (
    ActionSet,
    CrossedModule,
    InconsistencyError,
    IsoWitness,
    Morphism,
    NotNormalError,
    PreconditionError,
    XModMorphism,
    cyclic_group,
    cyclic_ring,
    find_isomorphism,
    ideal_inclusion_xmod,
    identity_xmod,
    is_covering_xmod,
    is_ideal,
    is_normal_subxmod,
    is_subxmod,
    isomorphism_theorem,
    quotient_xmod,
    semidirect_quotient_iso,
    validate_xmod,
    xmod_kernel,
    zero_boundary_xmod,
    zero_xmod,
)
from gwo.corpus import by_kind, symmetric_group
from gwo.verify import normal_pairs
from gwo.xmod import is_xmod_morphism, sub_crossed_module

Z4 = cyclic_ring(4)


def isomorphic_xmods(X, Y):
    return find_isomorphism(X.A, Y.A) is not None and find_isomorphism(X.B, Y.B) is not None


@pytest.fixture(scope="module")
def xmods(corpus):
    return [X for X in by_kind(corpus, "xmod") if X.A.order * X.B.order <= 32]


# validation -------------------------------------------------------------------


def test_ideal_inclusion_is_valid():
    X = ideal_inclusion_xmod(Z4, [0, 2])
    assert validate_xmod(X).ok and oracles.xmod_valid(X)
    assert (X.acts.dot == np.arange(2)).all()


def test_identity_crossed_module_is_valid():
    X = identity_xmod(Z4)
    assert validate_xmod(X).ok and oracles.xmod_valid(X)


def test_translation_action_fails_at_derived_action_stage():
    Z2 = cyclic_group(2)
    dot = [[(a + b) % 2 for a in range(2)] for b in range(2)]
    X = CrossedModule(Z2, Z2, ActionSet(Z2, Z2, dot), Morphism.identity(Z2))
    rep = validate_xmod(X)
    assert any(a.startswith("derived-action: ") for a in rep.axioms())
    assert not oracles.xmod_valid(X)


def test_zero_boundary_needs_singular_source():
    assert validate_xmod(zero_boundary_xmod(cyclic_ring(2, zero_mult=True), Z4)).ok
    rep = validate_xmod(zero_boundary_xmod(cyclic_ring(2), Z4))
    assert any(a.startswith("CM3") for a in rep.axioms())
    assert validate_xmod(zero_boundary_xmod(cyclic_group(3), cyclic_group(2))).ok
    rep = validate_xmod(zero_boundary_xmod(symmetric_group(3), cyclic_group(2)))
    assert "CM2" in rep.axioms()


def test_boundary_must_be_a_morphism():
    X = identity_xmod(Z4)
    bad = CrossedModule(X.A, X.B, X.acts, Morphism(X.A, X.B, [0, 3, 2, 1]))
    rep = validate_xmod(bad)
    assert any(a.startswith("boundary") or a.startswith("CM") for a in rep.axioms())


def test_corpus_crossed_modules_pass_oracle(xmods):
    for X in xmods:
        assert validate_xmod(X).ok
        assert oracles.xmod_valid(X), X.name


# subcrossed modules -------------------------------------------------------------


def test_subcrossed_modules_of_identity():
    X = identity_xmod(Z4)
    assert is_subxmod(X, [0, 2], [0, 2])
    assert is_subxmod(X, [0], [0])
    assert not is_subxmod(X, [0, 2], [0])


def test_normal_pair_in_identity_xmod():
    ok, rep = is_normal_subxmod(identity_xmod(Z4), [0, 2], [0, 2])
    assert ok and rep.normal and rep.s_is_ideal


def test_wide_t_fails_ncm5():
    ok, rep = is_normal_subxmod(identity_xmod(Z4), [0, 2], range(4))
    assert not ok
    assert rep.ncm1 and rep.ncm2 and rep.ncm3 and rep.ncm4 and not rep.ncm5
    assert rep.witnesses["NCM5"] == (1, 1)


def test_normality_needs_a_subcrossed_module():
    with pytest.raises(PreconditionError):
        is_normal_subxmod(identity_xmod(Z4), [0, 2], [0])


def test_normal_implies_s_ideal(xmods):
    for X in xmods:
        for S, T, normal in normal_pairs(X):
            if normal:
                assert is_ideal(X.A, S)


# quotients and kernels -------------------------------------------------------------


def test_identity_mod_two():
    Q, p = quotient_xmod(identity_xmod(Z4), [0, 2], [0, 2])
    assert validate_xmod(Q).ok
    assert isomorphic_xmods(Q, identity_xmod(cyclic_ring(2)))
    assert Q.boundary.map.tolist() == [0, 1]
    assert xmod_kernel(p).S == (0, 2) and xmod_kernel(p).T == (0, 2)


def test_trivial_quotients():
    X = ideal_inclusion_xmod(Z4, [0, 2])
    Q, _ = quotient_xmod(X, [0], [0])
    assert isomorphic_xmods(Q, X)
    Q, _ = quotient_xmod(X, X.A.elements, X.B.elements)
    assert Q.A.order == 1 and Q.B.order == 1


def test_quotient_requires_normality():
    with pytest.raises(NotNormalError):
        quotient_xmod(identity_xmod(Z4), [0, 2], range(4))


def test_kernels_of_identity_and_zero():
    X = identity_xmod(Z4)
    K = xmod_kernel(XModMorphism.identity(X))
    assert (K.S, K.T) == ((0,), (0,)) and K.is_normal
    Z = zero_xmod(Z4)
    to_zero = XModMorphism(X, Z, Morphism.zero(X.A, Z.A), Morphism.zero(X.B, Z.B))
    assert is_xmod_morphism(to_zero)[0]
    K = xmod_kernel(to_zero)
    assert (K.S, K.T) == (tuple(X.A.elements), tuple(X.B.elements))


def test_quotients_validate_and_kernels_match(xmods):
    for X in xmods:
        for S, T, normal in normal_pairs(X):
            if not normal:
                continue
            Q, p = quotient_xmod(X, S, T)
            assert validate_xmod(Q).ok
            assert is_xmod_morphism(p)[0]
            K = xmod_kernel(p)
            assert (K.S, K.T) == (S, T)


# isomorphism theorems ---------------------------------------------------------------


def test_isomorphism_theorem_for_reduction():
    X = identity_xmod(Z4)
    Y, p = quotient_xmod(X, [0, 2], [0, 2])
    image, w = isomorphism_theorem(p)
    assert image.S == tuple(Y.A.elements) and image.T == tuple(Y.B.elements)
    assert isinstance(w, IsoWitness)
    assert w.forward.f.map.tolist() == [0, 1]


def test_isomorphism_theorem_for_identity():
    X = ideal_inclusion_xmod(Z4, [0, 2])
    image, w = isomorphism_theorem(XModMorphism.identity(X))
    assert image.S == tuple(X.A.elements)
    assert w.forward.f.map.tolist() == list(X.A.elements)


def test_semidirect_quotient_iso_examples():
    X = identity_xmod(Z4)
    w = semidirect_quotient_iso(X, [0, 2], [0, 2])
    assert w.forward.dom.order == 4
    w = semidirect_quotient_iso(X, [0], [0])
    assert w.forward.map.tolist() == list(range(16))
    w = semidirect_quotient_iso(X, range(4), range(4))
    assert w.forward.dom.order == 1


def test_iso_witness_rejects_non_inverse_pair():
    X = identity_xmod(Z4)
    idm = XModMorphism.identity(X)
    twist = XModMorphism(X, X, Morphism(X.A, X.A, [0, 3, 2, 1]), Morphism(X.B, X.B, [0, 3, 2, 1]))
    with pytest.raises(InconsistencyError):
        IsoWitness(idm, twist)


# coverings ----------------------------------------------------------------------


def test_coverings():
    X = ideal_inclusion_xmod(Z4, [0, 2])
    assert is_covering_xmod(XModMorphism.identity(X))
    Y, p = quotient_xmod(X, [0], [0, 2])
    assert is_xmod_morphism(p)[0]
    assert p.g.map.tolist() == [0, 1, 0, 1]
    assert is_covering_xmod(p)
    _, q = quotient_xmod(identity_xmod(Z4), [0, 2], [0, 2])
    assert not is_covering_xmod(q)


def test_sub_crossed_module_inclusion():
    X = identity_xmod(Z4)
    Y, inc = sub_crossed_module(X, [0, 2], [0, 2])
    assert validate_xmod(Y).ok
    assert is_xmod_morphism(inc)[0]
    with pytest.raises(PreconditionError):
        sub_crossed_module(X, [0, 2], [0])
