import pytest
from hypothesis import given, settings, strategies as st

import oracles
from finite2cat import (CompositionError, ch_star, chaotic, discrete, enumerate_two_functors,
                        is_gaunt, ordinal, point, theta, walking_2cell, walking_2iso,
                        walking_retract)
from finite2cat.core2cat import theta_presentation, two_functor_violations
from finite2cat.corpus import nps_from_json, nps_to_json
from finite2cat.nps import (NormalPseudofunctor, enumerate_nps, extend_compositor,
                            from_two_functor, is_valid_nps, precompose, pushforward_free,
                            validate_nps)


def failing(F):
    return sorted(ax for ax, vs in validate_nps(F).items() if vs)


def test_strict_functors_are_normal():
    for A, B in [(theta(1, [1]), walking_2iso()), (discrete(ordinal(2)), walking_2cell())]:
        for G in enumerate_two_functors(A, B):
            F = from_two_functor(G)
            assert failing(F) == []
            assert F.is_strict()
            assert F.strict_part() == G


def test_identity_nps():
    D = ch_star(walking_retract())
    (G,) = [X for X in enumerate_two_functors(D, D)
            if all(X.on1(f) == f for f in D.cells1()) and all(X.on2(a) == a for a in D.cells2())]
    assert is_valid_nps(from_two_functor(G))


def test_corrupted_compositor_fails():
    Fs = [F for F in enumerate_nps(discrete(ordinal(2)), walking_2iso()) if not F.is_strict()]
    F = Fs[0]
    B = F.target
    pair = next(p for p, t in F.comp.items() if not B.is_identity2(t[3]))
    comp = dict(F.comp)
    t = comp[pair]
    comp[pair] = (t[0], t[1], t[2], B.ident2(t[2]))
    G = NormalPseudofunctor(F.source, B, F.obj, F.one, F.two, comp)
    assert failing(G)


def test_wrong_boundary_fails_axiom_a():
    (G,) = [X for X in enumerate_two_functors(theta(1, [0]), walking_2cell()) if X.obj == (0, 1)
            and X.on1((0, 1, 0)) == (0, 1, 0)]
    F = from_two_functor(G)
    one = dict(F.one)
    one[(0, 1, 0)] = (1, 1, 0)
    bad = NormalPseudofunctor(F.source, F.target, F.obj, one, F.two, F.comp)
    assert "a" in failing(bad)


@pytest.mark.parametrize("A,B", [(discrete(ordinal(2)), walking_2iso()),
                                 (discrete(ordinal(2)), walking_2cell()),
                                 (discrete(chaotic(1)), walking_2iso()),
                                 (theta(1, [1]), walking_2iso()),
                                 (theta(2, [0, 0]), ch_star(walking_retract()))])
def test_enumeration_matches_oracle(A, B):
    got = enumerate_nps(A, B)
    assert len(got) == len(set(got))
    assert len(got) == oracles.nps_count(A, B)
    assert all(is_valid_nps(F) for F in got)


def test_chain_into_walking_iso():
    assert len(enumerate_nps(discrete(ordinal(2)), walking_2iso())) == 10


def test_gaunt_target_forces_strictness():
    for A, B in [(discrete(ordinal(2)), walking_2cell()), (theta(2, [1, 0]), theta(2, [1, 1]))]:
        assert is_gaunt(B)
        got = enumerate_nps(A, B)
        assert all(F.is_strict() for F in got)
        assert len(got) == len(enumerate_two_functors(A, B))


def test_strict_ones_are_the_two_functors():
    A, B = discrete(ordinal(2)), walking_2iso()
    strict = {F.strict_part() for F in enumerate_nps(A, B) if F.is_strict()}
    assert strict == set(enumerate_two_functors(A, B))


def test_enumeration_is_deterministic():
    A, B = discrete(chaotic(1)), walking_2iso()
    assert enumerate_nps(A, B) == enumerate_nps(A, B)


def chain_category(k):
    return discrete(ordinal(k))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_extended_compositor_independent_of_bracketing(k):
    A = chain_category(k)
    chain = [(s, s + 1, 0) for s in range(k)]
    for F in enumerate_nps(A, walking_2iso()):
        left = extend_compositor(F, chain, bracketing="left")
        right = extend_compositor(F, chain, bracketing="right")
        assert left == right
        B = F.target
        assert B.is_iso2(left)


def test_extended_compositor_edge_cases():
    F = enumerate_nps(discrete(ordinal(2)), walking_2iso())[0]
    B = F.target
    assert B.is_identity2(extend_compositor(F, [], obj=0))
    assert extend_compositor(F, [(0, 1, 0)]) == B.ident2(F.one[(0, 1, 0)])
    assert extend_compositor(F, [(0, 1, 0), (1, 2, 0)]) == F.compositor((0, 1, 0), (1, 2, 0))
    with pytest.raises(ValueError):
        extend_compositor(F, [])
    with pytest.raises(CompositionError):
        extend_compositor(F, [(0, 1, 0), (0, 1, 0)])


def test_pushforward_of_strict_is_composite():
    T = theta_presentation(2, [1, 0])
    for G in enumerate_two_functors(T.A, theta(2, [1, 0]))[:6]:
        for H in enumerate_two_functors(theta(2, [1, 0]), walking_2cell()):
            P = pushforward_free(T, G, from_two_functor(H))
            for f in T.A.cells1():
                assert P.on1(f) == H.on1(G.on1(f))
            for a in T.A.cells2():
                assert P.on2(a) == H.on2(G.on2(a))


def test_pushforward_is_a_two_functor():
    T = theta_presentation(2, [0, 0])
    A = discrete(ordinal(2))
    for G in enumerate_two_functors(T.A, A):
        for F in enumerate_nps(A, walking_2iso()):
            P = pushforward_free(T, G, F)
            assert two_functor_violations(P) == []


def test_pushforward_natural_in_the_free_source():
    # restricting along a map of presentations commutes with pushing forward
    T2 = theta_presentation(2, [0, 0])
    T1 = theta_presentation(1, [0])
    A = discrete(ordinal(2))
    maps = [u for u in enumerate_two_functors(T1.A, T2.A)
            if all(len(T2.word[u.on1(g)]) == 1 for g in T1.generators)]
    assert maps
    for G in enumerate_two_functors(T2.A, A):
        for F in enumerate_nps(A, walking_2iso()):
            P2 = pushforward_free(T2, G, F)
            for u in maps:
                P1 = pushforward_free(T1, u.then(G), F)
                for f in T1.A.cells1():
                    assert P1.on1(f) == P2.on1(u.on1(f))
                for a in T1.A.cells2():
                    assert P1.on2(a) == P2.on2(u.on2(a))


def test_precompose_keeps_axioms():
    A = discrete(ordinal(2))
    for G in enumerate_two_functors(discrete(ordinal(1)), A):
        for F in enumerate_nps(A, walking_2iso()):
            assert is_valid_nps(precompose(F, G))


def test_json_roundtrip():
    for F in enumerate_nps(discrete(chaotic(1)), walking_2iso()):
        data = nps_to_json(F)
        assert nps_from_json(data) == F


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2), st.sampled_from(["S1", "SI", "point"]))
def test_nps_from_chain_have_valid_restrictions(k, tname):
    B = {"S1": walking_2cell(), "SI": walking_2iso(), "point": point()}[tname]
    A = chain_category(k)
    Fs = enumerate_nps(A, B)
    assert len(Fs) == oracles.nps_count(A, B)
    for F in Fs:
        for G in enumerate_two_functors(point(), A):
            assert is_valid_nps(precompose(F, G))
