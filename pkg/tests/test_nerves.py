import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from finite2cat import (ch_star, chaotic, discrete, is_gaunt, ordinal, point, product, theta,
                        walking_2cell, walking_2iso, walking_retract)
from finite2cat.nerves import (KNOCKOUTS, DuskinNerve, GauntBisimplicial, LevelError,
                               PrecatNerve, RezkNerve, ScaledNerve, TDeltaNerve, Theta2Nerve,
                               appendix_roundtrip, check_coskeletal, check_leinster_vs_moser,
                               check_optimistic, check_precat_maps, check_segal,
                               check_simplicial_identities, check_within_simplicial,
                               degeneracy_map, diagonal_map, duskin_level, face_map,
                               monotone_maps, precat_level, reflect, rezk_level,
                               scaled_nerve_level, tdelta_nerve_level, theta_shape)


def as_triangle(x):
    e01, e02, e12 = x[1]
    return (e01, e12, e02, x[2][0])


def test_operator_helpers():
    assert face_map(2, 1) == (0, 2)
    assert degeneracy_map(1, 0) == (0, 0, 1)
    assert len(monotone_maps(1, 2)) == 6


@pytest.mark.parametrize("D,count", [(walking_2cell(), 8), (walking_2iso(), 10),
                                     (discrete(ordinal(2)), 10)])
def test_duskin_two_simplices_match_oracle(D, count):
    level = duskin_level(D, 2)
    assert len(level) == count
    assert sorted(map(as_triangle, level)) == sorted(oracles.duskin_2_simplices(D))


def test_duskin_low_levels():
    D = walking_2cell()
    assert len(duskin_level(D, 0)) == D.n
    assert len(duskin_level(D, 1)) == len(D.cells1())
    assert len(duskin_level(point(), 4)) == 1


def test_duskin_faces_of_a_triangle():
    P = DuskinNerve(walking_2cell())
    for x in P.level((2,)):
        e01, e02, e12 = x[1]
        assert P.face((2,), 0, 2, x)[1] == (e01,)
        assert P.face((2,), 0, 1, x)[1] == (e02,)
        assert P.face((2,), 0, 0, x)[1] == (e12,)


@pytest.mark.parametrize("D", [walking_2cell(), walking_2iso(), ch_star(walking_retract())],
                         ids=["S1", "SI", "retract"])
def test_duskin_simplicial_identities(D):
    assert check_simplicial_identities(DuskinNerve(D), [(n,) for n in range(4)]) == []


@pytest.mark.parametrize("D", [walking_2cell(), walking_2iso(), theta(2, [1, 0])])
def test_duskin_is_coskeletal(D):
    for n in (3, 4):
        assert check_coskeletal(D, n)["pass"]


def test_tdelta_markings():
    D = walking_2iso()
    lvl1 = tdelta_nerve_level(D, 1)
    assert all(bool(w) == D.is_identity1(x[1][0]) for x, w in lvl1)
    lvl2 = tdelta_nerve_level(D, 2)
    assert all(bool(w) == D.is_iso2(x[2][0]) for x, w in lvl2)
    assert all(w for _, w in tdelta_nerve_level(D, 3))
    assert not any(w for _, w in tdelta_nerve_level(D, 0))


def test_tdelta_marks_retract_arrow_once():
    D = ch_star(walking_retract())
    marks = {x[1][0]: len(w) for x, w in tdelta_nerve_level(D, 1)}
    assert marks[(0, 1, 0)] == 1


def test_reflect_collapses_multiplicity():
    assert reflect([("a", ()), ("b", (1, 2)), ("c", True)]) == [("a", False), ("b", True),
                                                               ("c", True)]


@pytest.mark.parametrize("D", [walking_2cell(), walking_2iso(), ch_star(walking_retract()),
                               discrete(chaotic(1))])
def test_degenerate_simplices_marked(D):
    for rule in (None,) + KNOCKOUTS:
        P = TDeltaNerve(D, knockout=rule)
        for n in (1, 2, 3):
            for x in P.level((n,)):
                if P.is_degenerate((n,), x):
                    assert P.is_marked(n, x), (rule, n, x)


def test_unknown_knockout():
    with pytest.raises(ValueError):
        TDeltaNerve(walking_2cell(), knockout="bogus")


def test_scaled_nerve_marks_invertible_triangles():
    D = walking_2iso()
    lvl = scaled_nerve_level(D, 2)
    assert sum(m for _, m in lvl) == len(oracles.triangles(D)) == 10
    assert not any(m for _, m in scaled_nerve_level(D, 1))


def test_within_simplicial(corpus):
    for D in corpus[:8]:
        ok, rec = check_within_simplicial(D, 3, report=True)
        assert ok, D.name
        assert [r["n"] for r in rec] == [0, 1, 2, 3]


def test_scaled_matches_tdelta_on_two_simplices():
    D = ch_star(walking_retract())
    S, T = ScaledNerve(D), TDeltaNerve(D)
    for x in S.level((2,)):
        assert S.is_marked(2, x) == T.is_marked(2, x)


def test_rezk_counts_match_oracle():
    for C in [ordinal(1), chaotic(1), walking_retract()]:
        for j, k in itertools.product(range(3), range(2)):
            if j + k > 2:
                continue
            assert len(rezk_level(C, j, k)) == oracles.rezk_count(C, j, k)


def test_rezk_anchor_values():
    assert oracles.rezk_count(ordinal(1), 1, 0) == 3
    assert len(rezk_level(chaotic(1), 0, 1)) == 4


def test_rezk_simplicial_identities():
    P = RezkNerve(walking_retract())
    shapes = list(itertools.product(range(3), range(2)))
    assert check_simplicial_identities(P, shapes) == []


def test_precat_low_levels():
    D = walking_2cell()
    assert len(precat_level(D, 0, 0, 0)) == D.n
    assert len(precat_level(D, 1, 0, 0)) == len(D.cells1())
    assert len(precat_level(D, 1, 1, 0)) == len(D.cells2())


def test_precat_simplicial_identities():
    for D in (walking_2iso(), ch_star(walking_retract())):
        P = PrecatNerve(D)
        shapes = list(itertools.product(range(3), range(2), range(2)))
        assert check_simplicial_identities(P, shapes) == []


def test_precat_array_form_agrees_with_tuples():
    P = PrecatNerve(walking_2iso())
    dt, g1, g2 = P._globals()[:3]

    def row(x, i, j, k):
        objs, fs = x
        a = list(objs)
        fo = [g1[(objs[s], objs[s + 1], o)] for s, F in enumerate(fs) for o in F[0]]
        fm = [g2[(objs[s], objs[s + 1], m)] for s, F in enumerate(fs) for m in F[1]]
        return a + fo + fm

    for shape in [(0, 1, 0), (1, 1, 1), (2, 1, 0), (2, 0, 1)]:
        X = P.level(shape)
        arr = P.level_array(shape)
        assert np.array_equal(P.rows(arr), np.array([row(x, *shape) for x in X]).reshape(
            len(X), -1))
        i, j, k = shape
        for al in monotone_maps(1, i) if i else [(0,)]:
            for be in monotone_maps(j, j):
                maps = (al, be, tuple(range(k + 1)))
                got = P.rows(P.act_array(shape, maps, arr))
                i2 = len(al) - 1
                want = [row(P.act(shape, maps, x), i2, len(be) - 1, k) for x in X]
                assert np.array_equal(got, np.array(want).reshape(len(X), -1))


@pytest.mark.parametrize("D", [walking_2cell(), walking_2iso(), ch_star(walking_retract())],
                         ids=["S1", "SI", "retract"])
def test_segal(D):
    for i, j, k in itertools.product(range(4), range(2), range(2)):
        assert check_segal(D, i, j, k), (i, j, k)


def test_level_errors():
    P = DuskinNerve(walking_2cell())
    with pytest.raises(LevelError):
        P.level((-1,))
    with pytest.raises(LevelError):
        P.face((0,), 0, 0, P.level((0,))[0])
    with pytest.raises(ValueError):
        theta_shape(2, [1])


def test_theta2_nerve_examples():
    D = walking_2iso()
    N = Theta2Nerve(D)
    assert len(N.level((0, ()))) == D.n
    assert len(N.level((1, (0,)))) == len(D.cells1())
    assert len(N.level((2, (0, 0)))) == 10


def test_theta2_functoriality():
    N = Theta2Nerve(walking_2iso())
    G1 = diagonal_map((0, 1), (0, 0), 1, 1)
    G2 = diagonal_map((0, 2), (0, 1), 2, 1)
    for x in N.level((2, (1, 1))):
        assert N.act(G1, N.act(G2, x)) == N.act(G1.then(G2), x)


def test_gaunt_bisimplicial_requires_gaunt():
    with pytest.raises(ValueError):
        GauntBisimplicial(walking_2iso())


def test_gaunt_bisimplicial_identities():
    P = GauntBisimplicial(theta(2, [1, 0]))
    shapes = [(i, j) for i in range(3) for j in range(3) if i + j <= 3]
    assert check_simplicial_identities(P, shapes) == []


@pytest.mark.parametrize("A", [point(), walking_2cell(), theta(2, [1, 0]),
                               discrete(ordinal(2))])
def test_optimistic_and_leinster_moser(A):
    assert is_gaunt(A)
    assert all(r["pass"] for r in check_optimistic(A, 2, 2))
    assert all(r["pass"] for r in check_leinster_vs_moser(A, 2, 2))


def test_optimistic_rejects_non_gaunt():
    with pytest.raises(ValueError):
        check_optimistic(walking_2iso())


@pytest.mark.parametrize("A,B", [(point(), walking_2cell()), (theta(1, [0]), theta(1, [1])),
                                 (theta(1, [0]), theta(2, [0, 0])),
                                 (theta(2, [0, 0]), theta(1, [1]))])
def test_appendix_roundtrip(A, B):
    rec = appendix_roundtrip(A, B)
    assert rec["pass"], rec
    assert rec["maps"] == rec["nps"]


@pytest.mark.parametrize("A,B", [(point(), walking_2iso()), (theta(1, [0]), walking_2cell()),
                                 (walking_2iso(), ch_star(walking_retract()))])
def test_precat_maps(A, B):
    rec = check_precat_maps(A, B, 2, 1, 1)
    assert rec["pass"], rec


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2), st.integers(0, 1))
def test_rezk_of_products_hypothesis(j, k):
    C = product([ordinal(1), chaotic(1)])
    assert len(rezk_level(C, j, k)) == oracles.rezk_count(C, j, k)
