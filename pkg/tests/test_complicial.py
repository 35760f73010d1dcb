import pytest

import oracles
from finite2cat import (ch_star, chaotic, discrete, ordinal, point, theta, walking_2cell,
                        walking_2iso, walking_retract)
from finite2cat.complicial import (EMPTY_COMPLEX, GeneratorMap, MarkedComplex, build_generator,
                                   fibrancy_report, full_simplex, generators, has_rlp,
                                   knockout_report, maps_into, marked_join, nerve_for, standard)
from finite2cat.nerves import TDeltaNerve


def test_full_simplex_size():
    assert len(full_simplex(3)) == 15
    assert len(standard(2).simplices) == 7


def test_malformed_complex_rejected():
    with pytest.raises(ValueError):
        MarkedComplex(2, {(0, 1, 2)})
    with pytest.raises(ValueError):
        MarkedComplex(1, {(0,), (1,), (0, 1)}, marked={(0,)})
    with pytest.raises(ValueError):
        MarkedComplex(2, full_simplex(2), marked={(0, 1)}, mode="scaled")
    with pytest.raises(ValueError):
        MarkedComplex(1, full_simplex(1), mode="weird")


def test_inner_horn_shape():
    g = build_generator("inner_horn", 3, 1)
    assert g.codomain.simplices - g.domain.simplices == {(0, 1, 2, 3), (0, 2, 3)}
    # simplices containing {0, 1, 2} are marked
    assert g.codomain.marked == {(0, 1, 2), (0, 1, 2, 3)}
    assert g.domain.marked == {(0, 1, 2)}


def test_thinness_shape():
    g = build_generator("thinness", 3, 2)
    assert g.codomain.marked - g.domain.marked == {(0, 1, 3)}
    assert {(0, 2, 3), (0, 1, 2)} <= g.domain.marked


def test_triviality_and_saturation_shapes():
    t = build_generator("triviality", 3)
    assert t.codomain.marked == {(0, 1, 2, 3)}
    s = build_generator("saturation", -1)
    assert s.domain.N == 3
    assert s.codomain.marked - s.domain.marked == {(0, 1), (1, 2), (2, 3), (0, 3)}
    s0 = build_generator("saturation", 0)
    assert s0.domain.N == 4
    assert (4,) in s0.domain.simplices and (4,) not in s0.domain.marked


def test_scaled_generators():
    h = build_generator("scaled_inner_horn", 2, 1)
    assert (0, 1, 2) not in h.domain.simplices
    assert h.codomain.marked == {(0, 1, 2)}
    o = build_generator("scaled_outer_horn", 3)
    assert o.domain.collapse == (0, 1)
    sat = build_generator("scaled_saturation", 4)
    assert sat.codomain.marked - sat.domain.marked == {(0, 3, 4), (0, 1, 4)}


@pytest.mark.parametrize("args", [("inner_horn", 2, 0), ("inner_horn", 1, 1),
                                  ("thinness", 3, 3), ("triviality", 2),
                                  ("saturation", 2), ("scaled_outer_horn", 2),
                                  ("bogus", 3)])
def test_generator_errors(args):
    with pytest.raises(ValueError):
        build_generator(*args)


def test_generator_lists():
    names = [g.name for g in generators("tdelta", 3)]
    assert names == ["inner_horn(m=2, k=1)", "inner_horn(m=3, k=1)", "inner_horn(m=3, k=2)",
                     "thinness(m=2, k=1)", "thinness(m=3, k=1)", "thinness(m=3, k=2)",
                     "triviality(m=3)", "saturation(m=-1)", "saturation(m=0)"]
    scaled = [g.name for g in generators("scaled", 3)]
    assert scaled[-1] == "scaled_saturation(m=4)"
    with pytest.raises(ValueError):
        generators("other")


def test_non_inclusion_rejected():
    with pytest.raises(ValueError):
        GeneratorMap(standard(2, {(0, 1)}), standard(2), "bad")


def test_marked_join_examples():
    pt = standard(0)
    J = marked_join(pt, pt)
    assert J.simplices == {(0,), (1,), (0, 1)} and not J.marked
    M = marked_join(standard(1, {(0, 1)}), pt)
    assert M.marked == {(0, 1), (0, 1, 2)}
    E = marked_join(EMPTY_COMPLEX, standard(1))
    assert E.simplices == standard(1).simplices


def test_point_nerve_is_fibrant():
    for mode in ("tdelta", "scaled"):
        assert all(r["pass"] for r in fibrancy_report(point(), 3, mode))


def composable_pairs(D):
    R = oracles.Raw(D)
    return [(f, g) for f in R.c1 for g in R.c1 if f[1] == g[0]]


@pytest.mark.parametrize("D", [walking_2cell(), walking_2iso(), ch_star(walking_retract())],
                         ids=["S1", "SI", "retract"])
def test_low_horn_lifts_match_brute_force(D):
    # a map from the 2-horn is a composable pair; it lifts exactly when a
    # triangle with an invertible 2-cell has that pair as its spine
    X = TDeltaNerve(D)
    g = build_generator("inner_horn", 2, 1)
    ok, count = has_rlp(g, X)
    pairs = composable_pairs(D)
    tri = {(t[0], t[1]) for t in oracles.triangles(D)}
    assert count == len(pairs)
    assert ok == all(p in tri for p in pairs)
    assert sum(1 for _ in maps_into(g.domain, X)) == len(pairs)


def test_thinness_fails_on_unmarked_iso():
    D = walking_2iso()
    X = TDeltaNerve(D)
    target = next(x for x in X.level((2,)) if not X.is_degenerate((2,), x)
                  and D.is_iso2(x[2][0]))
    Y = TDeltaNerve(D, unmarked=[target])
    rec = fibrancy_report(D, 3, "tdelta", Y)
    assert not all(r["pass"] for r in rec)
    bad = next(r for r in rec if not r["pass"])
    assert bad["witness"] is not None


@pytest.mark.parametrize("mode", ["tdelta", "scaled"])
def test_small_members_fibrant(mode):
    for D in (walking_2cell(), walking_2iso(), discrete(chaotic(1)), theta(2, [1, 0])):
        rec = fibrancy_report(D, 3, mode)
        assert all(r["pass"] for r in rec), (D.name, [r["generator"] for r in rec if not r["pass"]])


def test_witness_is_deterministic():
    D = ch_star(walking_retract())
    a = fibrancy_report(D, 3, "tdelta", nerve_for(D, "tdelta", knockout="equivalences"))
    b = fibrancy_report(D, 3, "tdelta", nerve_for(D, "tdelta", knockout="equivalences"))
    assert a == b
    assert not all(r["pass"] for r in a)


def test_knockouts_each_detected():
    corpus = [walking_2cell(), discrete(ordinal(3)), ch_star(walking_retract())]
    rep = knockout_report(corpus, 3)
    assert rep["equivalences"]["member"] == "ch*(retract)"
    assert rep["isomorphisms"]["generator"] == "inner_horn(m=2, k=1)"
    assert rep["higher"]["generator"] == "inner_horn(m=3, k=1)"


def test_nerve_for_errors():
    with pytest.raises(ValueError):
        nerve_for(point(), "scaled", knockout="higher")
    with pytest.raises(ValueError):
        nerve_for(point(), "bogus")
    with pytest.raises(ValueError):
        fibrancy_report(point(), 5)
