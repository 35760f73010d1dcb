import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from finite2cat import (CompositionError, ch_star, chaotic, classify_cells, construct_category,
                        construct_two_category, discrete, enumerate_functors,
                        enumerate_two_functors, is_gaunt, ordinal, point, product, sigma,
                        sigma_i, theta, triangles, validate_two_category, walking_2cell,
                        walking_2iso, walking_retract, whisker_compose)
from finite2cat.core2cat import adjoint_completions, is_equivalence
from finite2cat.corpus import CORRUPTIONS, corrupt, corruption_sites, to_json

SMALL = ["[0|]", "disc([1])", "disc([2])", "disc(~[1])", "S([1])", "S(~[1])", "[1|2]",
         "[2|1,0]", "ch*(retract)", "S([1]x~[1])"]


def by_name(corpus, name):
    return next(D for D in corpus if D.name == name)


def test_category_counts():
    assert (ordinal(2).n_obj, ordinal(2).n_mor) == (3, 6)
    assert (chaotic(2).n_obj, chaotic(2).n_mor) == (3, 9)
    P = product([ordinal(1), chaotic(1)])
    assert (P.n_obj, P.n_mor) == (4, 12)
    C = chaotic(2)
    for x in range(3):
        for y in range(3):
            assert len(C.between(x, y)) == 1


def test_construct_dispatch():
    assert construct_category("ordinal", 3).n_obj == 4
    assert construct_two_category("theta", 2, [1, 0]).n == 3
    with pytest.raises(ValueError):
        construct_category("bogus")


def test_theta_figure_shape():
    T = theta(4, [2, 0, 3, 1])
    assert T.n == 5
    assert T.hom(0, 1).n_obj == 3
    assert is_gaunt(T)
    assert validate_two_category(T) == []


def test_theta_length_mismatch():
    with pytest.raises(ValueError):
        theta(2, [1])


def test_sigma_of_one_is_free_2cell():
    assert to_json(sigma(ordinal(1)))["homs"] == to_json(walking_2cell())["homs"]
    S = sigma(chaotic(1))
    assert S.n == 2 and validate_two_category(S) == []
    assert S.hom(1, 0).n_obj == 0


def test_sigma_zero_is_terminal():
    T = sigma_i(0, ordinal(3))
    assert T.n == 1 and len(T.cells1()) == 1 and len(T.cells2()) == 1


def test_corpus_is_lawful(corpus):
    for D in corpus:
        assert validate_two_category(D) == [], D.name
        assert oracles.two_category_laws_hold(D), D.name


@pytest.mark.parametrize("name", SMALL)
def test_corruptions_agree_with_oracle(corpus, name):
    D = by_name(corpus, name)
    for kind in CORRUPTIONS:
        for site in corruption_sites(D, kind):
            E = corrupt(D, site)
            report = validate_two_category(E)
            assert bool(report) == (not oracles.two_category_laws_hold(E)), site
            if report:
                assert all(v.witness for v in report)


def test_corrupted_hcomp_names_the_pair():
    D = walking_2cell()
    site = ("hcomp2", (0, 1, 1), 1, 0)
    report = validate_two_category(corrupt(D, site))
    assert report
    assert any((0, 1, 1) in v.witness and (1, 1, 0) in v.witness for v in report)


def test_functor_counts():
    assert len(enumerate_functors(ordinal(1), ordinal(1))) == 3
    assert len(enumerate_functors(chaotic(1), ordinal(1))) == 2
    P = product([ordinal(1), chaotic(1)])
    assert len(enumerate_functors(P, ordinal(1))) == 3


@pytest.mark.parametrize("C,D", [(ordinal(1), ordinal(2)), (chaotic(1), chaotic(2)),
                                 (ordinal(2), walking_retract()),
                                 (walking_retract(), walking_retract())])
def test_functors_match_oracle(C, D):
    got = [(F.obj, F.mor) for F in enumerate_functors(C, D)]
    assert len(got) == len(set(got))
    assert set(got) == set(oracles.functors(C, D))


def test_functor_order_is_deterministic():
    a = enumerate_functors(ordinal(2), chaotic(1))
    b = enumerate_functors(ordinal(2), chaotic(1))
    assert a == b


@pytest.mark.parametrize("A,B", [(walking_2cell(), walking_2cell()),
                                 (theta(1, [0]), walking_2iso()),
                                 (theta(1, [1]), walking_2iso()),
                                 (discrete(ordinal(2)), ch_star(walking_retract())),
                                 (theta(2, [1, 0]), walking_2cell())])
def test_two_functors_match_oracle(A, B):
    got = enumerate_two_functors(A, B)
    assert len(got) == len(set(got))
    keys = {(F.obj, tuple(F.on1(f) for f in A.cells1()), tuple(F.on2(x) for x in A.cells2()))
            for F in got}
    ref = set()
    for obj, one, two in oracles.two_functors(A, B):
        ref.add((obj, tuple(one[f] for f in A.cells1()), tuple(two[x] for x in A.cells2())))
    assert keys == ref


def test_points_and_arrows_corepresent(corpus):
    for D in corpus:
        assert len(enumerate_two_functors(point(), D)) == D.n
        assert len(enumerate_two_functors(theta(1, [0]), D)) == len(D.cells1())


def test_gaunt_classification(corpus):
    for D in corpus:
        if not is_gaunt(D):
            continue
        c = classify_cells(D)
        assert all(D.is_identity2(a) for a in c["two_isomorphisms"])
        assert all(D.is_identity1(f) for f in c["one_equivalences"])
        for f, comps in c["adjoint_completions"].items():
            assert bool(comps) == D.is_identity1(f)


@pytest.mark.parametrize("name", SMALL)
def test_adjoint_completions_match_oracle(corpus, name):
    D = by_name(corpus, name)
    for f in D.cells1():
        assert sorted(adjoint_completions(D, f)) == sorted(oracles.adjoint_completions(D, f))
        # every equivalence can be promoted to an adjoint equivalence
        assert is_equivalence(D, f) == bool(oracles.adjoint_completions(D, f))


def test_retract_arrow_has_one_completion():
    D = ch_star(walking_retract())
    assert len(adjoint_completions(D, (0, 1, 0))) == 1


def test_walking_iso_has_no_reverse_arrow():
    # both parallel 1-cells of the walking 2-isomorphism point 0 -> 1 and
    # nothing points back, so no adjoint equivalence data exists
    D = walking_2iso()
    assert D.hom(1, 0).n_obj == 0
    assert adjoint_completions(D, (0, 1, 0)) == []
    assert len(classify_cells(D)["two_isomorphisms"]) == 6


@pytest.mark.parametrize("D,count", [(discrete(ordinal(2)), 10), (walking_2cell(), 6),
                                     (walking_2iso(), 10)])
def test_triangle_counts(D, count):
    ref = oracles.triangles(D)
    assert len(ref) == count
    assert sorted(triangles(D)) == sorted(ref)


def test_gaunt_triangles_are_composable_pairs(corpus):
    for D in corpus:
        if not is_gaunt(D):
            continue
        pairs = [(f, g) for f in D.cells1() for g in D.cells1() if f[1] == g[0]]
        T = triangles(D)
        assert sorted((t[0], t[1]) for t in T) == sorted(pairs)
        assert all(t[2] == D.comp1(t[0], t[1]) and D.is_identity2(t[3]) for t in T)


def test_whisker_identities():
    D = theta(2, [1, 1])
    f, g = (0, 1, 0), (1, 2, 1)
    assert whisker_compose(D, [(f, D.ident2(g), None)]) == D.ident2(D.comp1(f, g))


def test_whisker_inverse():
    D = walking_2iso()
    al = next(a for a in D.cells2() if D.is_iso2(a) and not D.is_identity2(a))
    assert whisker_compose(D, [(None, al, None), (None, D.inverse2(al), None)]) == \
        D.ident2(D.src2(al))


def test_whisker_interchange_square():
    D = theta(2, [1, 1])
    R = oracles.Raw(D)
    for x in D.cells2():
        for y in D.cells2():
            if x[1] != y[0]:
                continue
            f, f2 = D.src2(x), D.tgt2(x)
            g, g2 = D.src2(y), D.tgt2(y)
            one = whisker_compose(D, [(None, x, g), (f2, y, None)])
            two = whisker_compose(D, [(f, y, None), (None, x, g2)])
            assert one == two == R.h2(x, y)


def test_whisker_rejects_noncomposable():
    D = theta(2, [1, 1])
    with pytest.raises(CompositionError):
        whisker_compose(D, [((1, 2, 0), D.ident2((0, 1, 0)), None)])


theta_shapes = st.integers(0, 3).flatmap(
    lambda i: st.tuples(st.just(i), st.lists(st.integers(0, 2), min_size=i, max_size=i)))


@settings(max_examples=25, deadline=None)
@given(theta_shapes)
def test_theta_objects_are_lawful_and_gaunt(shape):
    i, js = shape
    T = theta(i, js) if i else point()
    assert validate_two_category(T) == []
    assert is_gaunt(T)
    assert len(enumerate_two_functors(point(), T)) == T.n
    for a, b in itertools.combinations(range(T.n), 2):
        n = 1
        for s in range(a, b):
            n *= js[s] + 1
        assert T.hom(a, b).n_obj == n
