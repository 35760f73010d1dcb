import pytest

import oracles
from finite2cat import (ch_star, chaotic, discrete, enumerate_two_functors, point, theta,
                        validate_two_category, walking_2cell, walking_2iso, walking_retract)
from finite2cat.hom2cat import (PreconditionError, check_corepresented_pushout,
                                check_icon_pullback, check_replace_pseudo,
                                enumerate_transformations, functor_two_category, inclusion,
                                suspension_pushout_spec, trivial_pushout_spec,
                                virtual_tensor_hom)

FLAVORS = ("strict", "pseudo", "lax", "icon")


def pairs(B, D):
    Fs = enumerate_two_functors(B, D)
    return [(F, G) for F in Fs for G in Fs]


def as_keys(ts):
    return [(t.comps, t.nat) for t in ts]


@pytest.mark.parametrize("B,D", [(theta(1, [0]), walking_2cell()),
                                 (theta(1, [1]), walking_2iso()),
                                 (theta(2, [0, 0]), ch_star(walking_retract())),
                                 (discrete(chaotic(1)), walking_2iso())])
def test_transformations_match_oracle(B, D):
    for F, G in pairs(B, D):
        for flavor in FLAVORS:
            try:
                got = as_keys(enumerate_transformations(F, G, flavor))
            except PreconditionError:
                got = []
            assert len(got) == len(set(got))
            assert set(got) == set(oracles.transformations(F, G, flavor)), (F.obj, G.obj, flavor)


def test_point_has_one_transformation_per_flavor():
    (F,) = enumerate_two_functors(point(), point())
    for flavor in FLAVORS:
        assert len(enumerate_transformations(F, F, flavor)) == 1


def test_constant_functors_into_free_2cell():
    B, D = theta(1, [0]), walking_2cell()
    Fs = enumerate_two_functors(B, D)
    F = next(X for X in Fs if X.obj == (0, 0))
    G = next(X for X in Fs if X.obj == (1, 1))
    ts = enumerate_transformations(F, G, "lax")
    # components (s0, s1) with a filler s1 => s0; only u => v is nontrivial
    assert sorted(t.comps for t in ts) == [((0, 1, 0), (0, 1, 0)), ((0, 1, 1), (0, 1, 0)),
                                           ((0, 1, 1), (0, 1, 1))]


@pytest.mark.parametrize("B,D", [(theta(1, [1]), walking_2iso()),
                                 (theta(1, [0]), ch_star(walking_retract())),
                                 (theta(2, [1, 0]), walking_2cell())])
def test_flavor_inclusions_are_sublists(B, D):
    for F, G in pairs(B, D):
        lists = {fl: enumerate_transformations(F, G, fl) for fl in FLAVORS}
        lax = lists["lax"]
        for small in ("strict", "pseudo", "icon"):
            it = iter(lax)
            assert all(any(t == u for u in it) for t in lists[small]), small
        assert set(lists["strict"]) <= set(lists["pseudo"])
        if lists["icon"]:
            assert F.obj == G.obj


@pytest.mark.parametrize("flavor", FLAVORS)
def test_functor_two_categories_are_lawful(flavor):
    for B, D in [(theta(1, [0]), walking_2cell()), (theta(1, [1]), walking_2iso()),
                 (theta(1, [0]), ch_star(walking_retract()))]:
        FC = functor_two_category(B, D, flavor)
        assert validate_two_category(FC) == []


def test_functor_category_from_point_is_target():
    D = walking_2iso()
    FC = functor_two_category(point(), D, "lax")
    assert FC.n == D.n
    assert len(FC.cells1()) == len(D.cells1())
    assert len(FC.cells2()) == len(D.cells2())


def test_functor_category_into_point_is_terminal():
    for flavor in FLAVORS:
        FC = functor_two_category(walking_2cell(), point(), flavor)
        assert (FC.n, len(FC.cells1()), len(FC.cells2())) == (1, 1, 1)


def test_inclusions_are_two_functors():
    B, D = theta(1, [0]), walking_2iso()
    FCs = {fl: functor_two_category(B, D, fl) for fl in FLAVORS}
    from finite2cat.core2cat import two_functor_violations
    for s, t in [("strict", "pseudo"), ("pseudo", "lax"), ("icon", "lax")]:
        assert two_functor_violations(inclusion(FCs[s], FCs[t])) == []


def squares(D, flavor):
    """(top, bottom, left, right, filler) with filler: top;right => left;bottom."""
    R = oracles.Raw(D)
    out = set()
    for t in R.c1:
        for b in R.c1:
            for l in R.c1:
                if l[:2] != (t[0], b[0]):
                    continue
                for r in R.c1:
                    if r[:2] != (t[1], b[1]):
                        continue
                    for al in R.cells2(R.h1(t, r), R.h1(l, b)):
                        if flavor == "strict" and al != R.id2(R.src2(al)):
                            continue
                        if flavor == "pseudo" and not R.iso(al):
                            continue
                        if flavor == "icon" and (l != R.id1(l[0]) or r != R.id1(r[0])):
                            continue
                        out.add((t, b, l, r, al))
    return out


@pytest.mark.parametrize("flavor", FLAVORS)
@pytest.mark.parametrize("D", [walking_2cell(), walking_2iso(), ch_star(walking_retract())],
                         ids=["S1", "SI", "retract"])
def test_square_orientation(flavor, D):
    # elements of 2Cat([1], [[1], D]) are the squares of D with a filler
    # pointing from the upper-right composite to the lower-left one
    one = theta(1, [0])
    FC = functor_two_category(one, D, flavor)
    got = set()
    for Phi in virtual_tensor_hom(one, one, D, flavor, FC):
        F, G = FC.functors[Phi.obj[0]], FC.functors[Phi.obj[1]]
        s = FC.transformation(Phi.on1((0, 1, 0)))
        f = (0, 1, 0)
        got.add((F.on1(f), G.on1(f), s.comps[0], s.comps[1], s.nat[one.cells1().index(f)]))
    assert got == squares(D, flavor)


def test_icon_pullback_examples():
    assert check_icon_pullback(point(), walking_2cell())
    assert check_icon_pullback(theta(1, [0]), walking_2cell())
    assert check_icon_pullback(theta(1, [1]), walking_2iso())


def test_replace_pseudo_examples():
    A = discrete(chaotic(1))
    assert check_replace_pseudo(point(), theta(1, [0]), walking_2cell())
    assert check_replace_pseudo(A, theta(1, [0]), walking_2cell())
    assert check_replace_pseudo(A, theta(1, [1]), walking_2iso())


def test_replace_pseudo_precondition():
    with pytest.raises(PreconditionError):
        check_replace_pseudo(theta(1, [0]), theta(1, [0]), walking_2cell())


PROBES = [point(), walking_2cell(), walking_2iso(), discrete(chaotic(1)),
          theta(2, [1, 0]), ch_star(walking_retract())]


def test_suspension_pushout_free_2cell():
    rec = check_corepresented_pushout(suspension_pushout_spec(walking_2cell(), 1), PROBES[:3])
    assert [r["pass"] for r in rec] == [True] * 3


def test_multiple_suspension_pushout():
    rec = check_corepresented_pushout(suspension_pushout_spec(discrete(chaotic(1)), 2), PROBES)
    assert all(r["pass"] for r in rec)
    assert all(r["apex"] == r["fiber"] for r in rec)


def test_flat_apex_is_not_the_pushout():
    # the three-object chain with trivial homs misses the 2-isomorphisms
    # that the suspended contractible groupoid carries
    spec = suspension_pushout_spec(discrete(chaotic(1)), 2, apex=theta(2, [0, 0]),
                                   labels=(lambda x: 0, lambda f: 0))
    rec = {r["name"]: r for r in check_corepresented_pushout(spec, PROBES)}
    bad = rec[walking_2iso().name]
    assert not bad["pass"]
    assert (bad["apex"], bad["fiber"]) == (6, 10)


def test_trivial_span():
    rec = check_corepresented_pushout(trivial_pushout_spec(walking_2cell()), PROBES)
    assert all(r["pass"] for r in rec)
