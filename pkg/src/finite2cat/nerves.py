"""Nerves of finite 2-categories, level by level.

Every nerve here is a ``LevelProvider``: finite level sets indexed by a
shape (a tuple of naturals, one per simplicial direction) together with the
action of simplicial operators.  An operator is given by one monotone map per
direction, ``alpha[q]: [shape'[q]] -> [shape[q]]`` written as a tuple of
images, and carries an element of ``level(shape)`` to ``level(shape')``.
Faces and degeneracies are the usual generating maps.

The Theta_2 nerve is indexed by Theta_2 shapes instead and acts by strict
2-functors between theta objects.
"""
import functools
import itertools
import threading
from collections import namedtuple

import numpy as np

from ._search import Problem
from .core2cat import (
    adjoint_completions, chaotic, enumerate_functors,
    enumerate_two_functors, is_gaunt, ordinal, product, theta,
    two_functor_from_cells, triangles,
)
from .nps import NormalPseudofunctor, enumerate_nps, precompose, validate_nps


class LevelError(ValueError):
    """A level outside what a provider can serve was requested."""


# ---------------------------------------------------------------------------
# monotone maps


def face_map(n, r):
    """The coface ``[n-1] -> [n]`` skipping ``r``."""
    return tuple(v if v < r else v + 1 for v in range(n))


def degeneracy_map(n, r):
    """The codegeneracy ``[n+1] -> [n]`` hitting ``r`` twice."""
    return tuple(v if v <= r else v - 1 for v in range(n + 2))


def identity_map(n):
    return tuple(range(n + 1))


def monotone_maps(m, n):
    """All monotone maps ``[m] -> [n]`` in lexicographic order."""
    return [tuple(c) for c in itertools.combinations_with_replacement(range(n + 1), m + 1)]


# ---------------------------------------------------------------------------
# providers


class LevelProvider:
    """Finite levels with a simplicial operator action in each direction."""

    ndirs = 1

    def __init__(self):
        self._cache = {}
        self._lock = threading.Lock()

    def _compute(self, shape):
        raise NotImplementedError

    def act(self, shape, maps, x):
        raise NotImplementedError

    def level(self, shape):
        shape = tuple(shape)
        if len(shape) != self.ndirs or any(s < 0 for s in shape):
            raise LevelError(f"bad shape {shape}")
        with self._lock:
            hit = self._cache.get(shape)
        if hit is None:
            hit = tuple(self._compute(shape))
            with self._lock:
                self._cache.setdefault(shape, hit)
        return hit

    def _op(self, shape, q, m):
        maps = [identity_map(s) for s in shape]
        maps[q] = m
        return tuple(maps)

    def face(self, shape, q, r, x):
        n = shape[q]
        if n < 1 or not 0 <= r <= n:
            raise LevelError(f"no face d{r} in direction {q} at {shape}")
        return self.act(shape, self._op(shape, q, face_map(n, r)), x)

    def degeneracy(self, shape, q, r, x):
        n = shape[q]
        if not 0 <= r <= n:
            raise LevelError(f"no degeneracy s{r} in direction {q} at {shape}")
        return self.act(shape, self._op(shape, q, degeneracy_map(n, r)), x)

    def is_degenerate(self, shape, x):
        return degenerate_source(self, shape, x) is not None


def shifted(shape, q, d):
    s = list(shape)
    s[q] += d
    return tuple(s)


def degenerate_source(P, shape, x):
    """``(q, r, z)`` with ``x = s_r z`` in direction q, or None."""
    for q in range(P.ndirs):
        n = shape[q]
        if n < 1:
            continue
        lower = shifted(shape, q, -1)
        for r in range(n):
            z = P.face(shape, q, r, x)
            if P.degeneracy(lower, q, r, z) == x:
                return q, r, z
    return None


def _check_identities_array(P, shapes):
    bad = []

    def same(u, v):
        return all(np.array_equal(a, b) for a, b in zip(u, v))

    for shape in shapes:
        X = P.level_array(shape)
        for q in range(P.ndirs):
            n = shape[q]
            down, up = shifted(shape, q, -1), shifted(shape, q, 1)

            def face(sh, r, Y):
                return P.act_array(sh, P._op(sh, q, face_map(sh[q], r)), Y)

            def degen(sh, r, Y):
                return P.act_array(sh, P._op(sh, q, degeneracy_map(sh[q], r)), Y)

            d = [face(shape, r, X) for r in range(n + 1)] if n >= 1 else []
            sd = [degen(shape, r, X) for r in range(n + 1)]
            if n >= 1:
                lower = _row_set(P.rows(P.level_array(down)))
                for r, Y in enumerate(d):
                    rows = _row_set(P.rows(Y))
                    merged = _row_set(np.concatenate([lower, rows])) if len(rows) else lower
                    if len(merged) != len(lower):
                        bad.append(("face-closure", shape, q, r))
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        if not same(face(down, i, d[j]), face(down, j - 1, d[i])):
                            bad.append(("dd", shape, q, (i, j)))
            for j in range(n + 1):
                for i in range(j + 1):
                    if not same(degen(up, i, sd[j]), degen(up, j + 1, sd[i])):
                        bad.append(("ss", shape, q, (i, j)))
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = face(up, i, sd[j])
                    if i < j:
                        rhs = degen(down, j - 1, d[i])
                    elif i in (j, j + 1):
                        rhs = X
                    else:
                        rhs = degen(down, j, d[i - 1])
                    if not same(lhs, rhs):
                        bad.append(("ds", shape, q, (i, j)))
    return bad


def check_simplicial_identities(P, shapes):
    """Every failure of the simplicial identities on the given levels.

    Also checks that faces land in the advertised levels.  Providers with
    an array form are checked on whole levels at once.
    """
    if hasattr(P, "act_array"):
        return _check_identities_array(P, shapes)
    bad = []
    for shape in shapes:
        elems = P.level(shape)
        for q in range(P.ndirs):
            n = shape[q]
            down = shifted(shape, q, -1)
            up = shifted(shape, q, 1)
            down_set = set(P.level(down)) if n >= 1 else None
            for x in elems:
                d = [P.face(shape, q, r, x) for r in range(n + 1)] if n >= 1 else []
                s = [P.degeneracy(shape, q, r, x) for r in range(n + 1)]
                for r, y in enumerate(d):
                    if y not in down_set:
                        bad.append(("face-closure", shape, q, r, x))
                # d_i d_j = d_{j-1} d_i for i < j
                if n >= 2:
                    for j in range(n + 1):
                        for i in range(j):
                            if P.face(down, q, i, d[j]) != P.face(down, q, j - 1, d[i]):
                                bad.append(("dd", shape, q, (i, j), x))
                # s_i s_j = s_{j+1} s_i for i <= j
                for j in range(n + 1):
                    for i in range(j + 1):
                        if P.degeneracy(up, q, i, s[j]) != P.degeneracy(up, q, j + 1, s[i]):
                            bad.append(("ss", shape, q, (i, j), x))
                for j in range(n + 1):
                    for i in range(n + 2):
                        lhs = P.face(up, q, i, s[j])
                        if i < j:
                            rhs = P.degeneracy(down, q, j - 1, d[i])
                        elif i in (j, j + 1):
                            rhs = x
                        else:
                            rhs = P.degeneracy(down, q, j, d[i - 1])
                        if lhs != rhs:
                            bad.append(("ds", shape, q, (i, j), x))
    return bad


# ---------------------------------------------------------------------------
# the Duskin nerve


class DuskinNerve(LevelProvider):
    """n-simplices are ``(objects, edges, faces)``.

    ``edges`` lists the 1-cells ``e_pq`` for p < q and ``faces`` the 2-cells
    ``phi_pqr: e_pr => e_pq then e_qr`` for p < q < r, both in lexicographic
    order of the index tuples.  Every 3-dimensional sub-simplex satisfies

        phi_023 . (phi_012 * e_23) = phi_013 . (e_01 * phi_123),

    which also makes the nerve 3-coskeletal: a simplex is exactly a
    compatible choice of its 2-skeleton.
    """

    def __init__(self, D):
        super().__init__()
        self.D = D
        self._pairs = {}
        self._trips = {}

    def pairs(self, n):
        if n not in self._pairs:
            self._pairs[n] = {p: i for i, p in enumerate(itertools.combinations(range(n + 1), 2))}
        return self._pairs[n]

    def trips(self, n):
        if n not in self._trips:
            self._trips[n] = {t: i for i, t in enumerate(itertools.combinations(range(n + 1), 3))}
        return self._trips[n]

    def edge(self, n, x, p, q):
        if p == q:
            return self.D.ident1(x[0][p])
        return x[1][self.pairs(n)[(p, q)]]

    def phi(self, n, x, p, q, r):
        if p == q or q == r:
            return self.D.ident2(self.edge(n, x, p, r))
        return x[2][self.trips(n)[(p, q, r)]]

    def act(self, shape, maps, x):
        (n,), (al,) = shape, maps
        m = len(al) - 1
        objs = tuple(x[0][a] for a in al)
        edges = tuple(self.edge(n, x, al[p], al[q]) for p, q in self.pairs(m))
        faces = tuple(self.phi(n, x, al[p], al[q], al[r]) for p, q, r in self.trips(m))
        return (objs, edges, faces)

    def pasting_holds(self, n, x, a, b, c, d):
        D = self.D
        lhs = D.vcomp(self.phi(n, x, a, c, d), D.whisker(self.phi(n, x, a, b, c),
                                                          post=self.edge(n, x, c, d)))
        rhs = D.vcomp(self.phi(n, x, a, b, d), D.whisker(self.phi(n, x, b, c, d),
                                                          pre=self.edge(n, x, a, b)))
        return lhs == rhs

    def _compute(self, shape):
        (n,) = shape
        D = self.D
        pairs, trips = self.pairs(n), self.trips(n)
        p = Problem()
        opos, epos, tpos = {}, {}, {}

        def edge_of(vals, a, b):
            if a == b:
                return D.ident1(vals[opos[a]])
            return vals[epos[(a, b)]]

        def phi_of(vals, a, b, c):
            if a == b or b == c:
                return D.ident2(edge_of(vals, a, c))
            return vals[tpos[(a, b, c)]]

        for q in range(n + 1):
            opos[q] = p.add(("o", q), lambda vals: tuple(range(D.n)))
            for a in range(q):
                epos[(a, q)] = p.add(("e", a, q), lambda vals, a=a, q=q: tuple(
                    (vals[opos[a]], vals[opos[q]], i)
                    for i in range(D.hom(vals[opos[a]], vals[opos[q]]).n_obj)))
            for a, b in itertools.combinations(range(q), 2):
                tpos[(a, b, q)] = p.add(("t", a, b, q), lambda vals, a=a, b=b, q=q: D.twocells_between(
                    edge_of(vals, a, q), D.comp1(edge_of(vals, a, b), edge_of(vals, b, q))))
            for a, b, c in itertools.combinations(range(q), 3):
                def paste(vals, a=a, b=b, c=c, d=q):
                    lhs = D.vcomp(phi_of(vals, a, c, d),
                                  D.whisker(phi_of(vals, a, b, c), post=edge_of(vals, c, d)))
                    rhs = D.vcomp(phi_of(vals, a, b, d),
                                  D.whisker(phi_of(vals, b, c, d), pre=edge_of(vals, a, b)))
                    return lhs == rhs
                p.require([tpos[(a, b, q)], tpos[(a, c, q)], tpos[(b, c, q)]], paste)
        out = []
        for vals in p.solutions():
            out.append((tuple(vals[opos[v]] for v in range(n + 1)),
                        tuple(vals[epos[e]] for e in pairs),
                        tuple(vals[tpos[t]] for t in trips)))
        return out


def duskin_level(D, n):
    return DuskinNerve(D).level((n,))


def compatible_boundaries(P, n):
    """All tuples ``(y_0, ..., y_n)`` in level n-1 with ``d_i y_j = d_{j-1} y_i``."""
    prev = P.level((n - 1,))
    by_d0 = {}
    for y in prev:
        by_d0.setdefault(P.face((n - 1,), 0, 0, y), []).append(y)
    p = Problem()
    pos = []
    for j in range(n + 1):
        if j == 0:
            pos.append(p.add(0, lambda vals: prev))
            continue

        def dom(vals, j=j):
            want = P.face((n - 1,), 0, j - 1, vals[pos[0]])
            return by_d0.get(want, ())
        pos.append(p.add(j, dom))
        for i in range(1, j):
            p.require([pos[i], pos[j]], lambda vals, i=i, j=j: P.face((n - 1,), 0, i, vals[pos[j]])
                      == P.face((n - 1,), 0, j - 1, vals[pos[i]]))
    return list(p.solutions())


def check_coskeletal(D, n=4):
    """Each compatible boundary of an n-simplex has exactly one filler."""
    P = DuskinNerve(D)
    bounds = compatible_boundaries(P, n)
    fills = {}
    for x in P.level((n,)):
        b = tuple(P.face((n,), 0, r, x) for r in range(n + 1))
        fills[b] = fills.get(b, 0) + 1
    bad = [b for b in bounds if fills.get(b, 0) != 1]
    stray = [b for b in fills if b not in set(bounds)]
    return {"n": n, "boundaries": len(bounds), "simplices": sum(fills.values()),
            "pass": not bad and not stray, "witness": (bad or stray or [None])[0]}


# ---------------------------------------------------------------------------
# marked and scaled nerves


KNOCKOUTS = ("equivalences", "isomorphisms", "higher")


class TDeltaNerve(DuskinNerve):
    """The Duskin nerve with marking multiplicities.

    A 1-simplex carries one marking per adjoint-equivalence completion
    ``(g, eta, eps)`` of its 1-cell, a 2-simplex is marked once when its
    2-cell is invertible and every simplex of dimension at least 3 is marked
    once.  ``knockout`` drops one of these rules (degenerate simplices stay
    marked) and ``unmarked`` lists individual simplices to strip, both for
    negative controls.
    """

    def __init__(self, D, knockout=None, unmarked=()):
        super().__init__(D)
        if knockout is not None and knockout not in KNOCKOUTS:
            raise ValueError(f"unknown knockout {knockout!r}")
        self.knockout = knockout
        self.unmarked = set(unmarked)
        self._completions = {}

    def markings(self, n, x):
        if n == 0 or x in self.unmarked:
            return ()
        D = self.D
        if n == 1:
            f = x[1][0]
            if self.knockout == "equivalences" and not D.is_identity1(f):
                return ()
            if f not in self._completions:
                self._completions[f] = tuple(adjoint_completions(D, f))
            return self._completions[f]
        if n == 2:
            if not D.is_iso2(x[2][0]):
                return ()
            if self.knockout == "isomorphisms" and not self.is_degenerate((2,), x):
                return ()
            return (("iso",),)
        if self.knockout == "higher" and not self.is_degenerate((n,), x):
            return ()
        return (("thin",),)

    def is_marked(self, n, x):
        return bool(self.markings(n, x))


def tdelta_nerve_level(D, n, provider=None):
    """``[(simplex, witnesses), ...]`` for the n-simplices."""
    P = provider or TDeltaNerve(D)
    return [(x, P.markings(n, x)) for x in P.level((n,))]


def reflect(level):
    """Collapse multiplicities: ``[(simplex, marked?), ...]``."""
    out = []
    for x, w in level:
        k = int(w) if isinstance(w, bool) else len(w)
        out.append((x, k >= 1))
    return out


class ScaledNerve(DuskinNerve):
    """The Duskin nerve scaled by the 2-simplices whose 2-cell is invertible."""

    def __init__(self, D):
        super().__init__(D)
        self._thin = set(triangles(D))

    def is_marked(self, n, x):
        if n != 2:
            return False
        e01, e02, e12 = x[1]
        return (e01, e12, e02, x[2][0]) in self._thin


def scaled_nerve_level(D, n, provider=None):
    P = provider or ScaledNerve(D)
    return [(x, P.is_marked(n, x)) for x in P.level((n,))]


def check_within_simplicial(D, n_max=4, report=False):
    """Scaled nerve versus the reflected tDelta nerve with all but
    2-dimensional markings forgotten, compared level by level."""
    T, S = TDeltaNerve(D), ScaledNerve(D)
    records = []
    for n in range(n_max + 1):
        lhs = scaled_nerve_level(D, n, S)
        rhs = [(x, m and n == 2) for x, m in reflect(tdelta_nerve_level(D, n, T))]
        records.append({"n": n, "simplices": len(lhs), "scaled": sum(m for _, m in lhs),
                        "pass": lhs == rhs})
    ok = all(r["pass"] for r in records)
    return (ok, records) if report else ok


# ---------------------------------------------------------------------------
# Rezk and precategory nerves


def grid(j, k):
    """``[j] x ~[k]`` as a product category."""
    return product([ordinal(j), chaotic(k)])


_GRIDS = {}


def _grid(j, k):
    if (j, k) not in _GRIDS:
        _GRIDS[(j, k)] = grid(j, k)
    return _GRIDS[(j, k)]


@functools.lru_cache(maxsize=None)
def grid_map(be, ga, j, k):
    """The functor ``[j'] x ~[k'] -> [j] x ~[k]`` induced by ``be`` and ``ga``."""
    src, tgt = _grid(len(be) - 1, len(ga) - 1), _grid(j, k)
    O, K = tgt.obj_index, tgt.mor_index
    ordj, chk = ordinal(j), chaotic(k)
    obj = [O[(be[x], ga[y])] for x, y in src.objects]
    S1, S2 = ordinal(len(be) - 1), chaotic(len(ga) - 1)
    mor = []
    for m1, m2 in src.labels:
        a = ordj.between(be[S1.src[m1]], be[S1.tgt[m1]])[0]
        b = chk.between(ga[S2.src[m2]], ga[S2.tgt[m2]])[0]
        mor.append(K[(a, b)])
    return tuple(obj), tuple(mor)


class RezkNerve(LevelProvider):
    """Functors ``[j] x ~[k] -> C`` stored as ``(object map, morphism map)``."""

    ndirs = 2

    def __init__(self, C):
        super().__init__()
        self.C = C

    def _compute(self, shape):
        j, k = shape
        return [(tuple(F.obj), tuple(F.mor)) for F in enumerate_functors(_grid(j, k), self.C)]

    def act(self, shape, maps, x):
        j, k = shape
        obj, mor = grid_map(tuple(maps[0]), tuple(maps[1]), j, k)
        return (tuple(x[0][o] for o in obj), tuple(x[1][m] for m in mor))


def rezk_level(C, j, k):
    return RezkNerve(C).level((j, k))


class PrecatNerve(LevelProvider):
    """Chains ``(d_0, ..., d_i; F_1, ..., F_i)`` with ``F_s: [j] x ~[k] -> hom(d_{s-1}, d_s)``.

    This is ``2Cat(Sigma_i([j] x ~[k]), D)``.  In the first direction inner
    faces compose neighbouring functors horizontally, outer faces drop one
    and degeneracies insert an identity-valued functor; the other two
    directions act by precomposition.
    """

    ndirs = 3

    def __init__(self, D):
        super().__init__()
        self.D = D
        self._fun = {}

    def functors(self, a, b, j, k):
        key = (a, b, j, k)
        if key not in self._fun:
            self._fun[key] = [(tuple(F.obj), tuple(F.mor))
                              for F in enumerate_functors(_grid(j, k), self.D.hom(a, b))]
        return self._fun[key]

    def _compute(self, shape):
        i, j, k = shape
        D = self.D
        out = []
        for objs in itertools.product(range(D.n), repeat=i + 1):
            steps = [self.functors(objs[s], objs[s + 1], j, k) for s in range(i)]
            if any(not st for st in steps):
                continue
            for fs in itertools.product(*steps):
                out.append((objs, fs))
        return out

    def identity_functor(self, a, j, k):
        G = _grid(j, k)
        C = self.D.hom(a, a)
        e = self.D.id1[a]
        return (tuple(e for _ in G.objects), tuple(C.identity[e] for _ in G.labels))

    def hcompose(self, a, b, c, F, G):
        on_obj, on_mor = self.D.hcomp_table(a, b, c)
        return (tuple(on_obj[x][y] for x, y in zip(F[0], G[0])),
                tuple(on_mor[x][y] for x, y in zip(F[1], G[1])))

    def act(self, shape, maps, x):
        i, j, k = shape
        al, be, ga = maps
        objs, fs = x
        j2, k2 = len(be) - 1, len(ga) - 1
        gobj, gmor = grid_map(tuple(be), tuple(ga), j, k)
        new_objs = tuple(objs[a] for a in al)
        new = []
        for s in range(1, len(al)):
            lo, hi = al[s - 1], al[s]
            if lo == hi:
                new.append(self.identity_functor(objs[lo], j2, k2))
                continue
            F = fs[lo]
            for t in range(lo + 1, hi):
                F = self.hcompose(objs[lo], objs[t], objs[t + 1], F, fs[t])
            new.append((tuple(F[0][o] for o in gobj), tuple(F[1][m] for m in gmor)))
        return (new_objs, tuple(new))

    # -- array form: one row per chain, cells replaced by global ids
    def _globals(self):
        if getattr(self, "_g", None) is None:
            D = self.D
            c1, c2 = D.cells1(), D.cells2()
            g1 = {c: n for n, c in enumerate(c1)}
            g2 = {c: n for n, c in enumerate(c2)}
            dt = np.int16 if max(len(c1), len(c2)) < 2 ** 15 else np.int32
            hc1 = np.full((len(c1), len(c1)), -1, dtype=dt)
            hc2 = np.full((len(c2), len(c2)), -1, dtype=dt)
            for f in c1:
                for g in c1:
                    if f[1] == g[0]:
                        hc1[g1[f], g1[g]] = g1[D.comp1(f, g)]
            for a in c2:
                for b in c2:
                    if a[1] == b[0]:
                        hc2[g2[a], g2[b]] = g2[D.comp2h(a, b)]
            id1 = np.array([g1[D.ident1(a)] for a in range(D.n)], dtype=dt)
            id2 = np.array([g2[D.ident2(D.ident1(a))] for a in range(D.n)], dtype=dt)
            self._g = (dt, g1, g2, hc1, hc2, id1, id2)
        return self._g

    def _functor_arrays(self, a, b, j, k):
        dt, g1, g2 = self._globals()[:3]
        fs = self.functors(a, b, j, k)
        G = _grid(j, k)
        fo = np.array([[g1[(a, b, o)] for o in F[0]] for F in fs], dtype=dt).reshape(len(fs), G.n_obj)
        fm = np.array([[g2[(a, b, m)] for m in F[1]] for F in fs], dtype=dt).reshape(len(fs), G.n_mor)
        return fo, fm

    def level_array(self, shape):
        """``(objects, functor objects, functor morphisms)`` arrays of shapes
        ``(N, i+1)``, ``(N, i, |grid objects|)`` and ``(N, i, |grid morphisms|)``,
        rows in the order of ``level(shape)``."""
        shape = tuple(shape)
        cache = self.__dict__.setdefault("_arrays", {})
        if shape in cache:
            return cache[shape]
        i, j, k = shape
        D, G = self.D, _grid(j, k)
        dt = self._globals()[0]
        blocks = []
        for objs in itertools.product(range(D.n), repeat=i + 1):
            lists = [self._functor_arrays(objs[s], objs[s + 1], j, k) for s in range(i)]
            if any(len(L[0]) == 0 for L in lists):
                continue
            if i == 0:
                idx = np.zeros((1, 0), dtype=np.int64)
            else:
                idx = np.indices([len(L[0]) for L in lists]).reshape(i, -1).T
            n = idx.shape[0]
            O = np.tile(np.array(objs, dtype=dt), (n, 1))
            FO = np.zeros((n, i, G.n_obj), dtype=dt)
            FM = np.zeros((n, i, G.n_mor), dtype=dt)
            for s, L in enumerate(lists):
                FO[:, s] = L[0][idx[:, s]]
                FM[:, s] = L[1][idx[:, s]]
            blocks.append((O, FO, FM))
        if blocks:
            out = tuple(np.concatenate([b[t] for b in blocks]) for t in range(3))
        else:
            out = (np.zeros((0, i + 1), dt), np.zeros((0, i, G.n_obj), dt),
                   np.zeros((0, i, G.n_mor), dt))
        cache[shape] = out
        return out

    def act_array(self, shape, maps, arrs):
        i, j, k = shape
        al, be, ga = (tuple(m) for m in maps)
        O, FO, FM = arrs
        dt, _, _, hc1, hc2, id1, id2 = self._globals()
        gobj, gmor = grid_map(be, ga, j, k)
        gobj, gmor = np.array(gobj, dtype=np.int64), np.array(gmor, dtype=np.int64)
        n = O.shape[0]
        i2 = len(al) - 1
        NO = O[:, list(al)]
        FO2 = np.zeros((n, i2, len(gobj)), dtype=dt)
        FM2 = np.zeros((n, i2, len(gmor)), dtype=dt)
        for s in range(1, i2 + 1):
            lo, hi = al[s - 1], al[s]
            if lo == hi:
                FO2[:, s - 1] = id1[O[:, lo]][:, None]
                FM2[:, s - 1] = id2[O[:, lo]][:, None]
                continue
            Fo = FO[:, lo][:, gobj].astype(np.intp)
            Fm = FM[:, lo][:, gmor].astype(np.intp)
            for t in range(lo + 1, hi):
                # hcomp commutes with reindexing along the grid map
                Fo = np.take(hc1, Fo * hc1.shape[1] + FO[:, t][:, gobj])
                Fm = np.take(hc2, Fm * hc2.shape[1] + FM[:, t][:, gmor])
            FO2[:, s - 1] = Fo
            FM2[:, s - 1] = Fm
        return NO, FO2, FM2

    @staticmethod
    def rows(arrs):
        """One flat integer row per element."""
        O, FO, FM = arrs
        n = O.shape[0]
        return np.concatenate([O, FO.reshape(n, -1), FM.reshape(n, -1)], axis=1)

    def push(self, G, x):
        """The image of a chain under a strict 2-functor ``G: D -> E``."""
        objs, fs = x
        out = []
        for s, F in enumerate(fs):
            one = G.one[(objs[s], objs[s + 1])]
            two = G.two[(objs[s], objs[s + 1])]
            out.append((tuple(one[o] for o in F[0]), tuple(two[m] for m in F[1])))
        return (tuple(G.obj[a] for a in objs), tuple(out))


def precat_level(D, i, j, k):
    return PrecatNerve(D).level((i, j, k))


def _row_set(rows):
    """Rows deduplicated and put in a canonical order, for set comparisons."""
    if rows.shape[0] == 0:
        return rows
    rows = np.ascontiguousarray(rows)
    void = rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()
    return np.unique(void).view(rows.dtype).reshape(-1, rows.shape[1])


def check_segal(D, i, j, k, provider=None):
    """The level ``(i, j, k)`` equals the iterated fiber product of level
    ``(1, j, k)`` over level ``(0, j, k)`` via the spine maps."""
    P = provider or PrecatNerve(D)
    if i == 0:
        return True
    shape = (i, j, k)
    idj, idk = identity_map(j), identity_map(k)
    ones = P.level_array((1, j, k))
    one_rows = P.rows(ones)
    src, tgt = ones[0][:, 0], ones[0][:, 1]
    # literal fiber product, built one factor at a time
    order = np.argsort(src, kind="stable")
    objs = np.arange(P.D.n)
    starts = np.searchsorted(src[order], objs)
    counts = np.searchsorted(src[order], objs, side="right") - starts
    fiber_idx = np.arange(len(one_rows))[:, None]
    for _ in range(i - 1):
        last = tgt[fiber_idx[:, -1]]
        cnt = counts[last]
        rep = np.repeat(np.arange(len(fiber_idx)), cnt)
        within = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        nxt = order[starts[last][rep] + within]
        fiber_idx = np.concatenate([fiber_idx[rep], nxt[:, None]], axis=1)
    fiber = one_rows[fiber_idx].reshape(len(fiber_idx), -1)
    X = P.level_array(shape)
    spine = np.concatenate([P.rows(P.act_array(shape, ((s - 1, s), idj, idk), X))
                            for s in range(1, i + 1)], axis=1)
    uniq = _row_set(spine)
    return len(uniq) == len(spine) and np.array_equal(uniq, _row_set(fiber))


# ---------------------------------------------------------------------------
# gaunt bisimplicial levels and the Theta_2 nerve


ThetaShape = namedtuple("ThetaShape", "i js")


def theta_shape(i, js):
    js = tuple(js)
    if i < 0 or len(js) != i or any(j < 0 for j in js):
        raise ValueError(f"not a Theta_2 shape: [{i}|{js}]")
    return ThetaShape(i, js)


_THETAS = {}


def _theta(i, js):
    key = (i, tuple(js))
    if key not in _THETAS:
        _THETAS[key] = theta(i, list(js))
    return _THETAS[key]


_DMAPS = {}


def diagonal_map(al, be, i, j):
    """The strict 2-functor ``[i'|j',...,j'] -> [i|j,...,j]`` induced by
    ``al: [i'] -> [i]`` and ``be: [j'] -> [j]``."""
    key = (al, be, i, j)
    if key in _DMAPS:
        return _DMAPS[key]
    i2, j2 = len(al) - 1, len(be) - 1
    S, T = _theta(i2, (j2,) * i2), _theta(i, (j,) * i)
    ordj, ordj2 = ordinal(j), ordinal(j2)

    def spread(s, t):
        # for each column r of the target hom, the source column feeding it
        return [u for u in range(s + 1, t + 1) for _ in range(al[u - 1], al[u])]

    def on1(f):
        s, t, x = f
        lab = S.hom(s, t).objects[x]
        image = tuple(be[lab[u - s - 1]] for u in spread(s, t))
        return (al[s], al[t], T.hom(al[s], al[t]).obj_index[image])

    def on2(a):
        s, t, m = a
        lab = S.hom(s, t).labels[m]
        image = []
        for u in spread(s, t):
            mm = lab[u - s - 1]
            image.append(ordj.between(be[ordj2.src[mm]], be[ordj2.tgt[mm]])[0])
        return (al[s], al[t], T.hom(al[s], al[t]).mor_index[tuple(image)])

    G = two_functor_from_cells(S, T, list(al), on1, on2)
    _DMAPS[key] = G
    return G


class GauntBisimplicial(LevelProvider):
    """Level ``(i, j)`` is ``2Cat([i|j,...,j], A)`` for a gaunt A."""

    ndirs = 2

    def __init__(self, A):
        super().__init__()
        if not is_gaunt(A):
            raise ValueError(f"{A.name} is not gaunt")
        self.A = A

    def _compute(self, shape):
        i, j = shape
        return enumerate_two_functors(_theta(i, (j,) * i), self.A)

    def act(self, shape, maps, x):
        i, j = shape
        return diagonal_map(tuple(maps[0]), tuple(maps[1]), i, j).then(x)

    # cells read off the low levels
    def object_of(self, x):
        return x.obj[0]

    def one_cell_of(self, x):
        return x.on1((0, 1, 0))

    def two_cell_of(self, x):
        C = x.source.hom(0, 1)
        m = next(m for m in range(C.n_mor) if C.src[m] != C.tgt[m])
        return x.on2((0, 1, m))

    def triangle_of(self, y):
        h = y.on1((0, 2, 0))
        return (y.on1((0, 1, 0)), y.on1((1, 2, 0)), h, self.A.ident2(h))


def gaunt_bisimplicial_level(A, i, j):
    return GauntBisimplicial(A).level((i, j))


class Theta2Nerve:
    """Level ``theta`` is the set of normal pseudofunctors ``theta -> D``."""

    def __init__(self, D):
        self.D = D
        self._cache = {}
        self._lock = threading.Lock()

    def level(self, shape):
        shape = theta_shape(*shape)
        with self._lock:
            hit = self._cache.get(shape)
        if hit is None:
            hit = tuple(enumerate_nps(_theta(shape.i, shape.js), self.D))
            with self._lock:
                self._cache.setdefault(shape, hit)
        return hit

    def act(self, G, x):
        """Precompose with a strict 2-functor ``G`` between theta objects."""
        return precompose(x, G)


def theta2_nerve_level(D, shape):
    return Theta2Nerve(D).level(shape)


def check_optimistic(A, i_max=2, j_max=2):
    """For gaunt A compare normal pseudofunctors, strict 2-functors and the
    gaunt bisimplicial levels out of ``[i|j,...,j]``."""
    if not is_gaunt(A):
        raise ValueError(f"{A.name} is not gaunt")
    N, B = Theta2Nerve(A), GauntBisimplicial(A)
    out = []
    for i in range(i_max + 1):
        for j in range(j_max + 1):
            T = _theta(i, (j,) * i)
            nps = N.level((i, (j,) * i))
            strict = enumerate_two_functors(T, A)
            bis = B.level((i, j))
            image = [F.strict_part() for F in nps]
            ok = (all(F.is_strict() for F in nps) and len(set(image)) == len(image)
                  and set(image) == set(strict) == set(bis))
            out.append({"i": i, "j": j, "nps": len(nps), "strict": len(strict),
                        "bisimplicial": len(bis), "pass": ok})
    return out


def check_leinster_vs_moser(A, i_max=2, j_max=2):
    """Theta_2 nerve levels ``[i|j,...,j]`` against the precategory nerve at
    ``(i, j, 0)`` through the evident bijection."""
    if not is_gaunt(A):
        raise ValueError(f"{A.name} is not gaunt")
    N, P = Theta2Nerve(A), PrecatNerve(A)
    out = []
    for i in range(i_max + 1):
        for j in range(j_max + 1):
            nps = N.level((i, (j,) * i))
            T = _theta(i, (j,) * i)
            G = _grid(j, 0)
            image = []
            for F in nps:
                chain = []
                for s in range(1, i + 1):
                    H = T.hom(s - 1, s)
                    obj = tuple(F.one[(s - 1, s, H.obj_index[(x,)])][2] for x, _ in G.objects)
                    mor = tuple(F.two[(s - 1, s, H.mor_index[(m,)])][2] for m, _ in G.labels)
                    chain.append((obj, mor))
                image.append((tuple(F.obj), tuple(chain)))
            level = P.level((i, j, 0))
            ok = len(set(image)) == len(image) and set(image) == set(level)
            out.append({"i": i, "j": j, "theta2": len(nps), "precat": len(level), "pass": ok})
    return out


# ---------------------------------------------------------------------------
# natural families of level maps


def natural_families(PA, PB, shapes):
    """All families ``f_shape: PA.level -> PB.level`` commuting with faces and
    degeneracies between the given shapes.

    ``shapes`` must be closed under the faces and degeneracies used, e.g. a
    box or a total-degree truncation.  Each family is a dict keyed by
    ``(shape, element)``.
    """
    shapes = sorted(set(map(tuple, shapes)), key=lambda s: (sum(s), s))
    allowed = set(shapes)
    nd = PA.ndirs

    def faces_of(P, shape, x):
        out = []
        for q in range(nd):
            if shape[q] >= 1 and shifted(shape, q, -1) in allowed:
                out.extend(((q, r), P.face(shape, q, r, x)) for r in range(shape[q] + 1))
        return out

    index = {}
    for s in shapes:
        idx = {}
        for y in PB.level(s):
            idx.setdefault(tuple(v for _, v in faces_of(PB, s, y)), []).append(y)
        index[s] = idx

    p = Problem()
    pos = {}
    for s in shapes:
        for x in PA.level(s):
            fx = faces_of(PA, s, x)
            deg = None
            for q in range(nd):
                lower = shifted(s, q, -1)
                if s[q] < 1 or lower not in allowed:
                    continue
                for r in range(s[q]):
                    z = PA.face(s, q, r, x)
                    if PA.degeneracy(lower, q, r, z) == x:
                        deg = (lower, q, r, z)
                        break
                if deg:
                    break

            def dom(vals, s=s, fx=fx, deg=deg):
                if deg is not None:
                    lower, q, r, z = deg
                    y = PB.degeneracy(lower, q, r, vals[pos[(lower, z)]])
                    want = [vals[pos[(shifted(s, qq, -1), v)]] for (qq, _), v in fx]
                    got = [v for _, v in faces_of(PB, s, y)]
                    return (y,) if got == want else ()
                key = tuple(vals[pos[(shifted(s, qq, -1), v)]] for (qq, _), v in fx)
                return index[s].get(key, ())
            pos[(s, x)] = p.add((s, x), dom)
    keys = list(pos)
    return [dict(zip(keys, vals)) for vals in p.solutions()]


def check_precat_maps(A, B, i_max=2, j_max=1, k_max=1):
    """Natural maps between truncated precategory nerves versus strict
    2-functors ``A -> B``."""
    PA, PB = PrecatNerve(A), PrecatNerve(B)
    shapes = list(itertools.product(range(i_max + 1), range(j_max + 1), range(k_max + 1)))
    fams = natural_families(PA, PB, shapes)
    functors = enumerate_two_functors(A, B)
    induced = set()
    for G in functors:
        f = {(s, x): PB.push(G, x) for s in shapes for x in PA.level(s)}
        induced.add(tuple(f[key] for key in sorted(f, key=repr)))
    found = set()
    for f in fams:
        found.add(tuple(f[key] for key in sorted(f, key=repr)))
    ok = len(found) == len(fams) == len(functors) and found == induced
    return {"maps": len(fams), "two_functors": len(functors), "pass": ok}


def gamma(f, PA, PB):
    """The normal pseudofunctor read off a natural family on the low levels."""
    A, B = PA.A, PB.A
    obj = [None] * A.n
    for x in PA.level((0, 0)):
        obj[PA.object_of(x)] = PB.object_of(f[((0, 0), x)])
    one = {PA.one_cell_of(x): PB.one_cell_of(f[((1, 0), x)]) for x in PA.level((1, 0))}
    two = {PA.two_cell_of(x): PB.two_cell_of(f[((1, 1), x)]) for x in PA.level((1, 1))}
    comp = {}
    for x in PA.level((2, 0)):
        u, v = x.on1((0, 1, 0)), x.on1((1, 2, 0))
        comp[(u, v)] = PB.triangle_of(f[((2, 0), x)])
    return NormalPseudofunctor(A, B, obj, one, two, comp)


def nerve_of_nps(F, PA, shapes):
    """The family induced by a normal pseudofunctor with strict values."""
    out = {}
    for s in shapes:
        for x in PA.level(s):
            y = precompose(F, x)
            if not y.is_strict():
                raise ValueError("the image is not strict; a gaunt target is required")
            out[(s, x)] = y.strict_part()
    return out


def appendix_roundtrip(A, B, provider=None, total=3):
    """Natural families between truncated bisimplicial nerves versus normal
    pseudofunctors, with both roundtrips checked."""
    PA = GauntBisimplicial(A)
    PB = provider or GauntBisimplicial(B)
    shapes = [(i, j) for i in range(total + 1) for j in range(total + 1) if i + j <= total]
    for s in ((0, 0), (1, 0), (1, 1), (2, 0)):
        if s not in shapes:
            raise LevelError(f"provider must serve level {s}")
    fams = natural_families(PA, PB, shapes)
    nps = enumerate_nps(A, B)
    records = {"maps": len(fams), "nps": len(nps), "invalid": 0,
               "gamma_then_nerve": True, "nerve_then_gamma": True}
    images = set()
    for f in fams:
        F = gamma(f, PA, PB)
        if any(validate_nps(F).values()):
            records["invalid"] += 1
            continue
        images.add(F)
        if nerve_of_nps(F, PA, shapes) != f:
            records["gamma_then_nerve"] = False
    for F in nps:
        if gamma(nerve_of_nps(F, PA, shapes), PA, PB) != F:
            records["nerve_then_gamma"] = False
    records["pass"] = (records["maps"] == records["nps"] and not records["invalid"]
                       and records["gamma_then_nerve"] and records["nerve_then_gamma"]
                       and images == set(nps))
    return records


__all__ = [
    "LevelError", "face_map", "degeneracy_map", "identity_map", "monotone_maps",
    "LevelProvider", "degenerate_source", "check_simplicial_identities",
    "DuskinNerve", "duskin_level", "compatible_boundaries", "check_coskeletal",
    "KNOCKOUTS", "TDeltaNerve", "tdelta_nerve_level", "reflect", "ScaledNerve",
    "scaled_nerve_level", "check_within_simplicial", "grid", "grid_map",
    "RezkNerve", "rezk_level", "PrecatNerve", "precat_level", "check_segal",
    "ThetaShape", "theta_shape", "diagonal_map", "GauntBisimplicial",
    "gaunt_bisimplicial_level", "Theta2Nerve", "theta2_nerve_level",
    "check_optimistic", "check_leinster_vs_moser", "natural_families",
    "check_precat_maps", "gamma", "nerve_of_nps", "appendix_roundtrip",
]
