"""Transformations, modifications and the functor 2-categories.

For 2-functors F, G: B -> D a lax transformation sigma: F => G has a
component ``sigma_a: F a -> G a`` for each object and, for each 1-cell
``f: a -> b``, a 2-cell

    sigma_f: (F f then sigma_b) => (sigma_a then G f),

that is ``sigma_b o F f => G f o sigma_a``.  The coherence conditions are

* ``sigma_{id a} = id``;
* ``sigma_{f then g} = (F f whiskered into sigma_g) . (sigma_f whiskered into G g)``;
* for ``alpha: f => f'``: ``(F alpha * sigma_b) . sigma_{f'} = sigma_f . (sigma_a * G alpha)``,

with ``.`` vertical composition in diagrammatic order.  A modification
``Gamma: sigma => tau`` has a 2-cell ``Gamma_a: sigma_a => tau_a`` for each
object with ``(F f * Gamma_b) . tau_f = sigma_f . (Gamma_a * G f)``.

Gray tensor products are never built; ``A (x) B`` is handled through the set
``2Cat(A, [B, D])`` of the corresponding functor 2-category.
"""
from collections import namedtuple

from ._search import Problem
from .core2cat import (
    EMPTY, Fin2Category, FinCategory, Violation, ch_star, classify_cells,
    components, coproduct2, discrete, discrete_category, enumerate_two_functors,
    ob_star, ordinal, pi0_star, point, product, sigma_i, two_functor_from_cells,
    two_functor_violations,
)

Transformation = namedtuple("Transformation", "comps nat")
Transformation.__doc__ = ("Components (one 1-cell per object) and naturality 2-cells "
                          "(one per 1-cell of the source, in global cell order).")

FLAVORS = ("strict", "pseudo", "lax", "icon")


class PreconditionError(ValueError):
    """An operation was called outside its stated hypotheses."""


def _check_parallel(F, G):
    if F.source is not G.source and F.source.objects != G.source.objects:
        raise ValueError("transformations need parallel 2-functors")
    if F.target is not G.target and F.target.objects != G.target.objects:
        raise ValueError("transformations need parallel 2-functors")


def enumerate_transformations(F, G, flavor="lax"):
    """All transformations F => G of the given flavor, in canonical order."""
    if flavor == "cartesian":
        flavor = "strict"
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    _check_parallel(F, G)
    B, D = F.source, F.target
    cells = B.cells1()
    p = Problem()
    cpos, npos = {}, {}

    def comp(vals, a):
        return vals[cpos[a]]

    def nat(vals, f):
        if B.is_identity1(f):
            return D.ident2(comp(vals, f[0]))
        return vals[npos[f]]

    def ndeps(f):
        return [cpos[f[0]], cpos[f[1]], npos.get(f)]

    fac = {}
    for f in cells:
        for g in cells:
            if f[1] == g[0] and not B.is_identity1(f) and not B.is_identity1(g):
                fac.setdefault(B.comp1(f, g), []).append((f, g))

    def composite_nat(vals, f, g):
        left = D.whisker(nat(vals, g), pre=F.on1(f))
        right = D.whisker(nat(vals, f), post=G.on1(g))
        return D.vcomp(left, right)

    for k in range(B.n):
        if flavor == "icon":
            def dom(vals, k=k):
                x, y = F.obj[k], G.obj[k]
                return (D.ident1(x),) if x == y else ()
        else:
            def dom(vals, k=k):
                x, y = F.obj[k], G.obj[k]
                return tuple((x, y, i) for i in range(D.hom(x, y).n_obj))
        cpos[k] = p.add(("c", k), dom)
        for f in cells:
            if B.is_identity1(f) or max(f[0], f[1]) != k:
                continue
            forced = next((q for q in fac.get(f, ()) if q[0] in npos and q[1] in npos), None)

            def dom(vals, f=f, forced=forced):
                if forced is not None:
                    return (composite_nat(vals, *forced),)
                s = D.comp1(F.on1(f), comp(vals, f[1]))
                t = D.comp1(comp(vals, f[0]), G.on1(f))
                cands = D.twocells_between(s, t)
                if flavor == "strict":
                    return tuple(c for c in cands if D.is_identity2(c))
                if flavor == "pseudo":
                    return tuple(c for c in cands if D.is_iso2(c))
                return cands
            npos[f] = p.add(("n", f), dom)

    for h, pairs in fac.items():
        for f, g in pairs:
            p.require(ndeps(f) + ndeps(g) + ndeps(h),
                      lambda vals, f=f, g=g, h=h: composite_nat(vals, f, g) == nat(vals, h))
    for al in B.cells2():
        if B.is_identity2(al):
            continue
        f, f2 = B.src2(al), B.tgt2(al)
        a, b = al[0], al[1]

        def check(vals, al=al, f=f, f2=f2, a=a, b=b):
            lhs = D.vcomp(D.whisker(F.on2(al), post=comp(vals, b)), nat(vals, f2))
            rhs = D.vcomp(nat(vals, f), D.whisker(G.on2(al), pre=comp(vals, a)))
            return lhs == rhs
        p.require(ndeps(f) + ndeps(f2), check)

    out = []
    for vals in p.solutions():
        out.append(Transformation(tuple(comp(vals, a) for a in range(B.n)),
                                  tuple(nat(vals, f) for f in cells)))
    return out


def transformation_violations(F, G, s, flavor="lax"):
    """Every failed condition of ``s`` as a transformation F => G."""
    B, D = F.source, F.target
    cells = B.cells1()
    nat = dict(zip(cells, s.nat))
    out = []
    for a in range(B.n):
        if s.comps[a][:2] != (F.obj[a], G.obj[a]):
            out.append(Violation("component-endpoints", (a,)))
    if out:
        return out
    for f in cells:
        src = D.comp1(F.on1(f), s.comps[f[1]])
        tgt = D.comp1(s.comps[f[0]], G.on1(f))
        if D.src2(nat[f]) != src or D.tgt2(nat[f]) != tgt:
            out.append(Violation("naturality-endpoints", (f,)))
    if out:
        return out
    for a in range(B.n):
        if not D.is_identity2(nat[B.ident1(a)]):
            out.append(Violation("lax-unity", (a,)))
    for f in cells:
        for g in cells:
            if f[1] != g[0]:
                continue
            lhs = D.vcomp(D.whisker(nat[g], pre=F.on1(f)), D.whisker(nat[f], post=G.on1(g)))
            if lhs != nat[B.comp1(f, g)]:
                out.append(Violation("lax-composition", (f, g)))
    for al in B.cells2():
        f, f2 = B.src2(al), B.tgt2(al)
        lhs = D.vcomp(D.whisker(F.on2(al), post=s.comps[al[1]]), nat[f2])
        rhs = D.vcomp(nat[f], D.whisker(G.on2(al), pre=s.comps[al[0]]))
        if lhs != rhs:
            out.append(Violation("lax-2-naturality", (al,)))
    if flavor == "pseudo" and not all(D.is_iso2(x) for x in s.nat):
        out.append(Violation("pseudo", ()))
    if flavor == "strict" and not all(D.is_identity2(x) for x in s.nat):
        out.append(Violation("strict", ()))
    if flavor == "icon" and not all(D.is_identity1(c) for c in s.comps):
        out.append(Violation("icon", ()))
    return out


def enumerate_modifications(F, G, s, t):
    """All modifications between the parallel transformations ``s, t: F => G``."""
    B, D = F.source, F.target
    cells = B.cells1()
    sn, tn = dict(zip(cells, s.nat)), dict(zip(cells, t.nat))
    p = Problem()
    pos = {}
    for a in range(B.n):
        pos[a] = p.add(a, lambda vals, a=a: D.twocells_between(s.comps[a], t.comps[a]))
    for f in cells:
        if B.is_identity1(f):
            continue
        a, b = f[0], f[1]

        def check(vals, f=f, a=a, b=b):
            lhs = D.vcomp(D.whisker(vals[pos[b]], pre=F.on1(f)), tn[f])
            rhs = D.vcomp(sn[f], D.whisker(vals[pos[a]], post=G.on1(f)))
            return lhs == rhs
        p.require([pos[a], pos[b]], check)
    return [tuple(v) for v in p.solutions()]


def identity_transformation(F):
    B, D = F.source, F.target
    comps = tuple(D.ident1(F.obj[a]) for a in range(B.n))
    nat = tuple(D.ident2(F.on1(f)) for f in B.cells1())
    return Transformation(comps, nat)


def compose_transformations(F, G, H, s, t):
    """``s: F => G`` followed by ``t: G => H``."""
    B, D = F.source, F.target
    cells = B.cells1()
    comps = tuple(D.comp1(x, y) for x, y in zip(s.comps, t.comps))
    nat = []
    for f, sf, tf in zip(cells, s.nat, t.nat):
        a, b = f[0], f[1]
        first = D.whisker(sf, post=t.comps[b])
        second = D.whisker(tf, pre=s.comps[a])
        nat.append(D.vcomp(first, second))
    return Transformation(comps, tuple(nat))


class FunctorTwoCategory(Fin2Category):
    """``[B, D]`` of the given flavor, with homs computed on demand.

    Objects are the 2-functors B -> D; ``hom(i, j)`` has the transformations
    as objects and ``(source index, target index, components)`` triples as
    morphism labels.
    """

    def __init__(self, B, D, flavor="lax"):
        if flavor == "cartesian":
            flavor = "strict"
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        self.B, self.D, self.flavor = B, D, flavor
        functors = enumerate_two_functors(B, D)
        super().__init__(functors, name=f"[{B.name},{D.name}]_{flavor}")
        self.functors = functors
        self._fidx = {F: i for i, F in enumerate(functors)}
        self._tidx = {}
        self._midx = {}

    def object_index(self, F):
        return self._fidx[F]

    def _build_hom(self, i, j):
        F, G = self.functors[i], self.functors[j]
        D = self.D
        ts = enumerate_transformations(F, G, self.flavor)
        tidx = {t: k for k, t in enumerate(ts)}
        self._tidx[(i, j)] = tidx
        mors, ident = [], [None] * len(ts)
        for x, s in enumerate(ts):
            for y, t in enumerate(ts):
                for m in enumerate_modifications(F, G, s, t):
                    if x == y and all(D.is_identity2(c) for c in m):
                        ident[x] = len(mors)
                    mors.append(((x, y, m), x, y))
        midx = {m[0]: k for k, m in enumerate(mors)}
        self._midx[(i, j)] = midx

        def rule(u, v):
            x, _, m1 = mors[u][0]
            _, z, m2 = mors[v][0]
            return midx[(x, z, tuple(D.vcomp(p, q) for p, q in zip(m1, m2)))]

        if not ts:
            return EMPTY
        return FinCategory.from_rule(ts, mors, ident, rule)

    def transformation_index(self, i, j, s):
        self.hom(i, j)
        return self._tidx[(i, j)][s]

    def modification_index(self, i, j, x, y, comps):
        self.hom(i, j)
        return self._midx[(i, j)][(x, y, tuple(comps))]

    def _build_id1(self):
        return tuple(self.transformation_index(i, i, identity_transformation(F))
                     for i, F in enumerate(self.functors))

    def _build_hcomp(self, i, j, k):
        P, Q = self.hom(i, j), self.hom(j, k)
        F, G, H = self.functors[i], self.functors[j], self.functors[k]
        D = self.D
        on_obj = [[self.transformation_index(i, k, compose_transformations(F, G, H, s, t))
                   for t in Q.objects] for s in P.objects]
        on_mor = []
        for u in range(P.n_mor):
            x, x2, m1 = P.labels[u]
            row = []
            for v in range(Q.n_mor):
                y, y2, m2 = Q.labels[v]
                comps = tuple(D.comp2h(p, q) for p, q in zip(m1, m2))
                row.append(self.modification_index(i, k, on_obj[x][y], on_obj[x2][y2], comps))
            on_mor.append(row)
        return (on_obj, on_mor)

    # -- cell-level helpers
    def cell1(self, i, j, s):
        return (i, j, self.transformation_index(i, j, s))

    def cell2(self, i, j, s, t, comps):
        x = self.transformation_index(i, j, s)
        y = self.transformation_index(i, j, t)
        return (i, j, self.modification_index(i, j, x, y, comps))

    def transformation(self, cell):
        i, j, x = cell
        return self.hom(i, j).objects[x]

    def modification(self, cell):
        """``(source transformation, target transformation, components)``."""
        i, j, m = cell
        C = self.hom(i, j)
        x, y, comps = C.labels[m]
        return C.objects[x], C.objects[y], comps


def functor_two_category(B, D, flavor="lax"):
    return FunctorTwoCategory(B, D, flavor)


def inclusion(src, tgt):
    """The identity-on-cells 2-functor between two flavors of ``[B, D]``.

    Valid for strict -> pseudo -> lax and icon -> lax.
    """
    def on1(c):
        i, j, _ = c
        return tgt.cell1(i, j, src.transformation(c))

    def on2(c):
        i, j, _ = c
        s, t, comps = src.modification(c)
        return tgt.cell2(i, j, s, t, comps)

    return two_functor_from_cells(src, tgt, range(src.n), on1, on2)


def postcompose_element(FC_src, FC_tgt, H, Phi):
    """``[B, H] o Phi`` for ``Phi: A -> [B, D]`` and a strict ``H: D -> E``.

    ``FC_src`` is ``[B, D]`` and ``FC_tgt`` is ``[B, E]`` of the same flavor.
    """
    A = Phi.source
    B = FC_src.B

    def fun(i):
        return FC_tgt.object_index(FC_src.functors[i].then(H))

    def tr(s):
        return Transformation(tuple(H.on1(c) for c in s.comps),
                              tuple(H.on2(c) for c in s.nat))

    def on1(f):
        c = Phi.on1(f)
        return FC_tgt.cell1(fun(c[0]), fun(c[1]), tr(FC_src.transformation(c)))

    def on2(al):
        c = Phi.on2(al)
        s, t, comps = FC_src.modification(c)
        return FC_tgt.cell2(fun(c[0]), fun(c[1]), tr(s), tr(t), tuple(H.on2(x) for x in comps))

    del B
    return two_functor_from_cells(A, FC_tgt, [fun(x) for x in Phi.obj], on1, on2)


def evaluate_element(FC, Phi, b):
    """The 2-functor ``A -> D`` obtained by evaluating ``Phi: A -> [B, D]`` at ``b``."""
    D = FC.D

    def on1(f):
        return FC.transformation(Phi.on1(f)).comps[b]

    def on2(al):
        return FC.modification(Phi.on2(al))[2][b]

    return two_functor_from_cells(Phi.source, D, [FC.functors[i].obj[b] for i in Phi.obj],
                                  on1, on2)


# ---------------------------------------------------------------------------
# virtual tensors


def virtual_tensor_hom(A, B, D, flavor="lax", FC=None):
    """The set ``2Cat(A, [B, D]_flavor)`` standing in for ``2Cat(A (x) B, D)``."""
    if FC is None:
        FC = functor_two_category(B, D, flavor)
    return enumerate_two_functors(A, FC)


def check_replace_pseudo(A, B, D):
    """Whether every 2-functor ``A -> [B, D]_lax`` factors through ``[B, D]_ps``.

    Requires every 1-cell of A to be an equivalence.
    """
    eq = set(classify_cells(A, completions=False)["one_equivalences"])
    missing = [f for f in A.cells1() if f not in eq]
    if missing:
        raise PreconditionError(f"1-cells {missing} of A are not equivalences")
    lax = functor_two_category(B, D, "lax")
    ps = functor_two_category(B, D, "pseudo")
    L = set(virtual_tensor_hom(A, B, D, FC=lax))
    inc = inclusion(ps, lax)
    P = {Phi.then(inc) for Phi in virtual_tensor_hom(A, B, D, FC=ps)}
    return L == P


# ---------------------------------------------------------------------------
# pullbacks and the icon square


def pullback_two_category(f, g):
    """The pullback of the cospan ``f: X -> Z <- Y: g`` computed cellwise."""
    X, Y = f.source, g.source
    objs = [(x, y) for x in range(X.n) for y in range(Y.n) if f.obj[x] == g.obj[y]]
    index = {o: i for i, o in enumerate(objs)}
    homs = {}
    for (x, y) in objs:
        for (x2, y2) in objs:
            P, Q = X.hom(x, x2), Y.hom(y, y2)
            if not (P.n_obj and Q.n_obj):
                continue
            fo, go = f.one[(x, x2)], g.one[(y, y2)]
            fm, gm = f.two[(x, x2)], g.two[(y, y2)]
            obs = [(u, v) for u in range(P.n_obj) for v in range(Q.n_obj) if fo[u] == go[v]]
            if not obs:
                continue
            oi = {o: i for i, o in enumerate(obs)}
            mors = [((u, v), oi[(P.src[u], Q.src[v])], oi[(P.tgt[u], Q.tgt[v])])
                    for u in range(P.n_mor) for v in range(Q.n_mor)
                    if fm[u] == gm[v] and (P.src[u], Q.src[v]) in oi
                    and (P.tgt[u], Q.tgt[v]) in oi]
            mi = {m[0]: i for i, m in enumerate(mors)}
            ident = [mi[(P.identity[u], Q.identity[v])] for (u, v) in obs]
            homs[(index[(x, y)], index[(x2, y2)])] = FinCategory.from_rule(
                obs, mors, ident,
                lambda s, t, mors=mors, mi=mi, P=P, Q=Q: mi[(P._comp[mors[s][0][0]][mors[t][0][0]],
                                                           Q._comp[mors[s][0][1]][mors[t][0][1]])])
    hc = {}
    for i, (x, y) in enumerate(objs):
        for j, (x2, y2) in enumerate(objs):
            for k, (x3, y3) in enumerate(objs):
                if (i, j) not in homs or (j, k) not in homs:
                    continue
                P, Q, R = homs[(i, j)], homs[(j, k)], homs[(i, k)]
                tx, ty = X.hcomp_table(x, x2, x3), Y.hcomp_table(y, y2, y3)
                ro = {o: n for n, o in enumerate(R.objects)}
                rm = {m: n for n, m in enumerate(R.labels)}
                on_obj = [[ro[(tx[0][u][u2], ty[0][v][v2])] for (u2, v2) in Q.objects]
                          for (u, v) in P.objects]
                on_mor = [[rm[(tx[1][u][u2], ty[1][v][v2])] for (u2, v2) in Q.labels]
                          for (u, v) in P.labels]
                hc[(i, j, k)] = (on_obj, on_mor)
    id1 = []
    for (x, y) in objs:
        i = index[(x, y)]
        id1.append(homs[(i, i)].objects.index((X.id1[x], Y.id1[y])))
    return Fin2Category(objs, homs, id1, hc, name="pullback")


def is_isomorphism(K):
    """A strict 2-functor that is bijective on objects, 1-cells and 2-cells."""
    A, B = K.source, K.target
    if two_functor_violations(K):
        return False
    if sorted(K.obj) != list(range(B.n)):
        return False
    for a in range(A.n):
        for b in range(A.n):
            T = B.hom(K.obj[a], K.obj[b])
            C = A.hom(a, b)
            if C.n_obj != T.n_obj or C.n_mor != T.n_mor:
                return False
            if C.n_obj and (sorted(K.one[(a, b)]) != list(range(T.n_obj))
                            or sorted(K.two[(a, b)]) != list(range(T.n_mor))):
                return False
    return True


def power_of_objects(B, D):
    """``prod_{Ob B} ch_* Ob_* D`` and ``prod_{Ob B} Ob D``."""
    U = ob_star(D)
    P = product([U] * B.n)
    objects_only = discrete(discrete_category(P.objects))
    return ch_star(P), objects_only, P


def check_icon_pullback(B, D, report=False):
    """Compare ``[B, D]_ic`` with the pullback of
    ``[B, D]_lax -> prod ch_* Ob_* D <- prod Ob D`` through the canonical map."""
    lax = functor_two_category(B, D, "lax")
    ic = functor_two_category(B, D, "icon")
    chP, obP, P = power_of_objects(B, D)
    pidx = P.obj_index
    cells1 = {f: n for n, f in enumerate(ob_star(D).labels)}

    def obj_of(F):
        return pidx[tuple(F.obj[b] for b in range(B.n))]

    def one_of(s):
        return tuple(cells1[c] for c in s.comps)

    # lax -> ch_* power
    def f1(c):
        s = lax.transformation(c)
        x, y = obj_of(lax.functors[c[0]]), obj_of(lax.functors[c[1]])
        return (x, y, chP.hom(x, y).objects.index(one_of(s)))

    def f2(c):
        s, t, _ = lax.modification(c)
        x, y = obj_of(lax.functors[c[0]]), obj_of(lax.functors[c[1]])
        H = chP.hom(x, y)
        u, v = H.objects.index(one_of(s)), H.objects.index(one_of(t))
        return (x, y, H.between(u, v)[0])

    to_ch = two_functor_from_cells(lax, chP, [obj_of(F) for F in lax.functors], f1, f2)

    def g1(c):
        x = c[0]
        H = chP.hom(x, x)
        return (x, x, H.objects.index(P.labels[P.identity[x]]))

    def g2(c):
        return chP.ident2(g1(c))

    from_ob = two_functor_from_cells(obP, chP, range(obP.n), g1, g2)
    PB = pullback_two_category(to_ch, from_ob)
    pbi = {o: n for n, o in enumerate(PB.objects)}

    def k_obj(i):
        return pbi[(i, obj_of(ic.functors[i]))]

    def k1(c):
        i, j, _ = c
        s = ic.transformation(c)
        u = lax.transformation_index(i, j, s)
        a, b = k_obj(i), k_obj(j)
        return (a, b, PB.hom(a, b).objects.index((u, 0)))

    def k2(c):
        i, j, _ = c
        s, t, comps = ic.modification(c)
        m = lax.cell2(i, j, s, t, comps)[2]
        a, b = k_obj(i), k_obj(j)
        return (a, b, PB.hom(a, b).labels.index((m, 0)))

    K = two_functor_from_cells(ic, PB, [k_obj(i) for i in range(ic.n)], k1, k2)
    ok = is_isomorphism(K)
    if report:
        return ok, {"icon_cells": (ic.n, len(ic.cells1()), len(ic.cells2())),
                    "pullback_cells": (PB.n, len(PB.cells1()), len(PB.cells2()))}
    return ok


# ---------------------------------------------------------------------------
# corepresented pushouts


class Actual:
    """The hom-set functor ``2Cat(X, -)`` of an actual 2-category X."""

    def __init__(self, X):
        self.X = X

    def elements(self, D):
        return enumerate_two_functors(self.X, D)

    def __repr__(self):
        return f"Actual({self.X.name})"


class Virtual:
    """The hom-set functor ``2Cat(A (x)_flavor B, -) = 2Cat(A, [B, -]_flavor)``."""

    def __init__(self, A, B, flavor="lax"):
        self.A, self.B, self.flavor = A, B, flavor
        self._fc = {}

    def functor_category(self, D):
        key = id(D)
        if key not in self._fc:
            self._fc[key] = (D, functor_two_category(self.B, D, self.flavor))
        return self._fc[key][1]

    def elements(self, D):
        return enumerate_two_functors(self.A, self.functor_category(D))

    def __repr__(self):
        return f"Virtual({self.A.name} (x)_{self.flavor} {self.B.name})"


PushoutSpec = namedtuple("PushoutSpec", "name base leg1 leg2 apex r1 r2 c1 c2")
PushoutSpec.__doc__ = (
    "A commutative square of hom-set functors.  ``r1(D, x)`` restricts an "
    "element of leg1 to base, ``r2`` likewise for leg2; ``c1(D, h)`` and "
    "``c2(D, h)`` restrict an element of the apex to the legs.")


def check_corepresented_pushout(spec, probes):
    """For each probe D, whether apex(D) -> leg1(D) x_base(D) leg2(D) is bijective."""
    for part in (spec.base, spec.leg1, spec.leg2, spec.apex):
        if not hasattr(part, "elements"):
            raise TypeError(f"{part!r} is not a hom-set functor")
    records = []
    for n, D in enumerate(probes):
        E1, E2 = spec.leg1.elements(D), spec.leg2.elements(D)
        by_base = {}
        for x2 in E2:
            by_base.setdefault(spec.r2(D, x2), []).append(x2)
        fiber = set()
        for x1 in E1:
            for x2 in by_base.get(spec.r1(D, x1), ()):
                fiber.add((x1, x2))
        image = {}
        stray, clash = [], []
        for h in spec.apex.elements(D):
            pair = (spec.c1(D, h), spec.c2(D, h))
            if pair not in fiber:
                stray.append(h)
            if pair in image:
                clash.append((image[pair], h))
            image.setdefault(pair, h)
        missed = sorted(fiber - set(image), key=repr)
        ok = not stray and not clash and not missed
        records.append({"probe": n, "name": getattr(D, "name", str(n)), "pass": ok,
                        "apex": len(image) + len(clash), "fiber": len(fiber),
                        "not_in_fiber": stray[:3], "collisions": clash[:3],
                        "missed": missed[:3]})
    return records


def _copies(X, k):
    out = X
    for _ in range(k - 1):
        out = coproduct2(out, X)
    return out


def suspension_pushout_spec(A, i, apex=None, labels=None):
    """The span ``coprod_{i+1} A -> A (x) [i]``, ``coprod_{i+1} A -> coprod_{i+1} [0]``.

    The default apex is ``Sigma_i (pi_0)_* A``.  Another candidate apex of
    the form ``Sigma_i C`` may be given with ``labels = (on_obj, on_mor)``:
    ``on_obj(x)`` is the object of C standing for the object x of A and
    ``on_mor(f)`` the morphism of C standing for the 1-cell f.
    """
    if i < 1:
        raise ValueError("the span needs i >= 1")
    C = pi0_star(A)
    if apex is None:
        apex = sigma_i(i, C)
        comp_of = {}
        for a in range(A.n):
            for b in range(A.n):
                cl = components(A.hom(a, b))
                for x in range(A.hom(a, b).n_obj):
                    comp_of[(a, b, x)] = C.labels.index((a, b, cl[x]))
        labels = (lambda x: x, comp_of.__getitem__)
    elif labels is None:
        raise ValueError("a custom apex needs its cell labels")
    base = _copies(A, i + 1)
    pts = _copies(point(), i + 1)
    leg1 = Virtual(A, discrete(ordinal(i)), "lax")

    def r1(D, Phi):
        FC = leg1.functor_category(D)

        def on1(f):
            s = f[0] // A.n
            g = (f[0] - s * A.n, f[1] - s * A.n, f[2])
            return FC.transformation(Phi.on1(g)).comps[s]

        def on2(al):
            s = al[0] // A.n
            g = (al[0] - s * A.n, al[1] - s * A.n, al[2])
            return FC.modification(Phi.on2(g))[2][s]

        obj = [FC.functors[Phi.obj[x % A.n]].obj[x // A.n] for x in range(base.n)]
        return two_functor_from_cells(base, D, obj, on1, on2)

    def constant(X, D, obj):
        return two_functor_from_cells(X, D, obj,
                                      lambda f: D.ident1(obj[f[0]]),
                                      lambda al: D.ident2(D.ident1(obj[al[0]])))

    def r2(D, psi):
        return constant(base, D, [psi.obj[x // A.n] for x in range(base.n)])

    def c2(D, H):
        return constant(pts, D, [H.obj[s] for s in range(i + 1)])

    def c1(D, H):
        return suspension_apex_map(A, i, apex, labels, leg1.functor_category(D), H)

    return PushoutSpec(f"suspension(i={i}, A={A.name}, apex={apex.name})", Actual(base),
                       leg1, Actual(pts), Actual(apex), r1, r2, c1, c2)


def suspension_apex_map(A, i, apex, labels, FC, H):
    """The element of ``2Cat(A, [[i], D]_lax)`` induced by ``H: apex -> D``.

    It is ``[[i], H]`` applied to the canonical 2-functor
    ``A -> [[i], apex]_lax`` sending an object x to the functor whose arrow
    ``s -> t`` is the 1-cell ``(x, ..., x)`` and a 1-cell f to the icon with
    naturality 2-cells ``([f], ..., [f])``.
    """
    on_obj, on_mor = labels
    interval, D = FC.B, FC.D
    ident_comps = tuple(D.ident1(H.obj[s]) for s in range(i + 1))

    def word(x, s, t):
        return (s, t, apex.hom(s, t).objects.index((on_obj(x),) * (t - s)))

    def word2(f, s, t):
        return (s, t, apex.hom(s, t).labels.index((on_mor(f),) * (t - s)))

    def functor_at(x):
        G = two_functor_from_cells(
            interval, D, [H.obj[s] for s in range(i + 1)],
            lambda g: H.on1(word(x, g[0], g[1])),
            lambda al: H.on2((al[0], al[1], apex.hom(al[0], al[1]).identity[word(x, al[0], al[1])[2]])))
        return FC.object_index(G)

    def tr(f):
        nat = tuple(D.ident2(D.ident1(H.obj[g[0]])) if g[0] == g[1]
                    else H.on2(word2(f, g[0], g[1])) for g in interval.cells1())
        return Transformation(ident_comps, nat)

    def on1(f):
        return FC.cell1(functor_at(f[0]), functor_at(f[1]), tr(f))

    def on2(al):
        comps = tuple(D.ident2(c) for c in ident_comps)
        return FC.cell2(functor_at(al[0]), functor_at(al[1]),
                        tr(A.src2(al)), tr(A.tgt2(al)), comps)

    return two_functor_from_cells(A, FC, [functor_at(x) for x in range(A.n)], on1, on2)


def trivial_pushout_spec(X):
    """Both legs identities and apex equal to the base."""
    ident = (lambda D, x: x)
    a = Actual(X)
    return PushoutSpec(f"trivial({X.name})", a, a, a, a, ident, ident, ident, ident)


__all__ = [
    "Transformation", "FLAVORS", "PreconditionError", "enumerate_transformations",
    "transformation_violations", "enumerate_modifications", "identity_transformation",
    "compose_transformations", "FunctorTwoCategory", "functor_two_category",
    "inclusion", "postcompose_element", "evaluate_element", "virtual_tensor_hom",
    "check_replace_pseudo", "pullback_two_category", "is_isomorphism",
    "check_icon_pullback", "Actual", "Virtual", "PushoutSpec",
    "check_corepresented_pushout", "suspension_pushout_spec", "trivial_pushout_spec",
]
