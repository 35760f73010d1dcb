"""Finite categories and strict 2-categories given by explicit tables.

Conventions used throughout the package:

* composition is written in diagrammatic order: ``comp(f, g)`` is "f then g",
  i.e. the usual ``g o f``;
* a 1-cell of a 2-category is a triple ``(a, b, i)`` where ``i`` indexes an
  object of ``hom(a, b)``; a 2-cell is ``(a, b, m)`` where ``m`` indexes a
  morphism of ``hom(a, b)``;
* all identifiers are small integers assigned in construction order, so every
  enumeration below has a canonical order.
"""
import itertools
from collections import namedtuple

import numpy as np

from ._search import Problem

Violation = namedtuple("Violation", "law witness")


class CompositionError(ValueError):
    """Raised when cells that do not compose are asked to compose."""


# ---------------------------------------------------------------------------
# finite categories


class FinCategory:
    """A finite category with a dense composition table.

    ``table[f, g]`` is the index of "f then g" when ``tgt[f] == src[g]`` and
    ``-1`` otherwise.
    """

    def __init__(self, objects, src, tgt, identity, table, labels=None, name=None):
        self.objects = tuple(objects)
        self.src = tuple(int(x) for x in src)
        self.tgt = tuple(int(x) for x in tgt)
        self.identity = tuple(int(x) for x in identity)
        n = len(self.src)
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        arr = np.asarray(table, dtype=np.int64).reshape(n, n)
        arr.flags.writeable = False
        self.table = arr
        self._comp = arr.tolist()
        self.name = name
        between = {}
        for m in range(n):
            between.setdefault((self.src[m], self.tgt[m]), []).append(m)
        self._between = {k: tuple(v) for k, v in between.items()}
        self._is_id = set(self.identity)
        self._inv = None

    @classmethod
    def from_rule(cls, objects, morphisms, identity, rule, name=None):
        """Build from ``morphisms = [(label, src, tgt), ...]`` and ``rule(f, g)``."""
        n = len(morphisms)
        src = [m[1] for m in morphisms]
        tgt = [m[2] for m in morphisms]
        table = np.full((n, n), -1, dtype=np.int64)
        for f in range(n):
            for g in range(n):
                if tgt[f] == src[g]:
                    table[f, g] = rule(f, g)
        return cls(objects, src, tgt, identity, table,
                   labels=[m[0] for m in morphisms], name=name)

    @property
    def n_obj(self):
        return len(self.objects)

    @property
    def n_mor(self):
        return len(self.src)

    def comp(self, f, g):
        h = self._comp[f][g]
        if h < 0:
            raise CompositionError(f"morphisms {f} and {g} are not composable")
        return h

    def between(self, x, y):
        return self._between.get((x, y), ())

    def is_identity(self, m):
        return m in self._is_id

    def inverse(self, m):
        """The two-sided inverse of ``m`` or ``None``."""
        if self._inv is None:
            inv = {}
            for f in range(self.n_mor):
                for g in self.between(self.tgt[f], self.src[f]):
                    if (self._comp[f][g] == self.identity[self.src[f]]
                            and self._comp[g][f] == self.identity[self.tgt[f]]):
                        inv[f] = g
                        break
            self._inv = inv
        return self._inv.get(m)

    def is_iso(self, m):
        return self.inverse(m) is not None

    def key(self):
        return (self.src, self.tgt, self.identity, self.table.tobytes())

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<FinCategory{tag}: {self.n_obj} objects, {self.n_mor} morphisms>"


EMPTY = FinCategory([], [], [], [], np.zeros((0, 0)), name="empty")


def category_violations(C, where=()):
    """Every violated category law of ``C`` as a list of ``Violation``."""
    out = []
    n, k = C.n_mor, C.n_obj
    for x in range(len(C.identity)):
        i = C.identity[x]
        if not (0 <= i < n) or C.src[i] != x or C.tgt[i] != x:
            out.append(Violation("identity-endpoints", where + (x,)))
    for m in range(n):
        if not (0 <= C.src[m] < k and 0 <= C.tgt[m] < k):
            out.append(Violation("morphism-endpoints", where + (m,)))
    if out:
        return out
    T = C._comp
    for f in range(n):
        for g in range(n):
            h = T[f][g]
            if C.tgt[f] != C.src[g]:
                if h != -1:
                    out.append(Violation("compose-noncomposable", where + (f, g)))
                continue
            if not (0 <= h < n):
                out.append(Violation("compose-total", where + (f, g)))
            elif C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
                out.append(Violation("compose-endpoints", where + (f, g)))
    if out:
        return out
    for f in range(n):
        if T[C.identity[C.src[f]]][f] != f or T[f][C.identity[C.tgt[f]]] != f:
            out.append(Violation("unit", where + (f,)))
    for f in range(n):
        for g in range(n):
            if C.src[g] != C.tgt[f]:
                continue
            fg = T[f][g]
            for h in range(n):
                if C.src[h] != C.tgt[g]:
                    continue
                if T[fg][h] != T[f][T[g][h]]:
                    out.append(Violation("associativity", where + (f, g, h)))
    return out


def ordinal(n):
    """The ordinal ``[n] = {0 < 1 < ... < n}``."""
    if n < 0:
        raise ValueError("ordinal needs n >= 0")
    mors = [((i, j), i, j) for i in range(n + 1) for j in range(i, n + 1)]
    index = {m[0]: t for t, m in enumerate(mors)}
    ident = [index[(i, i)] for i in range(n + 1)]
    return FinCategory.from_rule(
        range(n + 1), mors, ident,
        lambda f, g: index[(mors[f][1], mors[g][2])], name=f"[{n}]")


def chaotic(k, objects=None):
    """The contractible groupoid on ``k + 1`` objects (or on ``objects``)."""
    objs = list(objects) if objects is not None else list(range(k + 1))
    if objects is None and k < 0:
        raise ValueError("chaotic needs k >= 0")
    r = len(objs)
    mors = [((objs[i], objs[j]), i, j) for i in range(r) for j in range(r)]
    ident = [i * r + i for i in range(r)]
    return FinCategory.from_rule(
        objs, mors, ident, lambda f, g: mors[f][1] * r + mors[g][2],
        name=f"~[{k}]" if objects is None else "ch")


def discrete_category(objects):
    objs = list(objects)
    mors = [(("id", x), i, i) for i, x in enumerate(objs)]
    return FinCategory.from_rule(objs, mors, list(range(len(objs))), lambda f, g: f)


def product(cats):
    """Cartesian product of a list of categories (terminal for an empty list).

    Objects and morphisms are labelled by tuples of component indices.
    """
    cats = list(cats)
    objs = list(itertools.product(*[range(C.n_obj) for C in cats]))
    mors = list(itertools.product(*[range(C.n_mor) for C in cats]))
    oidx = {o: i for i, o in enumerate(objs)}
    midx = {m: i for i, m in enumerate(mors)}
    spec = [(m, oidx[tuple(C.src[x] for C, x in zip(cats, m))],
             oidx[tuple(C.tgt[x] for C, x in zip(cats, m))]) for m in mors]
    ident = [midx[tuple(C.identity[x] for C, x in zip(cats, o))] for o in objs]

    def rule(f, g):
        return midx[tuple(C._comp[a][b] for C, a, b in zip(cats, mors[f], mors[g]))]

    out = FinCategory.from_rule(objs, spec, ident, rule,
                                name="x".join(C.name or "?" for C in cats) or "[0]")
    out.obj_index, out.mor_index = oidx, midx
    return out


def coproduct(C, D):
    objs = [(0, x) for x in C.objects] + [(1, y) for y in D.objects]
    k, n = C.n_obj, C.n_mor
    mors = [((0, C.labels[m]), C.src[m], C.tgt[m]) for m in range(n)]
    mors += [((1, D.labels[m]), k + D.src[m], k + D.tgt[m]) for m in range(D.n_mor)]
    ident = list(C.identity) + [n + i for i in D.identity]

    def rule(f, g):
        if f < n:
            return C._comp[f][g]
        return n + D._comp[f - n][g - n]

    return FinCategory.from_rule(objs, mors, ident, rule)


def walking_retract():
    """Objects a, b; f: a->b and g: b->a with f then g idempotent, g then f = id."""
    mors = [("id_a", 0, 0), ("id_b", 1, 1), ("f", 0, 1), ("g", 1, 0), ("gf", 0, 0)]
    name = [m[0] for m in mors]
    rules = {("f", "g"): "gf", ("g", "f"): "id_b", ("gf", "gf"): "gf",
             ("gf", "f"): "f", ("g", "gf"): "g"}

    def rule(f, g):
        a, b = name[f], name[g]
        if a.startswith("id"):
            return g
        if b.startswith("id"):
            return f
        return name.index(rules[(a, b)])

    return FinCategory.from_rule(["a", "b"], mors, [0, 1], rule, name="retract")


def construct_category(kind, *params):
    """Dispatch for ``ordinal``, ``chaotic``, ``product``, ``coproduct``, ``ch``."""
    if kind == "ordinal":
        return ordinal(*params)
    if kind == "chaotic":
        return chaotic(*params)
    if kind == "product":
        return product(params)
    if kind == "coproduct":
        return coproduct(*params)
    if kind == "ch":
        (S,) = params
        return chaotic(len(S) - 1, objects=S)
    if kind == "retract":
        return walking_retract()
    raise ValueError(f"unknown category kind {kind!r}")


# ---------------------------------------------------------------------------
# strict 2-categories


class Fin2Category:
    """A finite strict 2-category.

    ``homs[(a, b)]`` is a FinCategory (absent pairs are empty), ``id1[a]`` is
    an object index of ``hom(a, a)`` and ``hcomp[(a, b, c)]`` is a pair of
    nested lists ``(on_objects, on_morphisms)`` with
    ``on_objects[f][g]`` the index of "f then g" in ``hom(a, c)``.

    Subclasses may compute homs and composition tables lazily by overriding
    ``_build_hom`` and ``_build_hcomp``.
    """

    def __init__(self, objects, homs=None, id1=None, hcomp=None, name=None):
        self.objects = tuple(objects)
        self._homs = dict(homs or {})
        self._id1 = tuple(id1) if id1 is not None else None
        self._hcomp = dict(hcomp or {})
        self.name = name
        self._cells1 = None
        self._cells2 = None

    # -- storage
    def _build_hom(self, a, b):
        return EMPTY

    def _build_hcomp(self, a, b, c):
        return ([[]] * 0, [[]] * 0)

    def _build_id1(self):
        return None

    @property
    def id1(self):
        if self._id1 is None:
            self._id1 = self._build_id1()
        return self._id1

    @property
    def n(self):
        return len(self.objects)

    def hom(self, a, b):
        C = self._homs.get((a, b))
        if C is None:
            C = self._build_hom(a, b)
            self._homs[(a, b)] = C
        return C

    def hcomp_table(self, a, b, c):
        t = self._hcomp.get((a, b, c))
        if t is None:
            t = self._build_hcomp(a, b, c)
            self._hcomp[(a, b, c)] = t
        return t

    def nonempty_pairs(self):
        return [(a, b) for a in range(self.n) for b in range(self.n)
                if self.hom(a, b).n_obj]

    # -- global cells
    def cells1(self):
        if self._cells1 is None:
            self._cells1 = tuple((a, b, f) for a in range(self.n) for b in range(self.n)
                                 for f in range(self.hom(a, b).n_obj))
        return self._cells1

    def cells2(self):
        if self._cells2 is None:
            self._cells2 = tuple((a, b, m) for a in range(self.n) for b in range(self.n)
                                 for m in range(self.hom(a, b).n_mor))
        return self._cells2

    def ident1(self, a):
        return (a, a, self.id1[a])

    def is_identity1(self, f):
        return f[0] == f[1] and f[2] == self.id1[f[0]]

    def ident2(self, f):
        a, b, i = f
        return (a, b, self.hom(a, b).identity[i])

    def is_identity2(self, al):
        a, b, m = al
        return self.hom(a, b).is_identity(m)

    def src2(self, al):
        a, b, m = al
        return (a, b, self.hom(a, b).src[m])

    def tgt2(self, al):
        a, b, m = al
        return (a, b, self.hom(a, b).tgt[m])

    def twocells_between(self, f, g):
        """All 2-cells from 1-cell ``f`` to the parallel 1-cell ``g``."""
        a, b, i = f
        if g[0] != a or g[1] != b:
            return ()
        return tuple((a, b, m) for m in self.hom(a, b).between(i, g[2]))

    def comp1(self, f, g):
        if f[1] != g[0]:
            raise CompositionError(f"1-cells {f} and {g} are not composable")
        a, b, c = f[0], f[1], g[1]
        return (a, c, self.hcomp_table(a, b, c)[0][f[2]][g[2]])

    def comp2h(self, al, be):
        if al[1] != be[0]:
            raise CompositionError(f"2-cells {al} and {be} are not composable")
        a, b, c = al[0], al[1], be[1]
        return (a, c, self.hcomp_table(a, b, c)[1][al[2]][be[2]])

    def vcomp(self, al, be):
        if al[:2] != be[:2]:
            raise CompositionError(f"2-cells {al} and {be} are in different homs")
        a, b = al[:2]
        return (a, b, self.hom(a, b).comp(al[2], be[2]))

    def whisker(self, al, pre=None, post=None):
        """``pre`` then ``al`` then ``post`` with identity 2-cells on the 1-cells."""
        if pre is not None:
            al = self.comp2h(self.ident2(pre), al)
        if post is not None:
            al = self.comp2h(al, self.ident2(post))
        return al

    def inverse2(self, al):
        a, b, m = al
        inv = self.hom(a, b).inverse(m)
        return None if inv is None else (a, b, inv)

    def is_iso2(self, al):
        return self.inverse2(al) is not None

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Fin2Category{tag}: {self.n} objects>"


def _terminal():
    return product([])


def chain(cats, name=None):
    """Objects ``0..n`` with ``hom(a, b) = cats[a] x ... x cats[b-1]`` for a <= b.

    This single construction gives the Theta_2 objects, the suspensions and
    the multi-point suspensions.
    """
    cats = list(cats)
    n = len(cats) + 1
    homs = {}
    for a in range(n):
        for b in range(a, n):
            homs[(a, b)] = product(cats[a:b])
    hc = {}
    for a in range(n):
        for b in range(a, n):
            for c in range(b, n):
                P, Q, R = homs[(a, b)], homs[(b, c)], homs[(a, c)]
                on_obj = [[R.obj_index[x + y] for y in Q.objects] for x in P.objects]
                on_mor = [[R.mor_index[x + y] for y in Q.labels] for x in P.labels]
                hc[(a, b, c)] = (on_obj, on_mor)
    id1 = [0] * n
    return Fin2Category(range(n), homs, id1, hc, name=name)


def theta(i, js):
    js = list(js)
    if len(js) != i:
        raise ValueError(f"theta({i}, {js}): the list must have length {i}")
    if any(j < 0 for j in js):
        raise ValueError("theta entries must be >= 0")
    return chain([ordinal(j) for j in js], name=f"[{i}|{','.join(map(str, js))}]")


def sigma_i(i, C):
    if i < 0:
        raise ValueError("sigma_i needs i >= 0")
    return chain([C] * i, name=f"S{i}({C.name})")


def sigma(C):
    return chain([C], name=f"S({C.name})")


def _locally(C, hom_builder, name):
    """One object per object of C, hom(a, b) built from the morphisms C(a, b)."""
    n = C.n_obj
    homs, pos = {}, {}
    for a in range(n):
        for b in range(n):
            ms = C.between(a, b)
            if ms:
                homs[(a, b)] = hom_builder([C.labels[m] for m in ms])
                for i, m in enumerate(ms):
                    pos[m] = i
    hc = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                P, Q, R = homs.get((a, b)), homs.get((b, c)), homs.get((a, c))
                if P is None or Q is None:
                    continue
                mp, mq = C.between(a, b), C.between(b, c)
                on_obj = [[pos[C._comp[f][g]] for g in mq] for f in mp]
                on_mor = [[R.identity[on_obj[x][y]] for y in range(len(mq))]
                          for x in range(len(mp))]
                if P.n_mor != P.n_obj or Q.n_mor != Q.n_obj:
                    # chaotic homs: morphism (x -> x') indexed x * r + x'
                    rp, rq, rr = len(mp), len(mq), R.n_obj
                    on_mor = [[on_obj[u // rp][v // rq] * rr + on_obj[u % rp][v % rq]
                               for v in range(Q.n_mor)] for u in range(P.n_mor)]
                hc[(a, b, c)] = (on_obj, on_mor)
    id1 = [pos[C.identity[a]] for a in range(n)]
    return Fin2Category(C.objects, homs, id1, hc, name=name)


def discrete(C):
    """C regarded as a locally discrete 2-category."""
    return _locally(C, discrete_category, f"disc({C.name})")


def ch_star(C):
    """Every hom-set of C replaced by the chaotic category on it."""
    return _locally(C, lambda objs: chaotic(len(objs) - 1, objects=objs),
                    f"ch*({C.name})")


def coproduct2(A, B):
    n = A.n
    objs = [(0, x) for x in A.objects] + [(1, y) for y in B.objects]
    homs, hc = {}, {}
    for X, off in ((A, 0), (B, n)):
        for a in range(X.n):
            for b in range(X.n):
                C = X.hom(a, b)
                if C.n_obj:
                    homs[(a + off, b + off)] = C
        for a in range(X.n):
            for b in range(X.n):
                for c in range(X.n):
                    if X.hom(a, b).n_obj and X.hom(b, c).n_obj:
                        hc[(a + off, b + off, c + off)] = X.hcomp_table(a, b, c)
    return Fin2Category(objs, homs, list(A.id1) + list(B.id1), hc,
                        name=f"{A.name}+{B.name}")


def point():
    return theta(0, [])


def walking_2cell():
    return sigma(ordinal(1))


def walking_2iso():
    return sigma(chaotic(1))


def construct_two_category(kind, *params):
    """Dispatch for the named constructions of this module."""
    table = {
        "discrete": discrete, "theta": theta, "sigma": sigma, "sigma_i": sigma_i,
        "ch_star": ch_star, "coproduct": coproduct2,
        "walking_2cell": walking_2cell, "walking_2iso": walking_2iso,
        "point": point,
    }
    if kind not in table:
        raise ValueError(f"unknown 2-category kind {kind!r}")
    return table[kind](*params)


def ob_star(A):
    """The underlying category of A."""
    cells = [f for f in A.cells1()]
    index = {f: i for i, f in enumerate(cells)}
    mors = [(f, f[0], f[1]) for f in cells]
    ident = [index[A.ident1(a)] for a in range(A.n)]
    return FinCategory.from_rule(A.objects, mors, ident,
                                 lambda f, g: index[A.comp1(cells[f], cells[g])],
                                 name=f"Ob({A.name})")


def components(C):
    """Connected components of a category as a list ``label[object]``."""
    parent = list(range(C.n_obj))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in range(C.n_mor):
        ra, rb = find(C.src[m]), find(C.tgt[m])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(x) for x in range(C.n_obj)})
    rank = {r: i for i, r in enumerate(roots)}
    return [rank[find(x)] for x in range(C.n_obj)]


def pi0_star(A):
    """The category with the objects of A and connected components of homs."""
    comps = {(a, b): components(A.hom(a, b)) for a in range(A.n) for b in range(A.n)}
    mors, rep = [], []
    for a in range(A.n):
        for b in range(A.n):
            cl = comps[(a, b)]
            seen = {}
            for i, c in enumerate(cl):
                if c not in seen:
                    seen[c] = i
            for c in sorted(seen):
                mors.append(((a, b, c), a, b))
                rep.append((a, b, seen[c]))
    index = {m[0]: i for i, m in enumerate(mors)}
    ident = [index[(a, a, comps[(a, a)][A.id1[a]])] for a in range(A.n)]

    def rule(f, g):
        h = A.comp1(rep[f], rep[g])
        return index[(h[0], h[1], comps[(h[0], h[1])][h[2]])]

    return FinCategory.from_rule(A.objects, mors, ident, rule,
                                 name=f"pi0({A.name})")


# ---------------------------------------------------------------------------
# validation


def _get(table, i, j):
    try:
        if i < 0 or j < 0:
            return None
        v = table[i][j]
    except (IndexError, TypeError):
        return None
    return v


def validate_two_category(D):
    """Every violated 2-category law of ``D`` with a witness tuple."""
    out = []
    n = D.n
    homs = {(a, b): D.hom(a, b) for a in range(n) for b in range(n)}
    for (a, b), C in homs.items():
        out.extend(category_violations(C, where=("hom", a, b)))
    if out:
        return out
    for a in range(n):
        if D.id1 is None or not (0 <= D.id1[a] < homs[(a, a)].n_obj):
            out.append(Violation("identity-1-cell", (a,)))
    if out:
        return out
    tables = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                P, Q, R = homs[(a, b)], homs[(b, c)], homs[(a, c)]
                if not (P.n_obj and Q.n_obj):
                    continue
                to, tm = D.hcomp_table(a, b, c)
                bad = False
                for x in range(P.n_obj):
                    for y in range(Q.n_obj):
                        v = _get(to, x, y)
                        if v is None or not (0 <= v < R.n_obj):
                            out.append(Violation("hcomp-1-range", ((a, b, x), (b, c, y))))
                            bad = True
                for x in range(P.n_mor):
                    for y in range(Q.n_mor):
                        v = _get(tm, x, y)
                        if v is None or not (0 <= v < R.n_mor):
                            out.append(Violation("hcomp-2-range", ((a, b, x), (b, c, y))))
                            bad = True
                if not bad:
                    tables[(a, b, c)] = (to, tm)
    if out:
        return out
    # each hcomp table is a functor hom(a,b) x hom(b,c) -> hom(a,c)
    for (a, b, c), (to, tm) in tables.items():
        P, Q, R = homs[(a, b)], homs[(b, c)], homs[(a, c)]
        for x in range(P.n_mor):
            for y in range(Q.n_mor):
                h = tm[x][y]
                if (R.src[h] != to[P.src[x]][Q.src[y]]
                        or R.tgt[h] != to[P.tgt[x]][Q.tgt[y]]):
                    out.append(Violation("hcomp-endpoints", ((a, b, x), (b, c, y))))
        for x in range(P.n_obj):
            for y in range(Q.n_obj):
                if tm[P.identity[x]][Q.identity[y]] != R.identity[to[x][y]]:
                    out.append(Violation("hcomp-identity", ((a, b, x), (b, c, y))))
        for x in range(P.n_mor):
            for x2 in range(P.n_mor):
                if P.src[x2] != P.tgt[x]:
                    continue
                xx = P._comp[x][x2]
                for y in range(Q.n_mor):
                    for y2 in range(Q.n_mor):
                        if Q.src[y2] != Q.tgt[y]:
                            continue
                        lhs = tm[xx][Q._comp[y][y2]]
                        rhs = R._comp[tm[x][y]][tm[x2][y2]]
                        if lhs != rhs:
                            out.append(Violation("interchange",
                                                 ((a, b, x), (a, b, x2), (b, c, y), (b, c, y2))))
    for a in range(n):
        for b in range(n):
            C = homs[(a, b)]
            if not C.n_obj:
                continue
            ia, ib = D.id1[a], D.id1[b]
            ta, tb = tables[(a, a, b)], tables[(a, b, b)]
            for x in range(C.n_obj):
                if ta[0][ia][x] != x or tb[0][x][ib] != x:
                    out.append(Violation("unit-1", ((a, b, x),)))
            ja = homs[(a, a)].identity[ia]
            jb = homs[(b, b)].identity[ib]
            for m in range(C.n_mor):
                if ta[1][ja][m] != m or tb[1][m][jb] != m:
                    out.append(Violation("unit-2", ((a, b, m),)))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if (a, b, c) not in tables or (b, c, d) not in tables:
                        continue
                    abc, acd = tables[(a, b, c)], tables[(a, c, d)]
                    bcd, abd = tables[(b, c, d)], tables[(a, b, d)]
                    P, Q, R = homs[(a, b)], homs[(b, c)], homs[(c, d)]
                    for x in range(P.n_obj):
                        for y in range(Q.n_obj):
                            for z in range(R.n_obj):
                                if acd[0][abc[0][x][y]][z] != abd[0][x][bcd[0][y][z]]:
                                    out.append(Violation(
                                        "associativity-1", ((a, b, x), (b, c, y), (c, d, z))))
                    for x in range(P.n_mor):
                        for y in range(Q.n_mor):
                            for z in range(R.n_mor):
                                if acd[1][abc[1][x][y]][z] != abd[1][x][bcd[1][y][z]]:
                                    out.append(Violation(
                                        "associativity-2", ((a, b, x), (b, c, y), (c, d, z))))
    return out


# ---------------------------------------------------------------------------
# functors and 2-functors


class Functor:
    """A functor between FinCategories given by object and morphism tables."""

    def __init__(self, source, target, obj, mor):
        self.source, self.target = source, target
        self.obj, self.mor = tuple(obj), tuple(mor)

    def key(self):
        return (self.obj, self.mor)

    def __eq__(self, other):
        return isinstance(other, Functor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Functor(obj={self.obj}, mor={self.mor})"

    def then(self, G):
        """This functor followed by ``G``."""
        return Functor(self.source, G.target, [G.obj[x] for x in self.obj],
                       [G.mor[m] for m in self.mor])


def functor_violations(F):
    C, D = F.source, F.target
    out = []
    for m in range(C.n_mor):
        fm = F.mor[m]
        if D.src[fm] != F.obj[C.src[m]] or D.tgt[fm] != F.obj[C.tgt[m]]:
            out.append(Violation("functor-endpoints", (m,)))
    for x in range(C.n_obj):
        if F.mor[C.identity[x]] != D.identity[F.obj[x]]:
            out.append(Violation("functor-identity", (x,)))
    for f in range(C.n_mor):
        for g in range(C.n_mor):
            h = C._comp[f][g]
            if h >= 0 and D._comp[F.mor[f]][F.mor[g]] != F.mor[h]:
                out.append(Violation("functor-composition", (f, g)))
    return out


def enumerate_functors(C, D):
    """All functors C -> D in canonical order."""
    p = Problem()
    obj_pos = {}
    mor_pos = {}
    # interleave: object x, then the morphisms among objects <= x
    for x in range(C.n_obj):
        obj_pos[x] = p.add(("o", x), lambda vals: range(D.n_obj))
        for m in range(C.n_mor):
            if C.is_identity(m) or m in mor_pos:
                continue
            if max(C.src[m], C.tgt[m]) == x:
                s, t = C.src[m], C.tgt[m]

                def dom(vals, s=s, t=t):
                    return D.between(vals[obj_pos[s]], vals[obj_pos[t]])
                mor_pos[m] = p.add(("m", m), dom)

    def img(vals, m):
        if C.is_identity(m):
            return D.identity[vals[obj_pos[C.src[m]]]]
        return vals[mor_pos[m]]

    for f in range(C.n_mor):
        for g in range(C.n_mor):
            h = C._comp[f][g]
            if h < 0 or C.is_identity(f) or C.is_identity(g):
                continue
            deps = [mor_pos[f], mor_pos[g], mor_pos.get(h),
                    obj_pos[C.src[h]], obj_pos[C.tgt[h]]]
            p.require(deps, lambda vals, f=f, g=g, h=h:
                      D._comp[img(vals, f)][img(vals, g)] == img(vals, h))
    out = []
    for vals in p.solutions():
        obj = [vals[obj_pos[x]] for x in range(C.n_obj)]
        mor = [img(vals, m) for m in range(C.n_mor)]
        out.append(Functor(C, D, obj, mor))
    return out


class TwoFunctor:
    """A 2-functor: object map plus one functor table per hom.

    ``one[(a, b)]`` lists the image indices (in ``hom(F a, F b)``) of the
    objects of ``hom(a, b)``; ``two[(a, b)]`` does the same for morphisms.
    """

    def __init__(self, source, target, obj, one, two):
        self.source, self.target = source, target
        self.obj = tuple(obj)
        self.one = {k: tuple(v) for k, v in one.items()}
        self.two = {k: tuple(v) for k, v in two.items()}
        self._key = (self.obj, tuple(sorted(self.one.items())),
                     tuple(sorted(self.two.items())))

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, TwoFunctor) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"TwoFunctor(obj={self.obj})"

    def on1(self, f):
        a, b, i = f
        return (self.obj[a], self.obj[b], self.one[(a, b)][i])

    def on2(self, al):
        a, b, m = al
        return (self.obj[a], self.obj[b], self.two[(a, b)][m])

    def then(self, G):
        """This 2-functor followed by ``G``."""
        A = self.source
        one, two = {}, {}
        for (a, b) in self.one:
            one[(a, b)] = [G.on1(self.on1((a, b, i)))[2] for i in range(A.hom(a, b).n_obj)]
            two[(a, b)] = [G.on2(self.on2((a, b, m)))[2] for m in range(A.hom(a, b).n_mor)]
        return TwoFunctor(A, G.target, [G.obj[x] for x in self.obj], one, two)


def identity_two_functor(A):
    pairs = A.nonempty_pairs()
    return TwoFunctor(A, A, range(A.n),
                      {p: range(A.hom(*p).n_obj) for p in pairs},
                      {p: range(A.hom(*p).n_mor) for p in pairs})


def two_functor_from_cells(A, B, obj, on1, on2):
    """Build from callables on global cells."""
    pairs = A.nonempty_pairs()
    one = {p: [on1(p + (i,))[2] for i in range(A.hom(*p).n_obj)] for p in pairs}
    two = {p: [on2(p + (m,))[2] for m in range(A.hom(*p).n_mor)] for p in pairs}
    return TwoFunctor(A, B, obj, one, two)


def two_functor_violations(F):
    A, B = F.source, F.target
    out = []
    for a, b in A.nonempty_pairs():
        C = A.hom(a, b)
        T = B.hom(F.obj[a], F.obj[b])
        for i in range(C.n_obj):
            if not (0 <= F.one[(a, b)][i] < T.n_obj):
                out.append(Violation("2functor-range", ((a, b, i),)))
        for m in range(C.n_mor):
            v = F.two[(a, b)][m]
            if not (0 <= v < T.n_mor):
                out.append(Violation("2functor-range", ((a, b, m),)))
            elif (T.src[v] != F.one[(a, b)][C.src[m]]
                  or T.tgt[v] != F.one[(a, b)][C.tgt[m]]):
                out.append(Violation("2functor-endpoints", ((a, b, m),)))
    if out:
        return out
    for a in range(A.n):
        if F.on1(A.ident1(a)) != B.ident1(F.obj[a]):
            out.append(Violation("2functor-identity-1", (a,)))
    for a, b in A.nonempty_pairs():
        C = A.hom(a, b)
        for i in range(C.n_obj):
            if F.on2(A.ident2((a, b, i))) != B.ident2(F.on1((a, b, i))):
                out.append(Violation("2functor-identity-2", ((a, b, i),)))
        for m in range(C.n_mor):
            for k in range(C.n_mor):
                h = C._comp[m][k]
                if h >= 0 and B.vcomp(F.on2((a, b, m)), F.on2((a, b, k))) != F.on2((a, b, h)):
                    out.append(Violation("2functor-vertical", ((a, b, m), (a, b, k))))
    for f in A.cells1():
        for g in A.cells1():
            if f[1] == g[0] and B.comp1(F.on1(f), F.on1(g)) != F.on1(A.comp1(f, g)):
                out.append(Violation("2functor-composition-1", (f, g)))
    for al in A.cells2():
        for be in A.cells2():
            if al[1] == be[0] and B.comp2h(F.on2(al), F.on2(be)) != F.on2(A.comp2h(al, be)):
                out.append(Violation("2functor-composition-2", (al, be)))
    return out


def _cell_order(A):
    """Interleaved variable order: object k, then the 1-cells and 2-cells of
    homs whose larger endpoint is k, shorter spans first."""
    groups = []
    for k in range(A.n):
        pairs = [(a, b) for a in range(k + 1) for b in range(k + 1)
                 if max(a, b) == k and A.hom(a, b).n_obj]
        pairs.sort(key=lambda p: (abs(p[1] - p[0]), p))
        groups.append((k, pairs))
    return groups


class _CellMap:
    """Shared bookkeeping for problems whose unknowns are cell images."""

    def __init__(self, A, B, problem):
        self.A, self.B, self.p = A, B, problem
        self.obj_pos, self.pos1, self.pos2 = {}, {}, {}

    def img0(self, vals, x):
        return vals[self.obj_pos[x]]

    def img1(self, vals, f):
        if self.A.is_identity1(f):
            return self.B.ident1(vals[self.obj_pos[f[0]]])
        return vals[self.pos1[f]]

    def img2(self, vals, al):
        if self.A.is_identity2(al):
            return self.B.ident2(self.img1(vals, self.A.src2(al)))
        return vals[self.pos2[al]]

    def deps1(self, f):
        return [self.obj_pos[f[0]], self.obj_pos[f[1]], self.pos1.get(f)]

    def deps2(self, al):
        A = self.A
        return (self.deps1(A.src2(al)) + self.deps1(A.tgt2(al)) + [self.pos2.get(al)])


def _factor_pairs_1(A):
    """For each 1-cell, its factorizations into two non-identity 1-cells."""
    out = {}
    for f in A.cells1():
        for g in A.cells1():
            if f[1] != g[0] or A.is_identity1(f) or A.is_identity1(g):
                continue
            out.setdefault(A.comp1(f, g), []).append((f, g))
    return out


def enumerate_two_functors(A, B):
    """All strict 2-functors A -> B in canonical order."""
    p = Problem()
    cm = _CellMap(A, B, p)
    fac1 = _factor_pairs_1(A)
    fac2v, fac2h = {}, {}
    for (a, b) in A.nonempty_pairs():
        C = A.hom(a, b)
        for m in range(C.n_mor):
            for k in range(C.n_mor):
                h = C._comp[m][k]
                if h >= 0 and not C.is_identity(m) and not C.is_identity(k):
                    fac2v.setdefault((a, b, h), []).append(((a, b, m), (a, b, k)))
    for al in A.cells2():
        for be in A.cells2():
            if al[1] != be[0]:
                continue
            if A.is_identity2(al) and A.is_identity2(be):
                continue
            if A.is_identity2(al) and A.is_identity1(A.src2(al)):
                continue
            if A.is_identity2(be) and A.is_identity1(A.src2(be)):
                continue
            fac2h.setdefault(A.comp2h(al, be), []).append((al, be))

    for k, pairs in _cell_order(A):
        cm.obj_pos[k] = p.add(("o", k), lambda vals: range(B.n))
        for (a, b) in pairs:
            for i in range(A.hom(a, b).n_obj):
                f = (a, b, i)
                if A.is_identity1(f):
                    continue
                forced = next((fg for fg in fac1.get(f, ()) if fg[0] in cm.pos1
                               and fg[1] in cm.pos1), None)

                def dom(vals, a=a, b=b, forced=forced):
                    if forced is not None:
                        return (B.comp1(cm.img1(vals, forced[0]), cm.img1(vals, forced[1])),)
                    x, y = cm.img0(vals, a), cm.img0(vals, b)
                    return tuple((x, y, j) for j in range(B.hom(x, y).n_obj))
                cm.pos1[f] = p.add(("1", f), dom)
        for (a, b) in pairs:
            C = A.hom(a, b)
            for m in range(C.n_mor):
                al = (a, b, m)
                if C.is_identity(m):
                    continue
                ok = lambda c: A.is_identity2(c) or c in cm.pos2  # noqa: E731
                fv = next((q for q in fac2v.get(al, ()) if ok(q[0]) and ok(q[1])), None)
                fh = next((q for q in fac2h.get(al, ()) if ok(q[0]) and ok(q[1])), None)
                s, t = A.src2(al), A.tgt2(al)

                def dom(vals, s=s, t=t, fv=fv, fh=fh):
                    if fv is not None:
                        return (B.vcomp(cm.img2(vals, fv[0]), cm.img2(vals, fv[1])),)
                    if fh is not None:
                        return (B.comp2h(cm.img2(vals, fh[0]), cm.img2(vals, fh[1])),)
                    return B.twocells_between(cm.img1(vals, s), cm.img1(vals, t))
                cm.pos2[al] = p.add(("2", al), dom)

    # constraints
    for h, fgs in fac1.items():
        for f, g in fgs:
            p.require(cm.deps1(f) + cm.deps1(g) + cm.deps1(h),
                      lambda vals, f=f, g=g, h=h:
                      B.comp1(cm.img1(vals, f), cm.img1(vals, g)) == cm.img1(vals, h))
    for h, pairs in fac2v.items():
        for al, be in pairs:
            p.require(cm.deps2(al) + cm.deps2(be) + cm.deps2(h),
                      lambda vals, al=al, be=be, h=h:
                      B.vcomp(cm.img2(vals, al), cm.img2(vals, be)) == cm.img2(vals, h))
    for h, pairs in fac2h.items():
        for al, be in pairs:
            p.require(cm.deps2(al) + cm.deps2(be) + cm.deps2(h),
                      lambda vals, al=al, be=be, h=h:
                      B.comp2h(cm.img2(vals, al), cm.img2(vals, be)) == cm.img2(vals, h))

    out = []
    for vals in p.solutions():
        out.append(two_functor_from_cells(
            A, B, [vals[cm.obj_pos[x]] for x in range(A.n)],
            lambda f: cm.img1(vals, f), lambda al: cm.img2(vals, al)))
    return out


# ---------------------------------------------------------------------------
# cells


def is_gaunt(D):
    c = classify_cells(D, completions=False)
    return (all(D.is_identity2(al) for al in c["two_isomorphisms"])
            and all(D.is_identity1(f) for f in c["one_equivalences"]))


def adjoint_completions(D, f):
    """All ``(g, eta, eps)`` making f part of an adjoint equivalence.

    ``eta: id => f then g`` and ``eps: g then f => id`` are invertible and
    both triangle identities hold.
    """
    a, b, _ = f
    out = []
    for j in range(D.hom(b, a).n_obj):
        g = (b, a, j)
        fg, gf = D.comp1(f, g), D.comp1(g, f)
        for eta in D.twocells_between(D.ident1(a), fg):
            if not D.is_iso2(eta):
                continue
            for eps in D.twocells_between(gf, D.ident1(b)):
                if not D.is_iso2(eps):
                    continue
                # f => f g f => f
                t1 = D.vcomp(D.whisker(eta, post=f), D.whisker(eps, pre=f))
                # g => g f g => g
                t2 = D.vcomp(D.whisker(eta, pre=g), D.whisker(eps, post=g))
                if D.is_identity2(t1) and D.is_identity2(t2):
                    out.append((g, eta, eps))
    return out


def is_equivalence(D, f):
    a, b, _ = f
    for j in range(D.hom(b, a).n_obj):
        g = (b, a, j)
        if (any(D.is_iso2(x) for x in D.twocells_between(D.comp1(f, g), D.ident1(a)))
                and any(D.is_iso2(x) for x in D.twocells_between(D.comp1(g, f), D.ident1(b)))):
            return True
    return False


def classify_cells(D, completions=True):
    out = {
        "two_isomorphisms": [al for al in D.cells2() if D.is_iso2(al)],
        "one_equivalences": [f for f in D.cells1() if is_equivalence(D, f)],
    }
    if completions:
        out["adjoint_completions"] = {f: adjoint_completions(D, f) for f in D.cells1()}
    return out


def triangles(D):
    """All ``(f, g, h, phi)`` with ``phi: h => f then g`` a 2-isomorphism."""
    out = []
    for f in D.cells1():
        for g in D.cells1():
            if f[1] != g[0]:
                continue
            fg = D.comp1(f, g)
            a, c = f[0], g[1]
            for i in range(D.hom(a, c).n_obj):
                h = (a, c, i)
                for phi in D.twocells_between(h, fg):
                    if D.is_iso2(phi):
                        out.append((f, g, h, phi))
    return out


def triangle_face(D, t, i):
    f, g, h, _ = t
    return (g, h, f)[i]


def triangle_degeneracy(D, f, i):
    a, b, _ = f
    if i == 0:
        return (D.ident1(a), f, f, D.ident2(f))
    return (f, D.ident1(b), f, D.ident2(f))


def whisker_compose(D, pasting):
    """Vertical composite of whiskered 2-cells.

    ``pasting`` is a list of stages ``(pre, alpha, post)`` where ``pre`` and
    ``post`` are 1-cells or ``None``.
    """
    result = None
    for stage in pasting:
        pre, al, post = stage
        if pre is not None and pre[1] != al[0]:
            raise CompositionError(f"cannot whisker {al} by {pre} on the left")
        if post is not None and al[1] != post[0]:
            raise CompositionError(f"cannot whisker {al} by {post} on the right")
        cell = D.whisker(al, pre=pre, post=post)
        if result is None:
            result = cell
        else:
            if D.tgt2(result) != D.src2(cell):
                raise CompositionError(f"stage {stage} does not follow {result}")
            result = D.vcomp(result, cell)
    if result is None:
        raise CompositionError("empty pasting")
    return result


# ---------------------------------------------------------------------------
# free presentations


class FreePresentation:
    """A 2-category whose underlying category is free on ``generators``."""

    def __init__(self, A, generators):
        self.A = A
        self.generators = tuple(generators)
        gens = set(self.generators)
        if any(A.is_identity1(g) for g in gens):
            raise ValueError("generators must be non-identity 1-cells")
        words = {}
        for a in range(A.n):
            # depth-first over generator paths; a cycle means the category
            # is not finite and free at the same time
            stack = [(a, (), A.ident1(a))]
            while stack:
                x, word, cell = stack.pop()
                if len(word) > len(A.cells1()):
                    raise ValueError("underlying category is not free on the generators")
                words.setdefault(cell, []).append(word)
                for g in self.generators:
                    if g[0] == x:
                        stack.append((g[1], word + (g,), A.comp1(cell, g)))
        for f in A.cells1():
            if len(words.get(f, ())) != 1:
                raise ValueError(f"1-cell {f} does not factor uniquely through the generators")
        self.word = {f: w[0] for f, w in words.items()}


def theta_presentation(i, js):
    A = theta(i, js)
    gens = [(s, s + 1, x) for s in range(i) for x in range(A.hom(s, s + 1).n_obj)]
    return FreePresentation(A, gens)
