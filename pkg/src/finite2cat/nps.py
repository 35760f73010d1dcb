"""Normal pseudofunctors between finite 2-categories.

A normal pseudofunctor F: A -> B preserves identities strictly and composition
up to a coherent 2-isomorphism.  The compositor at a composable pair
``(f, g)`` (f first) is stored as a triangle of B,

    (F f, F g, F(f then g), phi)   with   phi: F(f then g) => F f then F g,

so that its boundary is visible in the data itself.

Precomposing with a strict 2-functor G keeps all six axioms: every equation
for F o G is an instance of the same equation for F at the images under G,
because G preserves identities and both compositions on the nose.
"""
from ._search import Problem
from .core2cat import (
    CompositionError, TwoFunctor, Violation, _CellMap, _cell_order,
    two_functor_from_cells,
)


class NormalPseudofunctor:
    """Object, 1-cell and 2-cell tables plus the compositor table."""

    def __init__(self, source, target, obj, one, two, comp):
        self.source, self.target = source, target
        self.obj = tuple(obj)
        self.one = dict(one)
        self.two = dict(two)
        self.comp = dict(comp)
        self._key = (self.obj, tuple(sorted(self.one.items())),
                     tuple(sorted(self.two.items())), tuple(sorted(self.comp.items())))

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, NormalPseudofunctor) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"NormalPseudofunctor(obj={self.obj})"

    def compositor(self, f, g):
        """The 2-cell ``F(f then g) => F f then F g``."""
        return self.comp[(f, g)][3]

    def is_strict(self):
        B = self.target
        return all(B.is_identity2(t[3]) for t in self.comp.values())

    def strict_part(self):
        """The underlying 2-functor (meaningful when ``is_strict()``)."""
        return two_functor_from_cells(self.source, self.target, self.obj,
                                      self.one.__getitem__, self.two.__getitem__)


def _composable_pairs(A):
    return [(f, g) for f in A.cells1() for g in A.cells1() if f[1] == g[0]]


def from_two_functor(G):
    """A strict 2-functor as a normal pseudofunctor with identity compositors."""
    A, B = G.source, G.target
    one = {f: G.on1(f) for f in A.cells1()}
    two = {al: G.on2(al) for al in A.cells2()}
    comp = {}
    for f, g in _composable_pairs(A):
        h = one[A.comp1(f, g)]
        comp[(f, g)] = (one[f], one[g], h, B.ident2(h))
    return NormalPseudofunctor(A, B, G.obj, one, two, comp)


def precompose(F, G):
    """``G`` (strict, C -> A) followed by the normal pseudofunctor ``F``."""
    C = G.source
    one = {f: F.one[G.on1(f)] for f in C.cells1()}
    two = {al: F.two[G.on2(al)] for al in C.cells2()}
    comp = {(f, g): F.comp[(G.on1(f), G.on1(g))] for f, g in _composable_pairs(C)}
    return NormalPseudofunctor(C, F.target, [F.obj[x] for x in G.obj], one, two, comp)


# ---------------------------------------------------------------------------
# axioms


def validate_nps(F):
    """Check axioms (a)-(f); returns ``{axiom: [Violation, ...]}``."""
    A, B = F.source, F.target
    rep = {ax: [] for ax in "abcdef"}

    def bad(ax, *w):
        rep[ax].append(Violation(ax, w))

    # (a) sources, targets and identities
    for f in A.cells1():
        v = F.one.get(f)
        if v is None or v[:2] != (F.obj[f[0]], F.obj[f[1]]) or not (
                0 <= v[2] < B.hom(v[0], v[1]).n_obj):
            bad("a", "1-cell", f)
    for a in range(A.n):
        if F.one.get(A.ident1(a)) != B.ident1(F.obj[a]):
            bad("a", "identity-1-cell", a)
    if rep["a"]:
        return rep
    for al in A.cells2():
        v = F.two.get(al)
        if (v is None or v[:2] != (F.obj[al[0]], F.obj[al[1]])
                or not (0 <= v[2] < B.hom(v[0], v[1]).n_mor)
                or B.src2(v) != F.one[A.src2(al)] or B.tgt2(v) != F.one[A.tgt2(al)]):
            bad("a", "2-cell", al)
        elif A.is_identity2(al) and not B.is_identity2(v):
            bad("a", "identity-2-cell", al)
    if rep["a"]:
        return rep

    # (b) boundary of the compositor
    for f, g in _composable_pairs(A):
        t = F.comp.get((f, g))
        try:
            ok = (t is not None and t[0] == F.one[f] and t[1] == F.one[g]
                  and t[2] == F.one[A.comp1(f, g)]
                  and B.src2(t[3]) == t[2]
                  and B.tgt2(t[3]) == B.comp1(t[0], t[1])
                  and B.is_iso2(t[3]))
        except (CompositionError, IndexError, TypeError, KeyError):
            ok = False
        if not ok:
            bad("b", f, g)
    if rep["b"]:
        return rep

    # (c) normality
    for f in A.cells1():
        for t in (F.comp[(A.ident1(f[0]), f)], F.comp[(f, A.ident1(f[1]))]):
            if not B.is_identity2(t[3]):
                bad("c", f)

    # (d) vertical functoriality
    for a, b in A.nonempty_pairs():
        C = A.hom(a, b)
        for m in range(C.n_mor):
            for k in range(C.n_mor):
                h = C._comp[m][k]
                if h >= 0 and B.vcomp(F.two[(a, b, m)], F.two[(a, b, k)]) != F.two[(a, b, h)]:
                    bad("d", (a, b, m), (a, b, k))

    # (e) 2-naturality of the compositor
    for al in A.cells2():
        for be in A.cells2():
            if al[1] != be[0]:
                continue
            f, f2 = A.src2(al), A.tgt2(al)
            g, g2 = A.src2(be), A.tgt2(be)
            lhs = B.vcomp(F.compositor(f, g), B.comp2h(F.two[al], F.two[be]))
            rhs = B.vcomp(F.two[A.comp2h(al, be)], F.compositor(f2, g2))
            if lhs != rhs:
                bad("e", al, be)

    # (f) cocycle
    for f, g in _composable_pairs(A):
        fg = A.comp1(f, g)
        for h in A.cells1():
            if h[0] != g[1]:
                continue
            gh = A.comp1(g, h)
            lhs = B.vcomp(F.compositor(fg, h), B.whisker(F.compositor(f, g), post=F.one[h]))
            rhs = B.vcomp(F.compositor(f, gh), B.whisker(F.compositor(g, h), pre=F.one[f]))
            if lhs != rhs:
                bad("f", f, g, h)
    return rep


def is_valid_nps(F):
    return not any(validate_nps(F).values())


# ---------------------------------------------------------------------------
# enumeration


def enumerate_nps(A, B):
    """All normal pseudofunctors A -> B in canonical order."""
    p = Problem()
    cm = _CellMap(A, B, p)
    comp_pos = {}
    pairs_all = _composable_pairs(A)
    nontrivial = [(f, g) for f, g in pairs_all
                  if not A.is_identity1(f) and not A.is_identity1(g)]

    def tri(vals, f, g):
        if A.is_identity1(f) or A.is_identity1(g):
            h = cm.img1(vals, A.comp1(f, g))
            return (cm.img1(vals, f), cm.img1(vals, g), h, B.ident2(h))
        return vals[comp_pos[(f, g)]]

    def phi(vals, f, g):
        return tri(vals, f, g)[3]

    def comp_deps(f, g):
        if A.is_identity1(f) or A.is_identity1(g):
            return cm.deps1(f) + cm.deps1(g)
        return [comp_pos[(f, g)]] + cm.deps1(f) + cm.deps1(g) + cm.deps1(A.comp1(f, g))

    fac2v, fac2h = {}, {}
    for a, b in A.nonempty_pairs():
        C = A.hom(a, b)
        for m in range(C.n_mor):
            for k in range(C.n_mor):
                h = C._comp[m][k]
                if h >= 0 and not C.is_identity(m) and not C.is_identity(k):
                    fac2v.setdefault((a, b, h), []).append(((a, b, m), (a, b, k)))
    for al in A.cells2():
        for be in A.cells2():
            if al[1] != be[0] or (A.is_identity2(al) and A.is_identity2(be)):
                continue
            if any(A.is_identity2(c) and A.is_identity1(A.src2(c)) for c in (al, be)):
                continue
            fac2h.setdefault(A.comp2h(al, be), []).append((al, be))

    fac1 = {}
    for f, g in nontrivial:
        fac1.setdefault(A.comp1(f, g), []).append((f, g))
    placed = set()

    def place_compositors():
        for f, g in nontrivial:
            if (f, g) in placed:
                continue
            h = A.comp1(f, g)
            if all(A.is_identity1(c) or c in cm.pos1 for c in (f, g, h)):
                placed.add((f, g))

                def dom(vals, f=f, g=g, h=h):
                    Ff, Fg, Fh = cm.img1(vals, f), cm.img1(vals, g), cm.img1(vals, h)
                    return tuple((Ff, Fg, Fh, x)
                                 for x in B.twocells_between(Fh, B.comp1(Ff, Fg))
                                 if B.is_iso2(x))
                comp_pos[(f, g)] = p.add(("c", f, g), dom)

    for k, pairs in _cell_order(A):
        cm.obj_pos[k] = p.add(("o", k), lambda vals: range(B.n))
        place_compositors()
        for (a, b) in pairs:
            for i in range(A.hom(a, b).n_obj):
                f = (a, b, i)
                if A.is_identity1(f):
                    continue
                known = next((q for q in fac1.get(f, ())
                              if all(A.is_identity1(c) or c in cm.pos1 for c in q)), None)

                def dom(vals, a=a, b=b, known=known):
                    x, y = cm.img0(vals, a), cm.img0(vals, b)
                    cands = tuple((x, y, j) for j in range(B.hom(x, y).n_obj))
                    if known is None:
                        return cands
                    # the image must be 2-isomorphic to the composite of images
                    target = B.comp1(cm.img1(vals, known[0]), cm.img1(vals, known[1]))
                    return tuple(c for c in cands
                                 if any(B.is_iso2(z) for z in B.twocells_between(c, target)))
                cm.pos1[f] = p.add(("1", f), dom)
                place_compositors()
        for (a, b) in pairs:
            C = A.hom(a, b)
            for m in range(C.n_mor):
                if C.is_identity(m):
                    continue
                al = (a, b, m)
                s, t = A.src2(al), A.tgt2(al)
                ok = lambda c: A.is_identity2(c) or c in cm.pos2  # noqa: E731
                fv = next((q for q in fac2v.get(al, ()) if ok(q[0]) and ok(q[1])), None)
                fh = next((q for q in fac2h.get(al, ()) if ok(q[0]) and ok(q[1])), None)

                def dom(vals, s=s, t=t, fv=fv, fh=fh):
                    if fv is not None:
                        return (B.vcomp(cm.img2(vals, fv[0]), cm.img2(vals, fv[1])),)
                    if fh is not None:
                        # axiom (e) solved for F(alpha * beta)
                        x, y = fh
                        mid = B.comp2h(cm.img2(vals, x), cm.img2(vals, y))
                        top = phi(vals, A.src2(x), A.src2(y))
                        bot = B.inverse2(phi(vals, A.tgt2(x), A.tgt2(y)))
                        return (B.vcomp(B.vcomp(top, mid), bot),)
                    return B.twocells_between(cm.img1(vals, s), cm.img1(vals, t))
                cm.pos2[al] = p.add(("2", al), dom)

    # (d)
    for a, b in A.nonempty_pairs():
        C = A.hom(a, b)
        for m in range(C.n_mor):
            for k in range(C.n_mor):
                h = C._comp[m][k]
                if h < 0 or C.is_identity(m) or C.is_identity(k):
                    continue
                al, be, ga = (a, b, m), (a, b, k), (a, b, h)
                p.require(cm.deps2(al) + cm.deps2(be) + cm.deps2(ga),
                          lambda vals, al=al, be=be, ga=ga:
                          B.vcomp(cm.img2(vals, al), cm.img2(vals, be)) == cm.img2(vals, ga))
    # (e)
    for al in A.cells2():
        for be in A.cells2():
            if al[1] != be[0] or (A.is_identity2(al) and A.is_identity2(be)):
                continue
            f, f2, g, g2 = A.src2(al), A.tgt2(al), A.src2(be), A.tgt2(be)
            ab = A.comp2h(al, be)
            deps = (cm.deps2(al) + cm.deps2(be) + cm.deps2(ab)
                    + comp_deps(f, g) + comp_deps(f2, g2))

            def check(vals, al=al, be=be, ab=ab, f=f, g=g, f2=f2, g2=g2):
                lhs = B.vcomp(phi(vals, f, g), B.comp2h(cm.img2(vals, al), cm.img2(vals, be)))
                rhs = B.vcomp(cm.img2(vals, ab), phi(vals, f2, g2))
                return lhs == rhs
            p.require(deps, check)
    # (f), identities excluded since (c) makes those instances trivial
    for f, g in nontrivial:
        fg = A.comp1(f, g)
        for h in A.cells1():
            if h[0] != g[1] or A.is_identity1(h):
                continue
            gh = A.comp1(g, h)
            deps = (comp_deps(fg, h) + comp_deps(f, g) + comp_deps(f, gh)
                    + comp_deps(g, h) + cm.deps1(h))

            def check(vals, f=f, g=g, h=h, fg=fg, gh=gh):
                lhs = B.vcomp(phi(vals, fg, h), B.whisker(phi(vals, f, g), post=cm.img1(vals, h)))
                rhs = B.vcomp(phi(vals, f, gh), B.whisker(phi(vals, g, h), pre=cm.img1(vals, f)))
                return lhs == rhs
            p.require(deps, check)

    out = []
    for vals in p.solutions():
        obj = [vals[cm.obj_pos[x]] for x in range(A.n)]
        one = {f: cm.img1(vals, f) for f in A.cells1()}
        two = {al: cm.img2(vals, al) for al in A.cells2()}
        comp = {(f, g): tri(vals, f, g) for f, g in pairs_all}
        out.append(NormalPseudofunctor(A, B, obj, one, two, comp))
    return out


# ---------------------------------------------------------------------------
# coherence


def extend_compositor(F, chain, obj=None, bracketing="left"):
    """The 2-isomorphism ``F(f_1 then ... then f_k) => F f_1 then ... then F f_k``.

    ``chain`` lists the 1-cells in order of traversal.  For an empty chain
    the object must be given and the result is an identity.
    """
    A, B = F.source, F.target
    chain = list(chain)
    for f, g in zip(chain, chain[1:]):
        if f[1] != g[0]:
            raise CompositionError(f"1-cells {f} and {g} are not composable")
    if not chain:
        if obj is None:
            raise ValueError("an empty chain needs its object")
        return B.ident2(B.ident1(F.obj[obj]))
    if len(chain) == 1:
        return B.ident2(F.one[chain[0]])

    def composite(cells):
        out = cells[0]
        for c in cells[1:]:
            out = A.comp1(out, c)
        return out

    if bracketing == "left":
        head, last = chain[:-1], chain[-1]
        step = F.compositor(composite(head), last)
        rest = extend_compositor(F, head, bracketing="left")
        return B.vcomp(step, B.whisker(rest, post=F.one[last]))
    first, tail = chain[0], chain[1:]
    step = F.compositor(first, composite(tail))
    rest = extend_compositor(F, tail, bracketing="right")
    return B.vcomp(step, B.whisker(rest, pre=F.one[first]))


def pushforward_free(T, G, F):
    """The strict 2-functor T -> B induced by ``G: T -> A`` (strict) and ``F``.

    Generating 1-cells go to ``F(G g)``; a 2-cell ``alpha: s => t`` goes to
    ``F(G alpha)`` conjugated by the extended compositors of the generator
    words of ``s`` and ``t``.
    """
    TA, B = T.A, F.target

    def img1(f):
        word = T.word[f]
        if not word:
            return B.ident1(F.obj[G.obj[f[0]]])
        out = F.one[G.on1(word[0])]
        for g in word[1:]:
            out = B.comp1(out, F.one[G.on1(g)])
        return out

    def ext(f):
        return extend_compositor(F, [G.on1(g) for g in T.word[f]], obj=G.obj[f[0]])

    def img2(al):
        s, t = TA.src2(al), TA.tgt2(al)
        down = B.inverse2(ext(s))
        return B.vcomp(B.vcomp(down, F.two[G.on2(al)]), ext(t))

    return two_functor_from_cells(TA, B, [F.obj[x] for x in G.obj], img1, img2)


__all__ = [
    "NormalPseudofunctor", "from_two_functor", "precompose", "validate_nps",
    "is_valid_nps", "enumerate_nps", "extend_compositor", "pushforward_free",
    "TwoFunctor",
]
