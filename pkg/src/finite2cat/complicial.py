"""Marked and scaled simplicial complexes and lifting problems against nerves.

Every complex needed here is a sub-simplicial set of a standard simplex
``Delta[N]``, so it is stored as its set of non-degenerate simplices (sorted
vertex tuples) with a set of marked ones.  The scaled outer horns also
collapse the edge ``[0, 1]`` to a point, which is recorded as ``collapse``.

A map from a complex into a nerve assigns to each non-degenerate simplex an
element of the matching level, compatible with faces and sending marked
simplices to marked ones.  Maps are searched in lexicographic order so the
reported witness of a failed lift is always the least one.
"""
import itertools

from ._search import Problem
from .nerves import KNOCKOUTS, ScaledNerve, TDeltaNerve

MODES = ("marked", "scaled")


def _faces(s):
    return [s[:r] + s[r + 1:] for r in range(len(s))]


def full_simplex(N):
    return {c for d in range(N + 1) for c in itertools.combinations(range(N + 1), d + 1)}


class MarkedComplex:
    """Non-degenerate simplices of a subcomplex of ``Delta[N]`` plus markings."""

    def __init__(self, N, simplices, marked=(), mode="marked", collapse=None, name=None):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.N = N
        self.simplices = frozenset(tuple(s) for s in simplices)
        self.marked = frozenset(tuple(s) for s in marked)
        self.mode = mode
        self.collapse = collapse
        self.name = name
        problems = self.violations()
        if problems:
            raise ValueError(f"malformed complex {name}: {problems[0]}")

    def violations(self):
        out = []
        for s in self.simplices:
            if list(s) != sorted(set(s)) or not all(0 <= v <= self.N for v in s):
                out.append(("not-a-simplex", s))
            elif len(s) > 1:
                out.extend(("missing-face", s, f) for f in _faces(s) if f not in self.simplices)
        for s in self.marked:
            if s not in self.simplices:
                out.append(("marked-not-present", s))
            elif len(s) < 2:
                out.append(("marked-vertex", s))
            elif self.mode == "scaled" and len(s) != 3:
                out.append(("scaling-not-2-dimensional", s))
        if self.collapse is not None and tuple(self.collapse) not in self.simplices:
            out.append(("collapsed-edge-missing", self.collapse))
        return out

    def ordered(self):
        return sorted(self.simplices, key=lambda s: (len(s), s))

    @property
    def dim(self):
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def __repr__(self):
        return f"<MarkedComplex {self.name}: {len(self.simplices)} simplices, {len(self.marked)} marked>"


EMPTY_COMPLEX = MarkedComplex(-1, (), name="empty")


def standard(N, marked=(), mode="marked", name=None):
    return MarkedComplex(N, full_simplex(N), marked, mode, name=name or f"Delta[{N}]")


def marked_join(X, Y):
    """``X * Y``: simplices are joins of a simplex of X and a simplex of Y
    (either possibly empty), marked when either part is marked."""
    if X.collapse or Y.collapse:
        raise ValueError("joins of collapsed complexes are not supported")
    shift = X.N + 1
    xs = [()] + sorted(X.simplices)
    ys = [()] + sorted(Y.simplices)
    simp, marked = set(), set()
    for s in xs:
        for t in ys:
            if not s and not t:
                continue
            u = s + tuple(v + shift for v in t)
            simp.add(u)
            if s in X.marked or t in Y.marked:
                marked.add(u)
    return MarkedComplex(X.N + Y.N + 1, simp, marked, X.mode,
                         name=f"({X.name})*({Y.name})")


class GeneratorMap:
    """An inclusion of marked complexes with the same ambient simplex."""

    def __init__(self, domain, codomain, name):
        self.domain, self.codomain, self.name = domain, codomain, name
        bad = self.violations()
        if bad:
            raise ValueError(f"{name} is not an inclusion: {bad[0]}")

    def violations(self):
        d, c = self.domain, self.codomain
        out = []
        if d.N != c.N or d.collapse != c.collapse or d.mode != c.mode:
            out.append(("ambient", d.N, c.N))
        out.extend(("simplex", s) for s in d.simplices - c.simplices)
        out.extend(("marking", s) for s in d.marked - c.marked)
        return out

    def __repr__(self):
        return f"<GeneratorMap {self.name}>"


# ---------------------------------------------------------------------------
# the generator families


def _face(m, r):
    return tuple(v for v in range(m + 1) if v != r)


def _horn(m, k):
    return full_simplex(m) - {tuple(range(m + 1)), _face(m, k)}


def _delta_k_marking(m, k):
    need = {k - 1, k, k + 1} & set(range(m + 1))
    return {s for s in full_simplex(m) if len(s) > 1 and need <= set(s)}


def _need(cond, msg):
    if not cond:
        raise ValueError(msg)


def build_generator(family, m, k=None):
    """One generator of the named family.

    Complicial families: ``inner_horn`` (m > 1, 0 < k < m), ``thinness``
    (m >= 2, 0 < k < m), ``triviality`` (m > 2) and ``saturation``
    (m in {-1, 0, 1}).  Scaled families: ``scaled_inner_horn`` (m >= 2,
    0 < k < m), ``scaled_outer_horn`` (m >= 3) and ``scaled_saturation``.
    """
    tag = f"{family}(m={m}" + (f", k={k})" if k is not None else ")")
    if family in ("inner_horn", "thinness", "scaled_inner_horn"):
        _need(m >= 2 and k is not None and 0 < k < m, f"{tag}: need m >= 2 and 0 < k < m")
    if family == "inner_horn":
        mk = _delta_k_marking(m, k)
        dom = MarkedComplex(m, _horn(m, k), mk & _horn(m, k), name=f"Lambda^{k}[{m}]")
        cod = MarkedComplex(m, full_simplex(m), mk, name=f"Delta^{k}[{m}]")
    elif family == "thinness":
        mk = _delta_k_marking(m, k) | {_face(m, k - 1), _face(m, k + 1)}
        dom = MarkedComplex(m, full_simplex(m), mk, name=f"Delta^{k}[{m}]'")
        cod = MarkedComplex(m, full_simplex(m), mk | {_face(m, k)}, name=f"Delta^{k}[{m}]''")
    elif family == "triviality":
        _need(m > 2, f"{tag}: need m > 2")
        dom = standard(m)
        cod = standard(m, {tuple(range(m + 1))}, name=f"Delta[{m}]_t")
    elif family == "saturation":
        _need(m in (-1, 0, 1), f"{tag}: supported m are -1, 0, 1")
        eq = {s for s in full_simplex(3) if len(s) >= 3} | {(0, 2), (1, 3)}
        sharp = {s for s in full_simplex(3) if len(s) >= 2}
        right = standard(m) if m >= 0 else EMPTY_COMPLEX
        dom = marked_join(standard(3, eq, name="Delta[3]_eq"), right)
        cod = marked_join(standard(3, sharp, name="Delta[3]_sharp"), right)
    elif family == "scaled_inner_horn":
        mk = {(k - 1, k, k + 1)}
        dom = MarkedComplex(m, _horn(m, k), mk & _horn(m, k), "scaled", name=f"Lambda^{k}[{m}]")
        cod = MarkedComplex(m, full_simplex(m), mk, "scaled", name=f"Delta[{m}]")
    elif family == "scaled_outer_horn":
        _need(m >= 3, f"{tag}: need m >= 3")
        mk = {(0, 1, m)}
        dom = MarkedComplex(m, _horn(m, 0), mk, "scaled", (0, 1), name=f"Lambda^0[{m}]/[0,1]")
        cod = MarkedComplex(m, full_simplex(m), mk, "scaled", (0, 1), name=f"Delta[{m}]/[0,1]")
    elif family == "scaled_saturation":
        T = {(0, 2, 4), (1, 2, 3), (0, 1, 3), (1, 3, 4), (0, 1, 2)}
        dom = MarkedComplex(4, full_simplex(4), T, "scaled", name="(Delta[4],T)")
        cod = MarkedComplex(4, full_simplex(4), T | {(0, 3, 4), (0, 1, 4)}, "scaled",
                            name="(Delta[4],T+)")
    else:
        raise ValueError(f"unknown generator family {family!r}")
    return GeneratorMap(dom, cod, tag)


def generators(mode, m_max=3):
    """The generator instances run by ``fibrancy_report``.

    Saturation generators are included for the joins that stay within
    dimension 4.
    """
    out = []
    if mode == "tdelta":
        for m in range(2, m_max + 1):
            out.extend(build_generator("inner_horn", m, k) for k in range(1, m))
        for m in range(2, m_max + 1):
            out.extend(build_generator("thinness", m, k) for k in range(1, m))
        out.extend(build_generator("triviality", m) for m in range(3, m_max + 1))
        out.extend(build_generator("saturation", m) for m in (-1, 0) if m + 4 <= 4)
    elif mode == "scaled":
        for m in range(2, m_max + 1):
            out.extend(build_generator("scaled_inner_horn", m, k) for k in range(1, m))
        out.extend(build_generator("scaled_outer_horn", m) for m in range(3, m_max + 1))
        out.append(build_generator("scaled_saturation", 4))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return out


# ---------------------------------------------------------------------------
# lifting


class _FaceIndex:
    """Level elements of a nerve grouped by their tuple of faces."""

    def __init__(self, X):
        self.X = X
        self._idx = {}

    def candidates(self, n, faces):
        if n not in self._idx:
            idx = {}
            for x in self.X.level((n,)):
                key = tuple(self.X.face((n,), 0, r, x) for r in range(n + 1)) if n else ()
                idx.setdefault(key, []).append(x)
            self._idx[n] = idx
        return self._idx[n].get(tuple(faces), ())


def _map_problem(K, X, index, fixed=None, check_marks=None):
    """Variables for the simplices of K not in ``fixed``; returns the problem
    and the position table."""
    fixed = fixed or {}
    p = Problem()
    pos = {}
    marks = K.marked if check_marks is None else check_marks

    def image(vals, s):
        return fixed[s] if s in fixed else vals[pos[s]]

    for s in K.ordered():
        if s in fixed:
            continue
        n = len(s) - 1
        if K.collapse and s == (1,):
            def dom(vals):
                return (image(vals, (0,)),)
        elif K.collapse and s == tuple(K.collapse):
            def dom(vals):
                return (X.degeneracy((0,), 0, 0, image(vals, (0,))),)
        else:
            def dom(vals, s=s, n=n):
                return index.candidates(n, [image(vals, f) for f in _faces(s)] if n else ())
        pos[s] = p.add(s, dom)
        if K.collapse and (s == (1,) or s == tuple(K.collapse)):
            # a forced image must still match its faces
            p.require([pos[s]] + [pos.get(f) for f in _faces(s) if len(s) > 1],
                      lambda vals, s=s: len(s) == 1 or all(
                          X.face((len(s) - 1,), 0, r, image(vals, s)) == image(vals, f)
                          for r, f in enumerate(_faces(s))))
    for s in marks:
        if s in fixed:
            if not X.is_marked(len(s) - 1, fixed[s]):
                p.require([], lambda vals: False)
            continue
        p.require([pos[s]], lambda vals, s=s: X.is_marked(len(s) - 1, image(vals, s)))
    return p, pos


def maps_into(K, X, index=None):
    """All maps from the complex K into the nerve X, as dicts."""
    index = index or _FaceIndex(X)
    p, pos = _map_problem(K, X, index)
    keys = list(pos)
    for vals in p.solutions():
        yield dict(zip(keys, vals))


def has_rlp(gen, X, index=None):
    """``(True, count)`` when every map from the domain extends along the
    inclusion, ``(False, witness)`` otherwise."""
    index = index or _FaceIndex(X)
    count = 0
    for u in maps_into(gen.domain, X, index):
        count += 1
        p, _ = _map_problem(gen.codomain, X, index, fixed=u)
        if next(iter(p.solutions()), None) is None:
            return False, u
    return True, count


def nerve_for(D, mode, knockout=None, unmarked=()):
    if mode == "tdelta":
        return TDeltaNerve(D, knockout=knockout, unmarked=unmarked)
    if mode == "scaled":
        if knockout or unmarked:
            raise ValueError("negative controls are defined for the tdelta nerve")
        return ScaledNerve(D)
    raise ValueError(f"unknown mode {mode!r}")


def fibrancy_report(D, m_max=3, mode="tdelta", provider=None):
    """Lifting checks of every generator up to ``m_max`` against a nerve of D."""
    if m_max > 4:
        raise ValueError("m_max is limited to 4")
    X = provider or nerve_for(D, mode)
    index = _FaceIndex(X)
    out = []
    for gen in generators(mode, m_max):
        ok, info = has_rlp(gen, X, index)
        out.append({"generator": gen.name, "pass": ok,
                    "maps": info if ok else None, "witness": None if ok else info})
    return out


def knockout_report(corpus, m_max=3):
    """For each marking rule, the first corpus member and generator at which
    the nerve without that rule fails to lift."""
    out = {}
    for rule in KNOCKOUTS:
        out[rule] = None
        for D in corpus:
            rec = fibrancy_report(D, m_max, "tdelta", nerve_for(D, "tdelta", knockout=rule))
            fail = next((r for r in rec if not r["pass"]), None)
            if fail:
                out[rule] = {"member": D.name, "generator": fail["generator"],
                             "witness": fail["witness"]}
                break
    return out


__all__ = [
    "MODES", "MarkedComplex", "EMPTY_COMPLEX", "full_simplex", "standard",
    "marked_join", "GeneratorMap", "build_generator", "generators", "maps_into",
    "has_rlp", "nerve_for", "fibrancy_report", "knockout_report",
]
