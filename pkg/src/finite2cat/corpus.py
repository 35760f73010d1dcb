"""The default corpus of small 2-categories and its JSON encoding.

A category is stored as::

    {"kind": "category", "name": ..., "objects": ["x", ...],
     "morphisms": [{"id": "f", "src": "x", "tgt": "y"}, ...],
     "identity": {"x": "1x", ...}, "compose": [["f", "g", "f;g"], ...]}

with ``compose`` listing "f then g" for every composable pair.  A 2-category
nests one category per nonempty hom and lists horizontal composition as
triples of hom-local ids::

    {"kind": "2-category", "name": ..., "objects": ["0", "1"],
     "id1": {"0": "...", ...},
     "homs": [{"src": "0", "tgt": "1", "category": {...}}, ...],
     "hcomp": [{"objects": ["0", "1", "2"], "cells1": [[f, g, h], ...],
                "cells2": [[x, y, z], ...]}, ...]}
"""
import hashlib
import json
import os

import numpy as np

from .core2cat import (FinCategory, Fin2Category, ch_star, chaotic, discrete, ordinal,
                       point, product, sigma, theta, validate_two_category,
                       walking_2cell, walking_2iso, walking_retract)


class CorpusError(ValueError):
    """A file that does not match the schema, with its location."""


def default_corpus():
    """The fourteen shipped members, in a fixed order."""
    return [
        point(),
        discrete(ordinal(1)), discrete(ordinal(2)), discrete(ordinal(3)),
        discrete(chaotic(1)), discrete(chaotic(2)),
        walking_2cell(), walking_2iso(),
        theta(1, [2]), theta(2, [1, 0]), theta(2, [1, 1]), theta(3, [1, 1, 1]),
        ch_star(walking_retract()),
        sigma(product([ordinal(1), chaotic(1)])),
    ]


def member(name, corpus=None):
    for D in corpus or default_corpus():
        if D.name == name:
            return D
    raise KeyError(name)


# ---------------------------------------------------------------------------
# encoding


def _ids(items):
    names = [str(x) for x in items]
    if len(set(names)) == len(names):
        return names
    return [str(i) for i in range(len(items))]


def category_to_json(C, name=None):
    obj = _ids(C.objects)
    mor = _ids(C.labels)
    compose = []
    for f in range(C.n_mor):
        for g in range(C.n_mor):
            h = C._comp[f][g]
            if h >= 0:
                compose.append([mor[f], mor[g], mor[h]])
    return {"kind": "category", "name": name if name is not None else C.name,
            "objects": obj,
            "morphisms": [{"id": mor[m], "src": obj[C.src[m]], "tgt": obj[C.tgt[m]]}
                          for m in range(C.n_mor)],
            "identity": {obj[x]: mor[C.identity[x]] for x in range(C.n_obj)},
            "compose": compose}


def to_json(D):
    objs = [str(a) for a in range(D.n)]
    homs, ids = [], {}
    for a in range(D.n):
        for b in range(D.n):
            C = D.hom(a, b)
            if C.n_obj:
                homs.append({"src": objs[a], "tgt": objs[b], "category": category_to_json(C, "")})
                ids[(a, b)] = (_ids(C.objects), _ids(C.labels))
    hcomp = []
    for a in range(D.n):
        for b in range(D.n):
            for c in range(D.n):
                if (a, b) not in ids or (b, c) not in ids:
                    continue
                to, tm = D.hcomp_table(a, b, c)
                P, Q, R = ids[(a, b)], ids[(b, c)], ids[(a, c)]
                cells1 = [[P[0][x], Q[0][y], _at(R[0], to, x, y)]
                          for x in range(len(P[0])) for y in range(len(Q[0]))]
                cells2 = [[P[1][x], Q[1][y], _at(R[1], tm, x, y)]
                          for x in range(len(P[1])) for y in range(len(Q[1]))]
                hcomp.append({"objects": [objs[a], objs[b], objs[c]],
                              "cells1": cells1, "cells2": cells2})
    return {"kind": "2-category", "name": D.name, "objects": objs,
            "id1": {objs[a]: ids[(a, a)][0][D.id1[a]] for a in range(D.n)},
            "homs": homs, "hcomp": hcomp}


def _at(names, table, x, y):
    v = table[x][y]
    return names[v] if 0 <= v < len(names) else None


def dumps(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def content_hash(D):
    """A short stable digest of the canonical JSON encoding."""
    data = to_json(D) if isinstance(D, Fin2Category) else category_to_json(D)
    return hashlib.sha256(dumps(data).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# decoding


def _require(cond, where, msg):
    if not cond:
        raise CorpusError(f"{where}: {msg}")


def _index(items, where, what):
    _require(isinstance(items, list), where, f"{what} must be a list")
    out = {}
    for i, x in enumerate(items):
        _require(isinstance(x, str), where, f"{what} ids must be strings, got {x!r}")
        _require(x not in out, where, f"duplicate {what} id {x!r}")
        out[x] = i
    return out


def category_from_json(data, where="category"):
    _require(isinstance(data, dict), where, "expected an object")
    for key in ("objects", "morphisms", "identity", "compose"):
        _require(key in data, where, f"missing field {key!r}")
    obj = _index(data["objects"], where, "object")
    mors = data["morphisms"]
    _require(isinstance(mors, list), where, "morphisms must be a list")
    src, tgt, labels = [], [], []
    for m in mors:
        _require(isinstance(m, dict) and {"id", "src", "tgt"} <= set(m), where,
                 f"malformed morphism {m!r}")
        _require(m["src"] in obj and m["tgt"] in obj, where,
                 f"morphism {m['id']!r} has unknown endpoints")
        src.append(obj[m["src"]])
        tgt.append(obj[m["tgt"]])
        labels.append(m["id"])
    mor = _index(labels, where, "morphism")
    idn = data["identity"]
    _require(isinstance(idn, dict) and set(idn) == set(obj), where,
             "identity must map every object")
    for x, f in idn.items():
        _require(f in mor, where, f"identity of {x!r} is unknown morphism {f!r}")
    n = len(labels)
    table = np.full((n, n), -1, dtype=np.int64)
    for t in data["compose"]:
        _require(isinstance(t, list) and len(t) == 3 and all(v in mor for v in t), where,
                 f"malformed compose triple {t!r}")
        f, g, h = (mor[v] for v in t)
        _require(tgt[f] == src[g], where, f"compose triple {t!r} is not a composable pair")
        _require(table[f, g] < 0, where, f"compose triple {t!r} repeats a pair")
        table[f, g] = h
    for f in range(n):
        for g in range(n):
            _require(tgt[f] != src[g] or table[f, g] >= 0, where,
                     f"no compose triple for ({labels[f]!r}, {labels[g]!r})")
    return FinCategory(data["objects"], src, tgt, [mor[idn[x]] for x in data["objects"]],
                       table, labels=labels, name=data.get("name"))


def from_json(data, where="2-category", validate=True):
    """Decode a 2-category; with ``validate`` the 2-category laws must hold."""
    _require(isinstance(data, dict), where, "expected an object")
    for key in ("objects", "id1", "homs", "hcomp"):
        _require(key in data, where, f"missing field {key!r}")
    obj = _index(data["objects"], where, "object")
    homs, local = {}, {}
    for k, h in enumerate(data["homs"]):
        loc = f"{where}: homs[{k}]"
        _require(isinstance(h, dict) and h.get("src") in obj and h.get("tgt") in obj, loc,
                 "hom needs known src and tgt")
        key = (obj[h["src"]], obj[h["tgt"]])
        _require(key not in homs, loc, "duplicate hom")
        C = category_from_json(h.get("category"), loc)
        homs[key] = C
        local[key] = ({x: i for i, x in enumerate(C.objects)},
                      {x: i for i, x in enumerate(C.labels)})
    id1 = []
    for x in data["objects"]:
        f = data["id1"].get(x)
        _require((obj[x], obj[x]) in local and f in local[(obj[x], obj[x])][0], where,
                 f"identity 1-cell of {x!r} is not an object of its endo-hom")
        id1.append(local[(obj[x], obj[x])][0][f])
    hcomp = {}
    for k, e in enumerate(data["hcomp"]):
        loc = f"{where}: hcomp[{k}]"
        _require(isinstance(e, dict) and isinstance(e.get("objects"), list)
                 and len(e["objects"]) == 3 and all(x in obj for x in e["objects"]), loc,
                 "objects must be three known object ids")
        a, b, c = (obj[x] for x in e["objects"])
        _require((a, b) in local and (b, c) in local and (a, c) in local, loc,
                 "composition between empty homs")
        P, Q, R = local[(a, b)], local[(b, c)], local[(a, c)]
        tables = []
        for field, part in (("cells1", 0), ("cells2", 1)):
            rows, cols = len(P[part]), len(Q[part])
            t = [[-1] * cols for _ in range(rows)]
            for triple in e.get(field, []):
                _require(isinstance(triple, list) and len(triple) == 3
                         and triple[0] in P[part] and triple[1] in Q[part]
                         and (triple[2] is None or triple[2] in R[part]), loc,
                         f"malformed {field} triple {triple!r}")
                if triple[2] is not None:
                    t[P[part][triple[0]]][Q[part][triple[1]]] = R[part][triple[2]]
            tables.append(t)
        hcomp[(a, b, c)] = tuple(tables)
    D = Fin2Category(range(len(obj)), homs, id1, hcomp, name=data.get("name"))
    if validate:
        bad = validate_two_category(D)
        if bad:
            raise CorpusError(f"{where}: violates {bad[0].law} at {bad[0].witness}")
    return D


def load(path, validate=True):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusError(f"{path}: {exc}") from None
    if isinstance(data, dict) and data.get("kind") == "category":
        return category_from_json(data, path)
    if isinstance(data, dict) and data.get("kind") == "nps":
        return nps_from_json(data, path)
    return from_json(data, path, validate)


def save(D, path):
    if isinstance(D, Fin2Category):
        data = to_json(D)
    elif isinstance(D, FinCategory):
        data = category_to_json(D)
    else:
        data = nps_to_json(D)
    with open(path, "w") as fh:
        fh.write(json.dumps(data, sort_keys=True, indent=1))
        fh.write("\n")


def _slug(name):
    keep = "".join(ch if ch.isalnum() else "_" for ch in name)
    return keep.strip("_") or "member"


def corpus_save(directory, members):
    os.makedirs(directory, exist_ok=True)
    paths = []
    for k, D in enumerate(members):
        path = os.path.join(directory, f"{k:02d}_{_slug(D.name or 'member')}.json")
        save(D, path)
        paths.append(path)
    return paths


def corpus_load(directory, validate=True):
    if not os.path.isdir(directory):
        raise CorpusError(f"{directory}: not a directory")
    names = sorted(f for f in os.listdir(directory) if f.endswith(".json"))
    if not names:
        raise CorpusError(f"{directory}: no .json files")
    return [load(os.path.join(directory, f), validate) for f in names]


def nps_to_json(F):
    """Four tables with cells written as ``[a, b, index]``."""
    return {"kind": "nps", "source": to_json(F.source), "target": to_json(F.target),
            "obj": list(F.obj),
            "one": [[list(f), list(v)] for f, v in sorted(F.one.items())],
            "two": [[list(f), list(v)] for f, v in sorted(F.two.items())],
            "comp": [[list(f), list(g), [list(c) for c in t]]
                     for (f, g), t in sorted(F.comp.items())]}


def nps_from_json(data, where="nps"):
    from .nps import NormalPseudofunctor

    _require(isinstance(data, dict) and data.get("kind") == "nps", where,
             "expected an object with kind 'nps'")
    for key in ("source", "target", "obj", "one", "two", "comp"):
        _require(key in data, where, f"missing field {key!r}")
    A = from_json(data["source"], f"{where}: source")
    B = from_json(data["target"], f"{where}: target")

    def cell(v, loc):
        _require(isinstance(v, list) and len(v) == 3 and all(isinstance(x, int) for x in v),
                 where, f"malformed cell {v!r} in {loc}")
        return tuple(v)

    try:
        one = {cell(f, "one"): cell(v, "one") for f, v in data["one"]}
        two = {cell(f, "two"): cell(v, "two") for f, v in data["two"]}
        comp = {(cell(f, "comp"), cell(g, "comp")): tuple(cell(c, "comp") for c in t)
                for f, g, t in data["comp"]}
    except (TypeError, ValueError) as exc:
        raise CorpusError(f"{where}: malformed table entry ({exc})") from None
    return NormalPseudofunctor(A, B, data["obj"], one, two, comp)


# ---------------------------------------------------------------------------
# seeded corruptions for negative controls

CORRUPTIONS = ("hcomp1", "hcomp2", "vcomp")


def materialize(D):
    """A plain copy with every table stored as nested lists."""
    homs = {(a, b): D.hom(a, b) for a in range(D.n) for b in range(D.n)}
    hcomp = {}
    for a in range(D.n):
        for b in range(D.n):
            for c in range(D.n):
                if homs[(a, b)].n_obj and homs[(b, c)].n_obj:
                    to, tm = D.hcomp_table(a, b, c)
                    hcomp[(a, b, c)] = ([list(r) for r in to], [list(r) for r in tm])
    return Fin2Category(range(D.n), homs, list(D.id1), hcomp, name=D.name)


def corruption_sites(D, kind):
    """Every single table entry of the given kind, in a fixed order."""
    if kind not in CORRUPTIONS:
        raise ValueError(f"unknown corruption {kind!r}")
    out = []
    for a in range(D.n):
        for b in range(D.n):
            if kind == "vcomp":
                C = D.hom(a, b)
                out.extend((kind, (a, b), f, g) for f in range(C.n_mor) for g in range(C.n_mor)
                           if C._comp[f][g] >= 0 and C.n_mor > 1)
                continue
            for c in range(D.n):
                P, Q, R = D.hom(a, b), D.hom(b, c), D.hom(a, c)
                if not (P.n_obj and Q.n_obj):
                    continue
                rows, cols, size = ((P.n_obj, Q.n_obj, R.n_obj) if kind == "hcomp1"
                                    else (P.n_mor, Q.n_mor, R.n_mor))
                if size > 1:
                    out.extend((kind, (a, b, c), x, y) for x in range(rows) for y in range(cols))
    return out


def corrupt(D, site):
    """A copy of D with the entry at ``site`` moved to the next valid value."""
    kind, key, x, y = site
    E = materialize(D)
    if kind == "vcomp":
        C = E.hom(*key)
        table = C.table.copy()
        table[x, y] = (table[x, y] + 1) % C.n_mor
        E._homs[key] = FinCategory(C.objects, C.src, C.tgt, C.identity, table, C.labels, C.name)
        return E
    a, b, c = key
    part = 0 if kind == "hcomp1" else 1
    R = E.hom(a, c)
    size = R.n_obj if part == 0 else R.n_mor
    t = E._hcomp[key][part]
    t[x][y] = (t[x][y] + 1) % size
    return E


def seed_violation(members, kind):
    """Corrupt the first entry of ``kind`` in the first member that has one;
    returns the new list and the index of the corrupted member."""
    for k, D in enumerate(members):
        for site in corruption_sites(D, kind):
            E = corrupt(D, site)
            if validate_two_category(E):
                E.name = f"{D.name}+{kind}"
                return members[:k] + [E] + members[k + 1:], k
    raise ValueError(f"no member admits a detectable {kind} corruption")


__all__ = [
    "CorpusError", "default_corpus", "member", "category_to_json", "to_json", "dumps",
    "content_hash", "category_from_json", "nps_to_json", "nps_from_json", "from_json",
    "load", "save", "corpus_save", "corpus_load", "CORRUPTIONS", "materialize",
    "corruption_sites", "corrupt", "seed_violation",
]
