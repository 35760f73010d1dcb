"""Command line entry point and suite orchestration.

``run_suite`` turns a suite name, a corpus and truncation parameters into a
``VerificationReport``: an ordered list of check records, each naming its
inputs by content hash.  Reports are deterministic; wall times are kept on
the records but left out of JSON output unless asked for.
"""
import argparse
import json
import multiprocessing
import sys
import time
from dataclasses import dataclass, field

from . import complicial, corpus as corpus_mod
from .core2cat import (chaotic, discrete, enumerate_functors, enumerate_two_functors,
                       is_gaunt, point, theta, validate_two_category, walking_2cell,
                       walking_2iso)
from .hom2cat import (PreconditionError, check_corepresented_pushout, check_icon_pullback,
                      check_replace_pseudo, suspension_pushout_spec, trivial_pushout_spec)
from .nerves import (KNOCKOUTS, DuskinNerve, PrecatNerve, RezkNerve, ScaledNerve,
                     TDeltaNerve, Theta2Nerve, appendix_roundtrip, check_leinster_vs_moser,
                     check_optimistic, check_precat_maps, check_segal,
                     check_simplicial_identities, check_within_simplicial)
from .nps import enumerate_nps, from_two_functor, validate_nps

SUITES = ("laws", "optimistic", "leinster-vs-moser", "icon-pullback", "replace-pseudo",
          "pushouts", "nps-axioms", "appendix", "withinsimplicial", "segal", "fibrancy",
          "precat-maps")

# per-suite truncation defaults used when no flag is given
DEFAULT_GRID = {"optimistic": (2, 2, 0), "leinster-vs-moser": (2, 2, 0),
                "segal": (3, 2, 1), "precat-maps": (2, 1, 1)}
DEFAULT_DIM = {"withinsimplicial": 4, "fibrancy": 3}


class ConfigError(ValueError):
    """Bad suite name, flag or corpus; maps to exit code 2."""


@dataclass
class Params:
    max_dim: int = None
    grid: tuple = None
    mode: str = None
    seed_violation: str = None
    jobs: int = 1

    def dim(self, suite):
        return self.max_dim if self.max_dim is not None else DEFAULT_DIM.get(suite, 4)

    def box(self, suite):
        return tuple(self.grid) if self.grid is not None else DEFAULT_GRID.get(suite, (2, 2, 1))


@dataclass
class VerificationReport:
    suite: str
    params: dict
    records: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r["pass"] for r in self.records)

    def to_json(self, timing=False):
        recs = []
        for r in self.records:
            r = dict(r)
            if not timing:
                r.pop("wall_time", None)
            recs.append(r)
        data = {"suite": self.suite, "params": self.params, "pass": self.passed,
                "checks": len(recs), "failures": sum(not r["pass"] for r in recs),
                "records": recs}
        return json.dumps(data, sort_keys=True, indent=1)

    def to_text(self):
        lines = [f"suite {self.suite}: {len(self.records)} checks, "
                 f"{sum(not r['pass'] for r in self.records)} failed"]
        for r in self.records:
            flag = "PASS" if r["pass"] else "FAIL"
            counts = " ".join(f"{k}={v}" for k, v in sorted(r["counts"].items()))
            lines.append(f"  {flag} {r['check']} {counts} ({r['wall_time']:.2f}s)")
            if not r["pass"] and r["witness"] is not None:
                lines.append(f"       witness: {json.dumps(r['witness'])}")
        return "\n".join(lines)


def jsonable(x):
    """Plain JSON data for witnesses and level elements."""
    if isinstance(x, dict):
        if all(isinstance(k, str) for k in x):
            return {k: jsonable(v) for k, v in x.items()}
        return [[jsonable(k), jsonable(v)] for k, v in sorted(x.items(), key=repr)]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (str, bool)) or x is None:
        return x
    if hasattr(x, "__index__"):
        return int(x)
    if hasattr(x, "comp") and hasattr(x, "obj"):
        return {"obj": jsonable(x.obj), "one": jsonable(x.one), "two": jsonable(x.two),
                "comp": jsonable(x.comp)}
    if hasattr(x, "one") and hasattr(x, "obj"):
        return {"obj": jsonable(x.obj), "one": jsonable(x.one), "two": jsonable(x.two)}
    return repr(x)


# ---------------------------------------------------------------------------
# the checks; each returns (pass, counts, witness)

SMALL_GAUNT = ((0, []), (1, [0]), (1, [1]), (2, [0, 0]))


def _small(spec):
    i, js = spec
    return point() if i == 0 else theta(i, js)


def _laws(D):
    bad = validate_two_category(D)
    counts = {"violations": len(bad), "cells1": len(D.cells1()) if not bad else None,
              "objects": D.n}
    return not bad, counts, (list(bad[0]) if bad else None)


def _optimistic(A, i, j):
    rec = check_optimistic(A, i, j)
    fail = next((r for r in rec if not r["pass"]), None)
    return fail is None, {"levels": len(rec), "elements": sum(r["nps"] for r in rec)}, fail


def _lvm(A, i, j):
    rec = check_leinster_vs_moser(A, i, j)
    fail = next((r for r in rec if not r["pass"]), None)
    return fail is None, {"levels": len(rec), "elements": sum(r["theta2"] for r in rec)}, fail


def _icon(B, D):
    ok = check_icon_pullback(B, D)
    return ok, {}, None if ok else {"B": B.name, "D": D.name}


def _replace(B, D):
    A = discrete(chaotic(1))
    ok = check_replace_pseudo(A, B, D)
    return ok, {}, None if ok else {"A": A.name, "B": B.name, "D": D.name}


PUSHOUT_SPANS = ("suspension(S([1]),1)", "suspension(disc(~[1]),1)",
                 "suspension(disc(~[1]),2)", "trivial(S([1]))")


def _span(name):
    if name == "suspension(S([1]),1)":
        return suspension_pushout_spec(walking_2cell(), 1)
    if name == "suspension(disc(~[1]),1)":
        return suspension_pushout_spec(discrete(chaotic(1)), 1)
    if name == "suspension(disc(~[1]),2)":
        return suspension_pushout_spec(discrete(chaotic(1)), 2)
    if name == "trivial(S([1]))":
        return trivial_pushout_spec(walking_2cell())
    raise ConfigError(f"unknown span {name}")


def _pushout(span, D):
    (rec,) = check_corepresented_pushout(_span(span), [D])
    ok = rec["pass"]
    witness = None if ok else {k: rec[k] for k in ("not_in_fiber", "collisions", "missed")}
    return ok, {"apex": rec["apex"], "fiber": rec["fiber"]}, witness


def _nps_axioms(D):
    counts, witness = {}, None
    for spec in SMALL_GAUNT[1:]:
        A = _small(spec)
        found = enumerate_nps(A, D)
        strict = enumerate_two_functors(A, D)
        counts[A.name] = len(found)
        for F in found:
            bad = {k: v for k, v in validate_nps(F).items() if v}
            if bad and witness is None:
                witness = {"source": A.name, "nps": jsonable(F), "axioms": jsonable(bad)}
        strict_part = [F.strict_part() for F in found if F.is_strict()]
        if strict_part != strict and witness is None:
            witness = {"source": A.name, "strict-sublist": [len(strict_part), len(strict)]}
        if is_gaunt(D) and len(strict_part) != len(found) and witness is None:
            witness = {"source": A.name, "gaunt-target-not-strict": len(found)}
    return witness is None, counts, witness


def _appendix(a, b):
    A, B = _small(SMALL_GAUNT[a]), _small(SMALL_GAUNT[b])
    rec = appendix_roundtrip(A, B)
    return rec["pass"], {"maps": rec["maps"], "nps": rec["nps"]}, None if rec["pass"] else rec


def _within(D, n):
    ok, rec = check_within_simplicial(D, n, report=True)
    fail = next((r for r in rec if not r["pass"]), None)
    return ok, {"simplices": sum(r["simplices"] for r in rec)}, fail


def _segal(D, box):
    P = PrecatNerve(D)
    I, J, K = box
    shapes = [(i, j, k) for i in range(I + 1) for j in range(J + 1) for k in range(K + 1)]
    bad = [s for s in shapes if not check_segal(D, *s, provider=P)]
    ident = check_simplicial_identities(P, shapes)
    witness = None
    if bad:
        witness = {"segal": list(bad[0])}
    elif ident:
        witness = {"identities": jsonable(ident[0])}
    size = sum(len(P.level_array(s)[0]) for s in shapes)
    return witness is None, {"levels": len(shapes), "elements": size}, witness


def _fibrancy(D, mode, m_max, knockout=None):
    X = complicial.nerve_for(D, mode, knockout=knockout)
    rec = complicial.fibrancy_report(D, m_max, mode, X)
    fail = next((r for r in rec if not r["pass"]), None)
    witness = None if fail is None else {"generator": fail["generator"],
                                         "map": jsonable(fail["witness"])}
    return fail is None, {"generators": len(rec)}, witness


def _negative(members, rule, m_max):
    out = complicial.knockout_report(members, m_max)[rule]
    witness = None if out is None else {"member": out["member"], "generator": out["generator"]}
    return out is not None, {}, witness


def _precat_maps(a, D, box):
    A = walking_2iso() if a == "S(~[1])" else _small(SMALL_GAUNT[("[0]", "[1|0]").index(a)])
    i, j, k = box
    rec = check_precat_maps(A, D, i, j, k)
    return rec["pass"], {"maps": rec["maps"], "two_functors": rec["two_functors"]}, \
        None if rec["pass"] else rec


# ---------------------------------------------------------------------------
# planning and running


def _plan(suite, members, params):
    """``[(check id, function, args, inputs)]`` in report order."""
    M = list(enumerate(members))
    tag = {id(D): f"{k:02d}:{D.name}" for k, D in M}
    plan = []
    if suite == "laws":
        plan = [(f"laws/{tag[id(D)]}", _laws, (D,), [D]) for _, D in M]
    elif suite in ("optimistic", "leinster-vs-moser"):
        i, j, _ = params.box(suite)
        fn = _optimistic if suite == "optimistic" else _lvm
        plan = [(f"{suite}/{tag[id(D)]}", fn, (D, i, j), [D]) for _, D in M if is_gaunt(D)]
    elif suite == "icon-pullback":
        for spec in SMALL_GAUNT[:3]:
            B = _small(spec)
            plan += [(f"icon-pullback/{B.name}/{tag[id(D)]}", _icon, (B, D), [B, D])
                     for _, D in M]
    elif suite == "replace-pseudo":
        for spec in SMALL_GAUNT[1:3]:
            B = _small(spec)
            plan += [(f"replace-pseudo/{B.name}/{tag[id(D)]}", _replace, (B, D), [B, D])
                     for _, D in M]
    elif suite == "pushouts":
        for span in PUSHOUT_SPANS:
            plan += [(f"pushouts/{span}/{tag[id(D)]}", _pushout, (span, D), [D]) for _, D in M]
    elif suite == "nps-axioms":
        plan = [(f"nps-axioms/{tag[id(D)]}", _nps_axioms, (D,), [D]) for _, D in M]
    elif suite == "appendix":
        n = len(SMALL_GAUNT)
        plan = [(f"appendix/{_small(SMALL_GAUNT[a]).name}/{_small(SMALL_GAUNT[b]).name}",
                 _appendix, (a, b), [_small(SMALL_GAUNT[a]), _small(SMALL_GAUNT[b])])
                for a in range(n) for b in range(n)]
    elif suite == "withinsimplicial":
        n = params.dim(suite)
        plan = [(f"withinsimplicial/{tag[id(D)]}", _within, (D, n), [D]) for _, D in M]
    elif suite == "segal":
        box = params.box(suite)
        plan = [(f"segal/{tag[id(D)]}", _segal, (D, box), [D]) for _, D in M]
    elif suite == "fibrancy":
        m = params.dim(suite)
        if m > 4:
            raise ConfigError("fibrancy supports --max-dim up to 4")
        modes = [params.mode] if params.mode else ["tdelta", "scaled"]
        knock = params.seed_violation if params.seed_violation in KNOCKOUTS else None
        for mode in modes:
            plan += [(f"fibrancy/{mode}/{tag[id(D)]}", _fibrancy,
                      (D, mode, m, knock if mode == "tdelta" else None), [D]) for _, D in M]
        if knock is None and "tdelta" in modes:
            plan += [(f"fibrancy/negative-control/{rule}", _negative, (members, rule, m),
                      list(members)) for rule in KNOCKOUTS]
    elif suite == "precat-maps":
        box = params.box(suite)
        for a in ("[0]", "[1|0]", "S(~[1])"):
            plan += [(f"precat-maps/{a}/{tag[id(D)]}", _precat_maps, (a, D, box), [D])
                     for _, D in M]
    else:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return plan


def _execute(item):
    check, fn, args, inputs = item
    t = time.perf_counter()
    try:
        ok, counts, witness = fn(*args)
    except PreconditionError as exc:
        ok, counts, witness = False, {}, {"precondition": str(exc)}
    return {"check": check,
            "inputs": {D.name: corpus_mod.content_hash(D) for D in inputs},
            "pass": bool(ok), "counts": jsonable(counts), "witness": jsonable(witness),
            "wall_time": time.perf_counter() - t}


_PLAN = []


def _execute_index(k):
    return _execute(_PLAN[k])


def run_suite(name, members, params=None):
    """Run one suite over the given corpus members."""
    params = params or Params()
    if params.seed_violation is not None:
        if name == "laws":
            if params.seed_violation not in corpus_mod.CORRUPTIONS:
                raise ConfigError(f"laws corruptions are {', '.join(corpus_mod.CORRUPTIONS)}")
            members, _ = corpus_mod.seed_violation(list(members), params.seed_violation)
        elif name == "fibrancy":
            if params.seed_violation not in KNOCKOUTS:
                raise ConfigError(f"fibrancy knockouts are {', '.join(KNOCKOUTS)}")
        else:
            raise ConfigError("--seed-violation applies to the laws and fibrancy suites")
    plan = _plan(name, members, params)
    if params.jobs > 1 and len(plan) > 1 and "fork" in multiprocessing.get_all_start_methods():
        global _PLAN
        _PLAN = plan
        with multiprocessing.get_context("fork").Pool(params.jobs) as pool:
            records = pool.map(_execute_index, range(len(plan)), chunksize=1)
        _PLAN = []
    else:
        records = [_execute(item) for item in plan]
    shown = {"max_dim": params.max_dim, "grid": list(params.grid) if params.grid else None,
             "mode": params.mode, "seed_violation": params.seed_violation}
    return VerificationReport(name, shown, records)


# ---------------------------------------------------------------------------
# nerve dumps

NERVE_KINDS = ("duskin", "tdelta", "sc", "theta2", "rezk", "precat")


def nerve_dump(kind, X, dim):
    """Levels up to total degree ``dim`` with face tables and markings."""
    if kind in ("duskin", "tdelta", "sc"):
        P = {"duskin": DuskinNerve, "tdelta": TDeltaNerve, "sc": ScaledNerve}[kind](X)
        shapes = [(n,) for n in range(dim + 1)]
    elif kind == "rezk":
        P = RezkNerve(X)
        shapes = [(j, k) for j in range(dim + 1) for k in range(dim + 1) if j + k <= dim]
    elif kind == "precat":
        P = PrecatNerve(X)
        shapes = [(i, j, k) for i in range(dim + 1) for j in range(dim + 1)
                  for k in range(dim + 1) if i + j + k <= dim]
    elif kind == "theta2":
        P = Theta2Nerve(X)
        levels = []
        for i in range(dim + 1):
            for j in range(dim + 1 - i if i else 1):
                elems = P.level((i, (j,) * i))
                levels.append({"shape": [i, [j] * i], "size": len(elems),
                               "elements": [jsonable(x) for x in elems]})
        return {"kind": kind, "input": X.name, "levels": levels}
    else:
        raise ConfigError(f"unknown nerve kind {kind!r}")
    levels = []
    for shape in shapes:
        elems = list(P.level(shape))
        faces = {}
        for q, n in enumerate(shape):
            if n < 1:
                continue
            lower = list(shape)
            lower[q] -= 1
            lower_pos = {x: k for k, x in enumerate(P.level(tuple(lower)))}
            faces[str(q)] = [[lower_pos[P.face(shape, q, r, x)] for r in range(n + 1)]
                             for x in elems]
        entry = {"shape": list(shape), "size": len(elems),
                 "elements": [jsonable(x) for x in elems], "faces": faces}
        if kind == "tdelta":
            entry["markings"] = [len(P.markings(shape[0], x)) for x in elems]
        if kind == "sc":
            entry["scaled"] = [bool(P.is_marked(shape[0], x)) for x in elems]
        levels.append(entry)
    return {"kind": kind, "input": X.name, "levels": levels}


# ---------------------------------------------------------------------------
# argument handling


def _grid(text):
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if len(vals) == 2:
        vals += (0,)
    if len(vals) != 3 or min(vals) < 0:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; expected i,j,k")
    return vals


def build_parser():
    p = argparse.ArgumentParser(prog="finite2cat",
                                description="Finite 2-categories, their nerves and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check the 2-category laws of a JSON file")
    v.add_argument("file")
    v.add_argument("--format", choices=("json", "text"), default="text")

    e = sub.add_parser("enumerate", help="list functors or 2-functors between two files")
    e.add_argument("--from", dest="source", required=True)
    e.add_argument("--to", dest="target", required=True)
    e.add_argument("--kind", choices=("functor", "2functor"), default="2functor")
    e.add_argument("--format", choices=("json", "text"), default="text")

    r = sub.add_parser("verify", help="run a verification suite")
    r.add_argument("--suite", required=True, choices=SUITES)
    r.add_argument("input", nargs="?", help="a normal pseudofunctor file (nps-axioms)")
    r.add_argument("--input", dest="input_flag", help="restrict the corpus to one file")
    r.add_argument("--corpus", help="directory of JSON 2-categories (default: shipped)")
    r.add_argument("--format", choices=("json", "text"), default="text")
    r.add_argument("--max-dim", type=int)
    r.add_argument("--grid", type=_grid)
    r.add_argument("--mode", choices=("tdelta", "scaled"))
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--seed-violation")
    r.add_argument("--timing", action="store_true", help="include wall times in JSON")

    n = sub.add_parser("nerve", help="dump nerve levels as JSON")
    n.add_argument("--kind", required=True, choices=NERVE_KINDS)
    n.add_argument("--dim", type=int, default=2)
    n.add_argument("--input", required=True)
    n.add_argument("--format", choices=("json",), default="json")

    c = sub.add_parser("corpus", help="write the shipped corpus as JSON files")
    c.add_argument("directory")
    return p


def _validate_cmd(args, out):
    D = corpus_mod.load(args.file, validate=False)
    bad = validate_two_category(D)
    if args.format == "json":
        out.write(json.dumps({"file": args.file, "hash": corpus_mod.content_hash(D),
                              "violations": [jsonable(v) for v in bad]}, indent=1) + "\n")
    else:
        out.write(f"{args.file}: {'lawful' if not bad else f'{len(bad)} violations'}\n")
        for v in bad:
            out.write(f"  {v.law} at {jsonable(v.witness)}\n")
    return 1 if bad else 0


def _enumerate_cmd(args, out):
    A = corpus_mod.load(args.source)
    B = corpus_mod.load(args.target)
    kinds = (type(A).__name__, type(B).__name__)
    if args.kind == "functor":
        if kinds != ("FinCategory", "FinCategory"):
            raise ConfigError("--kind functor needs two category files")
        found = enumerate_functors(A, B)
        rows = [{"obj": list(F.obj), "mor": list(F.mor)} for F in found]
    else:
        if kinds != ("Fin2Category", "Fin2Category"):
            raise ConfigError("--kind 2functor needs two 2-category files")
        found = enumerate_two_functors(A, B)
        rows = [jsonable(F) for F in found]
    if args.format == "json":
        out.write(json.dumps({"count": len(rows), "items": rows}, indent=1) + "\n")
    else:
        out.write(f"{len(rows)} {args.kind}s\n")
        for k, row in enumerate(rows):
            out.write(f"  {k}: {json.dumps(row)}\n")
    return 0


def _verify_cmd(args, out):
    if args.jobs < 1:
        raise ConfigError("--jobs must be positive")
    if args.input and args.suite == "nps-axioms":
        F = corpus_mod.load(args.input)
        if type(F).__name__ != "NormalPseudofunctor":
            raise ConfigError(f"{args.input} is not a normal pseudofunctor file")
        t = time.perf_counter()
        bad = {k: v for k, v in validate_nps(F).items() if v}
        report = VerificationReport("nps-axioms", {"input": args.input}, [{
            "check": "nps-axioms/input", "inputs": {
                "source": corpus_mod.content_hash(F.source),
                "target": corpus_mod.content_hash(F.target)},
            "pass": not bad, "counts": {"axioms": 6}, "witness": jsonable(bad) or None,
            "wall_time": time.perf_counter() - t}])
    else:
        if args.input:
            raise ConfigError("a positional input file is only read by nps-axioms")
        if args.input_flag:
            members = [corpus_mod.load(args.input_flag, validate=args.suite != "laws")]
        elif args.corpus:
            members = corpus_mod.corpus_load(args.corpus, validate=args.suite != "laws")
        else:
            members = corpus_mod.default_corpus()
        params = Params(args.max_dim, args.grid, args.mode, args.seed_violation, args.jobs)
        report = run_suite(args.suite, members, params)
    if args.format == "json":
        out.write(report.to_json(timing=args.timing) + "\n")
    else:
        out.write(report.to_text() + "\n")
    return 0 if report.passed else 1


def _nerve_cmd(args, out):
    X = corpus_mod.load(args.input)
    if args.kind == "rezk" and type(X).__name__ != "FinCategory":
        raise ConfigError("the Rezk nerve takes a category file")
    if args.kind != "rezk" and type(X).__name__ != "Fin2Category":
        raise ConfigError(f"the {args.kind} nerve takes a 2-category file")
    if args.dim < 0 or args.dim > 4:
        raise ConfigError("--dim must be between 0 and 4")
    out.write(json.dumps(nerve_dump(args.kind, X, args.dim), sort_keys=True) + "\n")
    return 0


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return _validate_cmd(args, out)
        if args.command == "enumerate":
            return _enumerate_cmd(args, out)
        if args.command == "verify":
            return _verify_cmd(args, out)
        if args.command == "nerve":
            return _nerve_cmd(args, out)
        if args.command == "corpus":
            paths = corpus_mod.corpus_save(args.directory, corpus_mod.default_corpus())
            out.write(f"wrote {len(paths)} files to {args.directory}\n")
            return 0
    except (ConfigError, corpus_mod.CorpusError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 2


__all__ = ["SUITES", "Params", "VerificationReport", "ConfigError", "run_suite",
           "nerve_dump", "build_parser", "main", "jsonable"]
