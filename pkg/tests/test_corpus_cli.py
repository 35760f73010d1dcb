import io
import json

import pytest

import oracles
from finite2cat import ordinal, validate_two_category, walking_2cell, walking_2iso
from finite2cat.cli import Params, build_parser, jsonable, main, run_suite
from finite2cat.corpus import (CORRUPTIONS, CorpusError, content_hash, corpus_load, corpus_save,
                               default_corpus, from_json, load, member, save, seed_violation,
                               to_json)
from finite2cat.nps import enumerate_nps


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_default_corpus(corpus):
    assert len(corpus) >= 10
    names = [D.name for D in corpus]
    assert len(set(names)) == len(names)
    assert member("S(~[1])").name == "S(~[1])"
    with pytest.raises(KeyError):
        member("nope")


def test_roundtrip_and_hash(corpus):
    for D in corpus:
        E = from_json(json.loads(json.dumps(to_json(D))))
        assert to_json(E) == to_json(D)
        assert content_hash(E) == content_hash(D)
    hashes = [content_hash(D) for D in corpus]
    assert len(set(hashes)) == len(hashes)
    assert all(len(h) == 16 for h in hashes)


def test_hash_is_stable_across_builds():
    assert content_hash(walking_2cell()) == content_hash(walking_2cell())


def test_corpus_dir_roundtrip(tmp_path, corpus):
    paths = corpus_save(tmp_path, corpus)
    assert len(paths) == len(corpus)
    back = corpus_load(tmp_path)
    assert [content_hash(D) for D in back] == [content_hash(D) for D in corpus]


def test_malformed_triple_names_file_and_triple(tmp_path):
    path = tmp_path / "bad.json"
    data = to_json(walking_2cell())
    entry = next(e for e in data["hcomp"] if e["cells1"])
    entry["cells1"][0] = [entry["cells1"][0][0], "ghost", entry["cells1"][0][2]]
    path.write_text(json.dumps(data))
    with pytest.raises(CorpusError) as err:
        load(str(path))
    msg = str(err.value)
    assert "bad.json" in msg and "ghost" in msg


def test_unlawful_file_rejected_when_validating(tmp_path):
    D, _ = seed_violation([walking_2cell()], "hcomp2")
    path = tmp_path / "x.json"
    save(D[0], str(path))
    with pytest.raises(CorpusError):
        load(str(path))
    assert validate_two_category(load(str(path), validate=False))


def test_category_and_nps_files(tmp_path):
    p = tmp_path / "c.json"
    save(ordinal(2), str(p))
    assert load(str(p)).n_obj == 3
    F = enumerate_nps(walking_2cell(), walking_2iso())[0]
    q = tmp_path / "f.json"
    save(F, str(q))
    assert load(str(q)) == F


def test_laws_suite_pristine(corpus):
    rep = run_suite("laws", corpus)
    assert rep.passed and len(rep.records) == len(corpus)
    for D, r in zip(corpus, rep.records):
        assert r["inputs"] == {D.name: content_hash(D)}


@pytest.mark.parametrize("kind", CORRUPTIONS)
def test_laws_suite_seeded(corpus, kind):
    rep = run_suite("laws", corpus, Params(seed_violation=kind))
    failed = [r for r in rep.records if not r["pass"]]
    assert len(failed) == 1
    assert failed[0]["witness"]
    assert kind in failed[0]["check"]


def test_json_is_byte_identical(corpus):
    a = run_suite("laws", corpus).to_json()
    b = run_suite("laws", corpus).to_json()
    assert a == b
    assert "wall_time" not in a
    assert "wall_time" in run_suite("laws", corpus[:1]).to_json(timing=True)


def test_parallel_matches_serial(corpus):
    serial = run_suite("nps-axioms", corpus[:6])
    par = run_suite("nps-axioms", corpus[:6], Params(jobs=3))
    assert serial.to_json() == par.to_json()


def test_seed_violation_rejected_elsewhere(corpus):
    from finite2cat.cli import ConfigError
    with pytest.raises(ConfigError):
        run_suite("optimistic", corpus, Params(seed_violation="hcomp1"))
    with pytest.raises(ConfigError):
        run_suite("laws", corpus, Params(seed_violation="higher"))


def test_jsonable():
    assert jsonable({"a": (1, 2)}) == {"a": [1, 2]}
    assert jsonable({(1, 2): 3}) == [[[1, 2], 3]]


def test_parser_grid():
    args = build_parser().parse_args(["verify", "--suite", "segal", "--grid", "2,1"])
    assert args.grid == (2, 1, 0)
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "--suite", "segal", "--grid", "x"])


def test_cli_verify_exit_codes(tmp_path):
    code, text = run(["verify", "--suite", "laws"])
    assert code == 0 and "FAIL" not in text
    code, text = run(["verify", "--suite", "laws", "--seed-violation", "vcomp",
                      "--format", "json"])
    assert code == 1 and json.loads(text)["failures"] == 1
    assert run(["verify", "--suite", "laws", "--corpus", str(tmp_path / "missing")])[0] == 2
    assert run(["verify", "--suite", "segal", "--seed-violation", "hcomp1"])[0] == 2
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "bogus"], io.StringIO())


def test_cli_validate_enumerate_nerve(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save(walking_2cell(), str(a))
    save(walking_2iso(), str(b))
    code, text = run(["validate", str(a), "--format", "json"])
    assert code == 0 and json.loads(text)["violations"] == []
    code, text = run(["enumerate", "--from", str(a), "--to", str(b), "--format", "json"])
    assert code == 0 and json.loads(text)["count"] == len(
        oracles.two_functors(walking_2cell(), walking_2iso()))
    code, text = run(["nerve", "--kind", "duskin", "--dim", "2", "--input", str(a)])
    dump = json.loads(text)
    assert code == 0 and [lv["size"] for lv in dump["levels"]] == [2, 4, 8]
    code, text = run(["nerve", "--kind", "tdelta", "--dim", "1", "--input", str(b)])
    assert code == 0 and "markings" in json.loads(text)["levels"][1]
    assert run(["nerve", "--kind", "rezk", "--input", str(a)])[0] == 2
    assert run(["enumerate", "--from", str(a), "--to", str(b), "--kind", "functor"])[0] == 2


def test_cli_nps_file(tmp_path):
    F = enumerate_nps(walking_2cell(), walking_2iso())[0]
    p = tmp_path / "f.json"
    save(F, str(p))
    assert run(["verify", "--suite", "nps-axioms", str(p)])[0] == 0


def test_cli_corpus_command(tmp_path):
    code, text = run(["corpus", str(tmp_path / "c")])
    assert code == 0
    assert len(list((tmp_path / "c").glob("*.json"))) == len(default_corpus())
    code, _ = run(["verify", "--suite", "laws", "--corpus", str(tmp_path / "c")])
    assert code == 0
