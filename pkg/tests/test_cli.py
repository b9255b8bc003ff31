import csv
import io as stdio
import json
import subprocess
import sys

import numpy as np
import pytest

from latred import cli, io, reduction
from latred.automaton import behavior, iter_words
from latred.errors import InternalInvariantError, ParseError
from latred.generate import random_automaton
from latred.lattice import LatticeSpec
from latred.reduction import reduce

from conftest import EXAMPLE1_PATH


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example1.json"
    path.write_text(EXAMPLE1_PATH.read_text())
    return path


def same_automaton(A, B):
    return (
        A.alphabet == B.alphabet
        and A.lattice == B.lattice
        and np.array_equal(A.sigma.data, B.sigma.data)
        and np.array_equal(A.tau.data, B.tau.data)
        and all(np.array_equal(A.delta[x].data, B.delta[x].data) for x in A.alphabet)
    )


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return path


# -- documents ---------------------------------------------------------------------


def test_round_trip(lattice, tmp_path):
    rng = np.random.default_rng(51)
    for i in range(10):
        A = random_automaton(int(rng.integers(1, 6)), int(rng.integers(1, 4)), lattice, rng, grid=10)
        path = tmp_path / f"a{i}.json"
        io.dump_automaton(A, path)
        B = io.load_automaton(path)
        assert same_automaton(A, B)
        assert io.dump_automaton(B) == path.read_text()


def test_boolean_documents_use_integers(example1):
    doc = io.automaton_to_dict(example1)
    assert doc["lattice"] == "boolean" and doc["epsilon"] == 0
    assert all(isinstance(v, int) for v in doc["sigma"])


def test_parse_errors(tmp_path):
    good = io.automaton_to_dict(random_automaton(2, 1, LatticeSpec.of("godel"), 0))
    for broken in (
        {k: v for k, v in good.items() if k != "tau"},
        {**good, "lattice": "heyting"},
        {**good, "states": 0},
        {**good, "sigma": [1]},
        {**good, "sigma": ["a", 1]},
        {**good, "delta": {"q": [[1, 0], [0, 1]]}},
        [1, 2],
    ):
        with pytest.raises(ParseError):
            io.automaton_from_dict(broken)
    with pytest.raises(ParseError):
        io.load_automaton(write(tmp_path, "bad.json", "{not json"))
    with pytest.raises(ParseError):
        io.load_automaton(tmp_path / "missing.json")


def test_report_document_round_trip(example1):
    _, report = reduce(example1, "li", 2, factorize=True)
    doc = json.loads(json.dumps(io.report_to_dict(report, 5, None)))
    back, verified_to, counterexample = io.report_from_dict(doc)
    assert back == report and verified_to == 5 and counterexample is None
    with pytest.raises(ParseError):
        io.report_from_dict({"method": "ri"})


# -- reduce ------------------------------------------------------------------------


def test_reduce_ri(capsys, example_file):
    code, out, err = run(capsys, "reduce", example_file, "--method", "ri", "--k", 2)
    assert code == cli.EXIT_OK
    assert json.loads(out)["states"] == 4
    report = json.loads(err)
    assert report["d_sequence"] == [2, 3, 4]
    assert report["reduced_states"] == 4 and report["equivalence_checked_to"] == 2


def test_reduce_wri_verify(capsys, example_file, tmp_path):
    out_path, report_path = tmp_path / "r.json", tmp_path / "report.json"
    code, out, err = run(
        capsys, "reduce", example_file, "--method", "wri", "--k", 1, "--verify-to", 6,
        "--output", out_path, "--report", report_path,
    )
    assert code == 0 and out == "" and err == ""
    assert io.load_automaton(out_path).n == 3
    report = json.loads(report_path.read_text())
    assert report["verified_to"] == 6 and report["counterexample"] is None


def test_reduce_reports_counterexample_above_k(capsys, example_file):
    A = io.load_automaton(example_file)
    reduced, _ = reduce(A, "wri", 0)
    expected = next((u for u in iter_words(A.alphabet, 3) if behavior(A, u) != behavior(reduced, u)), None)
    code, _, err = run(capsys, "reduce", example_file, "--method", "wri", "--k", 0, "--verify-to", 3)
    assert code == 0
    found = json.loads(err)["counterexample"]
    if expected is None:
        assert found is None
    else:
        assert tuple(found["word"]) == expected and found["length"] == len(expected)


def test_reduce_k0_keeps_empty_word(capsys, tmp_path, lattice):
    A = random_automaton(4, 2, lattice, 52)
    path = tmp_path / "a.json"
    io.dump_automaton(A, path)
    for method in ("ri", "li", "wri", "wli"):
        code, out, _ = run(capsys, "reduce", path, "--method", method, "--k", 0)
        assert code == 0
        assert lattice.value_eq(behavior(io.automaton_from_dict(json.loads(out)), ()), behavior(A, ()))


def test_reduce_factorize(capsys, example_file):
    code, out, err = run(capsys, "reduce", example_file, "--method", "ri", "--k", 3, "--factorize")
    assert code == 0
    assert json.loads(err)["factorized"] == json.loads(out)["states"] == 5


# -- verify -----------------------------------------------------------------------


def test_verify_same(capsys, example_file):
    code, out, _ = run(capsys, "verify", example_file, example_file, "--k", 5)
    assert code == 0 and out.startswith("equal")


def test_verify_reduced(capsys, example_file, tmp_path):
    reduced_path = tmp_path / "r.json"
    run(capsys, "reduce", example_file, "--method", "ri", "--k", 2, "--output", reduced_path)
    code, out, _ = run(capsys, "verify", example_file, reduced_path, "--k", 2)
    assert code == 0


def test_verify_witness(capsys, example_file, tmp_path):
    A = io.load_automaton(example_file)
    reduced, _ = reduce(A, "wri", 0)
    path = tmp_path / "r0.json"
    io.dump_automaton(reduced, path)
    expected = next((u for u in iter_words(A.alphabet, 1) if behavior(A, u) != behavior(reduced, u)), None)
    code, out, _ = run(capsys, "verify", example_file, path, "--k", 1)
    if expected is None:
        assert code == 0
    else:
        assert code == cli.EXIT_DIFFER
        assert out.startswith(f"differ: word {' '.join(expected)} ")


# -- exit codes -------------------------------------------------------------------


def test_exit_parse(capsys, tmp_path, example_file):
    assert run(capsys, "reduce", tmp_path / "nope.json", "--method", "ri", "--k", 1)[0] == cli.EXIT_PARSE
    assert run(capsys, "reduce", write(tmp_path, "b.json", "[}"), "--method", "ri", "--k", 1)[0] == cli.EXIT_PARSE
    with pytest.raises(SystemExit) as info:
        cli.main(["reduce", str(example_file), "--method", "ri"])
    assert info.value.code == cli.EXIT_PARSE
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == cli.EXIT_PARSE


def test_exit_validation(capsys, tmp_path, example_file):
    doc = json.loads(example_file.read_text())
    doc["sigma"][0] = 0.5
    assert run(capsys, "reduce", write(tmp_path, "v.json", doc), "--method", "ri", "--k", 1)[0] == cli.EXIT_VALIDATION
    doc = io.automaton_to_dict(random_automaton(2, 1, LatticeSpec.of("godel"), 0))
    doc["tau"][1] = 1.5
    assert run(capsys, "verify", write(tmp_path, "w.json", doc), example_file, "--k", 1)[0] == cli.EXIT_VALIDATION
    assert run(capsys, "reduce", example_file, "--method", "ri", "--k", -1)[0] == cli.EXIT_VALIDATION


def test_exit_cap(capsys, example_file, monkeypatch):
    monkeypatch.setenv("LATRED_WORD_CAP", "100")
    code, _, err = run(capsys, "reduce", example_file, "--method", "wri", "--k", 8)
    assert code == cli.EXIT_CAP and "WordCapExceeded" in err


def test_exit_internal(capsys, example_file, monkeypatch):
    def boom(*args, **kwargs):
        raise InternalInvariantError("broken")

    monkeypatch.setattr(cli, "reduce", boom)
    assert run(capsys, "reduce", example_file, "--method", "ri", "--k", 1)[0] == cli.EXIT_INTERNAL


def test_console_entry_point(example_file):
    proc = subprocess.run(
        [sys.executable, "-m", "latred.cli", "verify", str(example_file), str(example_file), "--k", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("equal")


# -- bench and behavior -----------------------------------------------------------


def parse_csv(text):
    return list(csv.reader(stdio.StringIO(text)))


def test_bench_csv(capsys):
    argv = ["bench", "--sizes", "4,6", "--letters", "2", "--k", "1,2", "--method", "wli", "--seed", "3", "--repeat", "1"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    rows = parse_csv(out)
    assert rows[0] == ["n", "m", "k", "method", "millis", "d_final"]
    assert [(r[0], r[2]) for r in rows[1:]] == [("4", "1"), ("4", "2"), ("6", "1"), ("6", "2")]
    assert all(float(r[4]) >= 0 for r in rows[1:])
    # same seed, same CSV apart from the timings
    _, again, _ = run(capsys, *argv)
    strip = lambda rs: [r[:4] + r[5:] for r in rs]
    assert strip(parse_csv(again)) == strip(rows)


def test_bench_d_final_matches_reduction(capsys):
    _, out, _ = run(capsys, "bench", "--sizes", "5", "--k", "2", "--method", "ri", "--lattice", "product", "--seed", "9", "--repeat", "1")
    row = parse_csv(out)[1]
    A = random_automaton(5, 2, LatticeSpec.of("product"), np.random.default_rng([9, 5, 2]))
    assert int(row[5]) == reduction.method_matrix(A, "ri", 2).d


def test_behavior_command(capsys, example_file):
    code, out, _ = run(capsys, "behavior", example_file, "", "x", "x y")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "<empty>\t1.0" and lines[1] == "x\t1.0"
    assert lines[2].startswith("x y\t")
