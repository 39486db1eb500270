import json

import pytest

from groupomega import matchings, tensors, tpp
from groupomega.cli import EXIT_BUDGET, EXIT_FALSE, EXIT_OK, EXIT_USAGE, main
from groupomega.young import triangle_shape, young_subgroup

from conftest import group


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    data = json.loads(out)
    assert data["schema"] == 1
    return code, data


def test_group_info(capsys):
    code, d = run_json(capsys, "group", "info", "sym:4")
    assert code == EXIT_OK and d["order"] == 24 and d["classes"] == 5 and d["command"] == "group info"
    code, out, _ = run(capsys, "--json", "group", "info", "cyclic:6")
    assert json.loads(out)["order"] == 6


def test_jennings_and_dims(capsys):
    code, d = run_json(capsys, "jennings", "cyclic:8", "-p", "2")
    assert d["pDegrees"] == [1, 1, 0, 1] and d["term_orders"] == [8, 4, 2, 2, 1]
    code, d = run_json(capsys, "ideal-dims", "ut:3,2", "-p", "2")
    assert d["dims"] == d["jennings_dims"] == [8, 7, 5, 3, 1, 0]


def test_dump_basis(capsys, tmp_path):
    from groupomega.fields import Subspace

    code, d = run_json(capsys, "ideal-dims", "cyclic:4", "-p", "2", "--dump-basis", str(tmp_path))
    assert code == EXIT_OK and len(d["basisFiles"]) == 5
    S = Subspace.from_text((tmp_path / "I2.txt").read_text())
    assert S.dim == 2 and S.ambient == 4


def test_slice_bound_schema(capsys):
    code, d = run_json(capsys, "slice-bound", "ut:4,2", "-p", "2")
    for key in ("order", "pDegrees", "deltaG", "deltaPrimeG", "hoeffding", "idealExact", "argmin", "trivial"):
        assert key in d
    assert d["pDegrees"] == [3, 2, 1] and d["deltaG"] == "5" and d["deltaPrimeG"] == "5/6"
    assert d["idealExact"] == 43 and d["trivial"] == 64


def test_nilpotent_bound(capsys):
    code, d = run_json(capsys, "nilpotent-bound", "product:abelian:2,2,2,2|cyclic:3")
    assert d["bound"] == 33 and d["prime"] == 2 and d["perPrime"] == {"2": 33, "3": 48}
    code, out, err = run(capsys, "nilpotent-bound", "sym:3")
    assert code == EXIT_USAGE and "nilpotent" in err


def test_tensor_commands(capsys, tmp_path):
    f = tmp_path / "t.txt"
    code, out, _ = run(capsys, "tensor", "build", "--mult", "cyclic:4", "-p", "2")
    f.write_text(out)
    assert tensors.Tensor3.from_text(out) == tensors.mult_tensor(group("cyclic:4"), 2)
    code, d = run_json(capsys, "tensor", "flatrank", str(f))
    assert code == EXIT_OK and d["flatRank"] == 4 and d["r"] + d["c"] == 4
    code, d = run_json(capsys, "tensor", "slicerank", str(f))
    assert d["sliceRank"] == 4 and set(d["witness"]) == {"A", "B", "C"}
    code, out, _ = run(capsys, "tensor", "slicerank", str(f))
    assert "sliceRank: 4" in out


def test_tensor_cap_is_budget_error(capsys, tmp_path):
    f = tmp_path / "d.txt"
    f.write_text(tensors.diagonal_tensor(6, 2).to_text())
    code, _, err = run(capsys, "tensor", "slicerank", str(f))
    assert code == EXIT_BUDGET


def _triangle_file(tmp_path, m):
    sh = triangle_shape(m)
    S = group(f"sym:{sh.n}")
    H = [list(young_subgroup(S, p)) for p in sh.partitions]
    f = tmp_path / "tri.json"
    f.write_text(json.dumps({"group": f"sym:{sh.n}", "triples": [{"S": H[0], "T": H[1], "U": H[2]}]}))
    return f


def test_tpp_verify(capsys, tmp_path):
    f = _triangle_file(tmp_path, 2)
    code, d = run_json(capsys, "tpp", "verify", str(f))
    assert code == EXIT_OK and d["verdict"] is True
    assert d["necessary"]["classes"] == 3 and d["necessary"]["vacuous"] is False
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": "sym:3", "triples": [{"S": [0, 1, 2, 3, 4, 5], "T": [0, 1], "U": [0, 1]}]}))
    code, d = run_json(capsys, "tpp", "verify", str(bad))
    assert code == EXIT_FALSE and d["verdict"] is False and len(d["counterexample"]) == 3


def test_budget_exit(capsys, tmp_path, monkeypatch):
    f = _triangle_file(tmp_path, 3)
    code, _, err = run(capsys, "tpp", "verify", str(f), "--budget", "10")
    assert code == EXIT_BUDGET and "budget" in err
    monkeypatch.setenv("GROUPOMEGA_BUDGET", "10")
    code, _, _ = run(capsys, "tpp", "verify", str(f))
    assert code == EXIT_BUDGET
    code, _, _ = run(capsys, "--budget", "100000", "tpp", "verify", str(f))
    assert code == EXIT_OK


def test_stpp_and_omega(capsys, tmp_path):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"group": "cyclic:8", "triples": [{"S": [0], "T": [0, 1], "U": [0]}, {"S": [0], "T": [2, 3], "U": [0]}]}))
    code, d = run_json(capsys, "stpp", "verify", str(f))
    assert code == EXIT_FALSE and len(d["counterexample"]) == 9 and d["packing"]["sums"] == [4, 4, 2]
    g = tmp_path / "o.json"
    g.write_text(json.dumps({"group": "sym:3", "triples": [{"S": [0, 1], "T": [0, 2], "U": [0, 3]}]}))
    code, d = run_json(capsys, "omega", str(g))
    assert code == EXIT_OK and d["omegaStar"] == 3 and d["bound"] is False
    code, d = run_json(capsys, "omega", str(g), "--degrees", "1,1,2")
    assert d["omegaStar"] == 3
    code, _, err = run(capsys, "omega", str(g), "--degrees", "1,1,1")
    assert code == EXIT_USAGE


def test_matching_commands(capsys, tmp_path):
    code, d = run_json(capsys, "matching", "cyclic", "-m", "100")
    assert code == EXIT_OK and d["cardinality"] == 50 and d["verdict"] is True
    out = tmp_path / "c3.json"
    code, d = run_json(capsys, "matching", "cyclic", "-m", "3", "--out", str(out))
    code, d = run_json(capsys, "matching", "verify", str(out))
    assert code == EXIT_OK and d["border"] is True
    code, d = run_json(capsys, "matching", "chain", "abelian:5,5", "-p", "5")
    assert d["cardinality"] == 9 and d["bound"] == "25/4"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": "cyclic:5", "s": [0, 1], "t": [0, 1], "u": [0, 1]}))
    code, d = run_json(capsys, "matching", "verify", str(bad))
    assert code == EXIT_FALSE and d["counterexample"] == [1, 1, 1]


def test_matching_extend(capsys, tmp_path):
    # Z/9, N = <3>; inner in N written with G indices, outer with representatives
    inner = matchings.BorderMatching(group("cyclic:9"), (0, 3), (0, 3), (0, 3), (0, 1), (0, 1), (0, -2))
    outer = matchings.BorderMatching(group("cyclic:9"), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, -2))
    fi, fo = tmp_path / "i.json", tmp_path / "o.json"
    fi.write_text(matchings.dump_matching(inner))
    fo.write_text(matchings.dump_matching(outer))
    code, d = run_json(capsys, "matching", "extend", "cyclic:9", "--normal-gens", "3", "--inner", str(fi), "--outer", str(fo))
    assert code == EXIT_OK and d["cardinality"] == 4 and d["inner"] == 2 and d["outer"] == 2


def test_young_commands(capsys):
    code, d = run_json(capsys, "young", "triangle", "-m", "13")
    assert d["n"] == 91 and isinstance(d["subgroupOrders"][0], str)
    code, d = run_json(capsys, "young", "hexagon", "-s", "6")
    assert d["n"] == 91
    code, d = run_json(capsys, "young", "ratio", "--hexagon", "6", "--triangle", "13")
    assert d["ratio"] == "2940/1573"
    code, d = run_json(capsys, "young", "scan", "--c", "0.01", "--d", "1", "--shapes", "triangle:2..13", "hexagon:2..6")
    assert code == EXIT_OK and d["allPass"] and len(d["rows"]) == 17
    code, d = run_json(capsys, "young", "scan", "--c", "5", "--d", "0", "--shapes", "triangle:2..4")
    assert code == EXIT_FALSE
    code, _, _ = run(capsys, "young", "ratio", "--hexagon", "6")
    assert code == EXIT_USAGE


def test_explore(capsys):
    code, d = run_json(capsys, "explore", "delta-prime", "--c", "-1")
    assert code == EXIT_OK and len(d["rows"]) == 13 and d["bandRatio"] <= 4


@pytest.mark.parametrize(
    "argv",
    [["group", "info", "cyclic:0"], ["group", "info", "foo:2"], ["tensor", "flatrank", "/nonexistent/file"], ["jennings", "cyclic:6", "-p", "2"]],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2


def test_text_output(capsys):
    code, out, _ = run(capsys, "slice-bound", "abelian:2,2", "-p", "2")
    assert "idealExact: 3" in out


def test_cli_matches_library(capsys):
    code, d = run_json(capsys, "slice-bound", "abelian:2,2,2", "-p", "2")
    from groupomega.bounds import ideal_bound

    assert d["idealExact"] == ideal_bound(group("abelian:2,2,2"), 2).ideal_exact
    assert tpp.nec_tpp_check(6, (2, 2, 2), 3).vacuous is False
