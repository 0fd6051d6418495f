import io
import json

import pytest

from aspherix import __version__
from aspherix.cli import main
from aspherix.corpus import BUNDLED


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    data = json.loads(out)
    assert data["tool"] == "aspherix"
    assert data["version"] == __version__
    assert "cd2_asserted" in data["assumptions"]
    return data["result"]


@pytest.fixture
def torus(tmp_path):
    path = tmp_path / "torus.pres"
    path.write_text("gens: a b\nrel: abAB\n")
    return str(path)


def test_homology_torus(torus):
    result = run_json("homology", torus)
    assert result["h1"] == {"free_rank": 2, "text": "Z^2", "torsion": []}
    assert result["h2_rank"] == 1
    assert result["euler"] == 0


def test_homology_text(torus):
    code, out, _ = run("homology", torus, "--text")
    assert code == 0
    assert "H_1(K) = Z^2" in out
    assert "H_2(K) = Z^1" in out


def test_snf_csv_and_json(tmp_path):
    (tmp_path / "m.csv").write_text("2,4\n6,8\n")
    (tmp_path / "m.json").write_text("[[2, 4], [6, 8]]")
    for name in ("m.csv", "m.json"):
        assert run_json("snf", str(tmp_path / name))["divisors"] == [2, 4]


def test_snf_bad_input(tmp_path):
    (tmp_path / "m.csv").write_text("2,x\n")
    code, _, err = run("snf", str(tmp_path / "m.csv"))
    assert code == 2
    assert "not an integer matrix" in err


def test_jacobian_augmented_csv(torus):
    code, out, _ = run("jacobian", torus, "--augmented", "--format", "csv")
    assert code == 0
    assert out == "0\n0\n"


def test_jacobian_json(torus):
    result = run_json("jacobian", torus)
    assert result["model"] == {"kind": "free", "rank": 2}
    assert len(result["entries"]) == 2


def test_aspherical_sphere():
    code, out, _ = run("aspherical", str(BUNDLED / "sphere.pres"),
                       "--idempotent", str(BUNDLED / "sphere.E.json"), "--assert-cd2")
    assert code == 0
    data = json.loads(out)
    assert data["result"]["verdict"] == "not_aspherical"
    assert data["assumptions"]["cd2_asserted"] is True


def test_aspherical_torus_text():
    code, out, _ = run("aspherical", str(BUNDLED / "torus.pres"),
                       "--idempotent", str(BUNDLED / "torus.E.json"), "--assert-cd2", "--text")
    assert code == 0
    assert "aspherical" in out


def test_aspherical_without_cd2_is_inconclusive():
    result = run_json("aspherical", str(BUNDLED / "klein.pres"))
    assert result["verdict"] == "inconclusive"


def test_invalid_idempotent_exit_1(tmp_path, torus):
    E = tmp_path / "E.json"
    E.write_text(json.dumps({"model": {"kind": "free_abelian", "rank": 2}, "entries": [[[[[0, 0], 2]]]]}))
    code, _, err = run("aspherical", torus, "--idempotent", str(E), "--assert-cd2")
    assert code == 1
    assert "InvalidIdempotentError" in err


def test_rank_check(tmp_path):
    E = tmp_path / "E.json"
    E.write_text(json.dumps({"model": {"kind": "abelian", "orders": [2]},
                             "entries": [[[[[0], 1, 2], [[1], 1, 2]]]]}))
    result = run_json("rank-check", str(E))
    assert result["t_rank"] == "1/2"
    assert result["eps_rank"] == 1
    assert result["agree"] is False
    assert result["counterexample"]["kind"] == "counterexample_candidate"


def test_rank_check_group_override(tmp_path):
    E = tmp_path / "E.json"
    E.write_text(json.dumps({"entries": [[[["", 1]], []], [[], []]]}))
    result = run_json("rank-check", str(E), "--group", "free:2")
    assert result["t_rank"] == "1" and result["agree"] is True


def test_tietze_stabilize(torus):
    code, out, _ = run("tietze", torus, "--stabilize", "1")
    assert code == 0
    assert out == "gens: a b g1\nrel: a b a^-1 b^-1\nrel: g1\n"


def test_tietze_transvect_json(torus):
    result = run_json("tietze", torus, "--add-trivial", "1", "--transvect", "1", "0", "--word", "a", "--json")
    assert result["presentation"].endswith("rel: aabABA\n")
    assert result["after"]["h2_rank"] == result["before"]["h2_rank"] + 1


def test_tietze_bad_index(torus):
    code, _, err = run("tietze", torus, "--transvect", "0", "0")
    assert code == 1
    assert "TietzeError" in err


def test_corpus_bundled():
    result = run_json("corpus", "--assert-cd2", "--fuzz", "1")
    s = result["summary"]
    assert result["directory"] == "<bundled>"
    assert s["errors"] == s["contradictions"] == s["fox_identity_failures"] == s["tietze_failures"] == 0
    verdicts = {e["name"]: e["report"]["verdict"] for e in result["entries"]}
    assert verdicts["torus.pres"] == "aspherical"
    assert verdicts["sphere.pres"] == "not_aspherical"
    assert verdicts["klein.pres"] == "aspherical"


def test_corpus_empty_dir(tmp_path):
    result = run_json("corpus", str(tmp_path))
    assert result["summary"]["files"] == 0
    assert result["entries"] == [] and result["errors"] == []


def test_corpus_one_corrupted_file(tmp_path):
    (tmp_path / "good.pres").write_text("gens: a b\nrel: abAB\n")
    (tmp_path / "bad.pres").write_text("gens: a\nrel: a$\n")
    code, out, _ = run("corpus", str(tmp_path))
    assert code == 1
    result = json.loads(out)["result"]
    assert result["summary"]["errors"] == 1
    assert result["summary"]["analyzed"] == 1
    assert [e["name"] for e in result["errors"]] == ["bad.pres"]


def test_usage_errors_exit_2(tmp_path, torus):
    assert run("homology")[0] == 2
    assert run("homology", torus, "--bogus")[0] == 2
    assert run("homology", str(tmp_path / "missing.pres"))[0] == 2
    (tmp_path / "bad.pres").write_text("gens: a\nrel: ab\n")
    code, _, err = run("homology", str(tmp_path / "bad.pres"))
    assert code == 2
    assert "line 2" in err


def test_output_is_byte_stable(torus):
    first = run("aspherical", str(BUNDLED / "torus.pres"), "--idempotent", str(BUNDLED / "torus.E.json"))
    second = run("aspherical", str(BUNDLED / "torus.pres"), "--idempotent", str(BUNDLED / "torus.E.json"))
    assert first == second
    assert run("corpus", "--fuzz", "2", "--seed", "7") == run("corpus", "--fuzz", "2", "--seed", "7")


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out
