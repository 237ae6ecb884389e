import json
import subprocess
import sys

from pshkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mult_text(capsys):
    assert run(capsys, "symfunc", "mult", "--a", "1", "--b", "1") == (0, "(2) + (1,1)\n", "")


def test_mult_json_input_and_output(capsys):
    elem = json.dumps({"arity": 1, "terms": [{"index": [[1]], "coeff": 2}]})
    code, out, _ = run(capsys, "symfunc", "mult", "--a", elem, "--b", "[1]", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["arity"] == 1
    assert {tuple(t["index"][0]): t["coeff"] for t in doc["terms"]} == {(2,): 2, (1, 1): 2}


def test_inner_and_basis(capsys):
    assert run(capsys, "symfunc", "inner", "--a", "2,1", "--b", "2,1")[1] == "1\n"
    assert run(capsys, "symfunc", "basis", "--kind", "p", "--n", "3")[1] == "(3) - (2,1) + (1,1,1)\n"


def test_malformed_json_exits_2(capsys):
    code, _, err = run(capsys, "symfunc", "mult", "--a", "{oops", "--b", "1")
    assert code == 2 and "error" in err


def test_unknown_subcommand_exits_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_psh_check_pass_and_mutant(capsys):
    code, out, _ = run(capsys, "psh", "check", "-D", "4")
    assert code == 0 and out.startswith("PASS psh_axioms")
    code, out, _ = run(capsys, "psh", "check", "-D", "4", "--mutant", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and not doc["ok"] and doc["axioms"][0]["witness"]["coeff"] == -1


def test_heis_act(capsys):
    assert run(capsys, "heis", "act", "--op", "0|1", "--on", "2,1", "-D", "4")[1] == "(2) + (1,1)\n"


def test_commutators_presentation_2_diagonal(capsys):
    code, out, _ = run(capsys, "heis", "commutators", "--presentation", "2", "--max", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    for r in doc["rows"]:
        k = r["k"]
        if k + r["l"]:
            expected = "0"
        else:
            expected = {1: "() ⊗ ()", -1: "-() ⊗ ()"}.get(k, f"{k}*() ⊗ ()")
        assert r["computed"] == expected
    code, text, _ = run(capsys, "heis", "commutators", "--presentation", "2", "--max", "3")
    lines = text.splitlines()
    assert lines[-1].startswith("PASS")
    row3 = lines[-2].split()
    assert row3[0] == "3" and row3[1] == "3" and set(row3[2:]) == {"0"}


def test_commutators_presentation_3_and_1(capsys):
    code, out, _ = run(capsys, "heis", "commutators", "--presentation", "3", "--max", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and [s["variant"] for s in doc["sections"]] == ["literal", "swapped"]
    assert doc["sections"][0]["ok"] is False and doc["sections"][1]["ok"] is True
    code, _, _ = run(capsys, "heis", "commutators", "--presentation", "3", "--max", "2", "--variant", "literal")
    assert code == 1
    code, out, _ = run(capsys, "heis", "commutators", "--presentation", "1", "--max", "2")
    assert code == 0 and "n/a presentation 1" in out


def test_ssh_deltam_empty_F(capsys):
    code, out, _ = run(capsys, "ssh", "verify-deltam", "--F", "", "-D", "4", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["F"] == "0"
    assert all(r["size"] == r["rank"] for r in doc["mate"]["ranks"])


def test_ssh_deltam_bad_F(capsys):
    assert run(capsys, "ssh", "verify-deltam", "--F", "3", "-D", "3")[0] == 2
    assert run(capsys, "ssh", "verify-deltam", "--F", "1,2", "-D", "4")[0] == 2


def test_ssh_perturbed_fails(capsys):
    assert run(capsys, "ssh", "verify-hopf", "-D", "3", "--perturb", "--no-cubes")[0] == 1


def test_wreath(capsys, tmp_path):
    assert run(capsys, "wreath", "verify", "--table", "s3.json", "-D", "3")[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x", "class_sizes": [1, 1], "characters": [[1, 1], [1, 0]]}', encoding="utf-8")
    assert run(capsys, "wreath", "verify", "--table", str(bad))[0] == 2
    assert run(capsys, "wreath", "verify")[0] == 2


def test_degree_must_be_positive(capsys):
    assert run(capsys, "psh", "check", "-D", "0")[0] == 2


def test_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "pshkit.cli", "heis", "verify", "-D", "4", "--max-bidegree", "2", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["ok"]


def test_selftest_exits_zero(capsys):
    code, out, _ = run(capsys, "selftest", "-D", "5")
    assert code == 0 and out.splitlines()[-1] == "PASS selftest"
