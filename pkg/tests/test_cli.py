import json

import pytest

from ocvarieties.cli import main

DISTRIBUTIVE = r"x /\ (y \/ z) = (x /\ y) \/ (x /\ z)"
MODULAR = r"x /\ (y \/ (x /\ z)) = (x /\ y) \/ (x /\ z)"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--output", "structured")
    return code, json.loads(out)


@pytest.fixture
def a2_top(tmp_path):
    path = tmp_path / "sigma.txt"
    path.write_text("# A_2 generators\nx^2y = xyx\nxyx = yx^2\n")
    return str(path)


class TestAntichain:
    def test_a2(self, capsys):
        code, out, _ = run(capsys, "antichain", "--n", "2")
        assert code == 0
        assert "x^2y, xyx, yx^2" in out and "anti-chain: ok" in out and "hypothesis: ok" in out

    def test_violating_words(self, capsys):
        code, doc = structured(capsys, "antichain", "--words", "xy,x^2y^2")
        assert code == 1 and not doc["antichain"]
        assert doc["violating_pair"]["u"] == "xy" and doc["violating_pair"]["v"] == "x^2y^2"

    def test_a1_reports_swap(self, capsys):
        code, doc = structured(capsys, "antichain", "--n", "1")
        assert code == 1 and doc["hypothesis"] and not doc["antichain"]
        assert doc["violating_pair"]["xi"] == [["x", "y"], ["y", "x"]]

    @pytest.mark.parametrize("argv", [["--n", "0"], ["--words", "x^0"], []])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, "antichain", *argv)[0] == 2


class TestDeduce:
    def test_certificate(self, capsys, a2_top):
        code, doc = structured(capsys, "deduce", a2_top, "x^2y", "yx^2")
        assert code == 0 and doc["certificate"]["words"] == ["x^2y", "xyx", "yx^2"]

    def test_not_found_complete(self, capsys, tmp_path):
        empty = tmp_path / "empty.txt"
        empty.write_text("")
        code, out, _ = run(capsys, "deduce", str(empty), "xy", "yx")
        assert code == 1 and "complete" in out and "incomplete" not in out

    def test_reflexive(self, capsys, a2_top):
        code, doc = structured(capsys, "deduce", a2_top, "xyx", "xyx")
        assert code == 0 and doc["certificate"]["steps"] == []

    def test_incomplete(self, capsys, a2_top):
        code, doc = structured(capsys, "deduce", a2_top, "x^2y", "yx^2", "--max-depth", "1")
        assert code == 1 and doc["complete"] is False

    def test_unbalanced_system(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("xy = x\n")
        assert run(capsys, "deduce", str(bad), "xy", "x")[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "deduce", str(tmp_path / "nope"), "x", "x")[0] == 2


class TestLatticeCheck:
    def test_distributive_part3(self, capsys):
        code, doc = structured(capsys, "lattice-check", "part:3", DISTRIBUTIVE)
        assert code == 1
        assert doc["assignment"] == {"x": "a,b|c", "y": "a,c|b", "z": "a|b,c"}

    def test_modular_part3(self, capsys):
        assert run(capsys, "lattice-check", "part:3", MODULAR)[0] == 0

    def test_commutativity_part4(self, capsys):
        assert run(capsys, "lattice-check", "part:4", r"x \/ y = y \/ x")[0] == 0

    def test_budget(self, capsys):
        assert run(capsys, "lattice-check", "part:4", MODULAR, "--budget", "10")[0] == 2

    @pytest.mark.parametrize("spec", ["part:0", "part:9", "chain:3", "part:x"])
    def test_bad_spec(self, capsys, spec):
        assert run(capsys, "lattice-check", spec, "x = x")[0] == 2

    def test_syntax_error(self, capsys):
        code, _, err = run(capsys, "lattice-check", "part:2", r"x /\ = y")
        assert code == 2 and "position" in err


class TestVerify:
    def test_surjectivity(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "2", "surjectivity")
        assert code == 0 and "5/5 PASS" in out

    def test_antihom(self, capsys):
        code, doc = structured(capsys, "verify", "--n", "2", "antihom")
        assert code == 0 and doc["cases"] == doc["passed"] == 25

    def test_ideals(self, capsys):
        code, doc = structured(capsys, "verify", "ideals", "--size", "5", "--split", "2")
        assert code == 0 and doc["ideal_size"] == 10 and doc["alpha"] == "a,b|c,d,e"

    def test_antihom_guard(self, capsys):
        assert run(capsys, "verify", "--n", "4", "antihom")[0] == 2

    def test_a1_context_rejected(self, capsys):
        assert run(capsys, "verify", "--n", "1", "surjectivity")[0] == 2

    def test_ideals_needs_size(self, capsys):
        assert run(capsys, "verify", "ideals")[0] == 2


class TestFalsify:
    def test_distributive(self, capsys):
        code, doc = structured(capsys, "falsify", DISTRIBUTIVE, "--max-n", "3")
        assert code == 0 and doc["n"] == 2
        assert doc["dual"] == r"x \/ y /\ z = (x \/ y) /\ (x \/ z)"
        assert doc["lhs_value"] != doc["rhs_value"]

    def test_modular(self, capsys):
        code, doc = structured(capsys, "falsify", MODULAR, "--max-n", "4")
        assert code == 0 and doc["n"] == 3

    def test_trivial(self, capsys):
        code, _, err = run(capsys, "falsify", r"x /\ y = y /\ x")
        assert code == 2 and "every lattice" in err

    def test_not_found(self, capsys):
        assert run(capsys, "falsify", MODULAR, "--max-n", "2")[0] == 1

    def test_byte_stable(self, capsys):
        outs = [run(capsys, "falsify", MODULAR, "--output", "structured")[1] for _ in range(2)]
        assert outs[0] == outs[1]

    def test_human_output(self, capsys):
        code, out, _ = run(capsys, "falsify", DISTRIBUTIVE, "--verify-antihom", "--timings")
        assert code == 0 and "Depth1AntiHom" in out and "timings:" in out


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "ocvarieties", "antichain", "--n", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "x^3y" in res.stdout
