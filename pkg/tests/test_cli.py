"""Command-line interface: verbs, exit codes and JSON output."""

import json

import pytest

from posmat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_gamma_of_block_cycle(capsys):
    code, out, _ = run(capsys, "gamma", "fixture:block-cycle-9")
    assert code == 0 and out.strip() == "3"


def test_gamma_of_periodic_matrix_exits_one(tmp_path, capsys):
    f = tmp_path / "c.txt"
    f.write_text("3 3\n0 1 0\n0 0 1\n1 0 0\n")
    code, out, _ = run(capsys, "gamma", str(f))
    assert code == 1 and "periodic" in out


def test_gk_false_prints_certificate(capsys):
    code, out, _ = run(capsys, "gk", "fixture:column-degree-not-g2-6", "--k", "2")
    assert code == 1
    assert "F = {1,2,3}, D_F = {4}" in out


def test_gk_index(capsys):
    code, out, _ = run(capsys, "gk-index", "fixture:hollow-3")
    assert code == 0 and out.strip() == "2"


def test_pattern_grid_from_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("0**\n*0*\n**0\n"))
    code, out, _ = run(capsys, "gk-index", "--pattern", "-")
    assert code == 0 and out.strip() == "2"


def test_classify_reports_every_predicate(capsys):
    code, out, _ = run(capsys, "classify", "fixture:stochastic-primitive-2", "--certificates")
    assert code == 0
    for key in ("irreducible", "primitive", "scrambling", "gamma"):
        assert f"{key}:" in out


def test_bounds_lists_results(capsys):
    code, out, _ = run(capsys, "bounds", "fixture:block-cycle-9", "--k", "3")
    assert code == 0
    assert "gk-diagonal-product: bound 3, attained 3, slack 0, holds" in out


def test_verify_wielandt_line(capsys):
    code, out, _ = run(capsys, "verify", "wielandt", "--n", "6")
    assert code == 0
    assert out.strip() == "wielandt: gamma=26, bound 26, slack 0, holds"


def test_verify_unmet_hypotheses_exits_two(capsys):
    code, out, _ = run(capsys, "verify", "full-diagonal-power", "fixture:hollow-3")
    assert code == 2 and "hypotheses not met" in out


def test_verify_missing_parameter_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "i-plus-p-power", "fixture:hollow-3")
    assert code == 2 and "--k" in err


def test_verify_random_summary(capsys):
    code, out, _ = run(capsys, "verify", "girth-power", "--random", "20", "--seed", "5")
    assert code == 0 and "20 instances, 20 with hypotheses met, 0 violations" in out


def test_graph_verbs(capsys):
    code, out, _ = run(capsys, "graph", "kappa", "fixture:petersen")
    assert code == 0 and out.splitlines()[0] == "3"
    assert run(capsys, "graph", "check-k", "fixture:complete-4", "3")[0] == 0
    code, out, _ = run(capsys, "graph", "check-k", "fixture:petersen", "4")
    assert code == 1 and "outside neighbours" in out
    code, out, _ = run(capsys, "graph", "audit", "fixture:petersen")
    assert code == 0 and "DISAGREE" not in out


def test_generate_and_read_back(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "wielandt", "4")
    assert code == 0
    f = tmp_path / "w.txt"
    f.write_text(out)
    assert run(capsys, "gamma", str(f))[1].strip() == "10"


def test_generate_fixture_directory(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "fixture", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "petersen.graph").exists()
    assert (tmp_path / "product-pair-2.txt").exists()


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "fixture:stochastic-primitive-2")
    assert code == 0 and "0.333333333333 0.666666666667" in out


def test_json_is_deterministic_for_a_seed(capsys):
    argv = ["--json", "--seed", "12345", "generate", "random", "stochastic", "5", "--filter", "primitive"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == "posmat/1" and doc["result"]["seed"] == 12345


def test_global_flags_after_the_verb(capsys):
    code, out, _ = run(capsys, "gk-index", "fixture:hollow-3", "--json")
    assert code == 0 and json.loads(out)["result"] == {"gk_index": 2}


def test_max_n_cap_message(capsys):
    code, _, err = run(capsys, "classify", "fixture:block-cycle-9", "--max-n", "4")
    assert code == 2 and "cap 4" in err and "--max-n" in err


@pytest.mark.parametrize("argv", [
    ["--seed", "-1", "gamma", "fixture:hollow-3"],
    ["--seed", str(2**64), "gamma", "fixture:hollow-3"],
    ["gamma", "no/such/file.txt"],
    ["gamma", "fixture:petersen"],
    ["frobnicate"],
])
def test_bad_input_exits_two(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_names_the_line(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("2 2\n1 1\n1 x\n")
    code, _, err = run(capsys, "gamma", str(f))
    assert code == 2 and "line 3" in err
