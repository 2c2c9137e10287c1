import json

from occufrac.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


def test_occupancy_known_value(capsys):
    code, report, _ = run_cli(capsys, "occupancy", "--graph", "kdd:3", "--lambda", "1")
    assert code == 0
    assert report["results"]["occupancy"] == "4/15"
    assert report["verdict"] == "pass"


def test_poly_json_shape(capsys):
    code, report, _ = run_cli(capsys, "poly", "--graph", "cycle:6", "--lambda", "1")
    assert code == 0
    assert report["results"]["independence"] == ["1", "6", "9", "2"]
    assert report["results"]["matching"] == ["1", "6", "9", "2"]
    assert report["results"]["occupancy"] == "5/18"
    assert report["results"]["edge_occupancy"] == "5/18"


def test_certify_hardcore(capsys):
    code, report, _ = run_cli(capsys, "certify", "hardcore", "--d", "3", "--lambda", "1")
    assert code == 0
    assert report["results"]["optimum"] == "4/15"
    assert report["results"]["optimum"] == report["results"]["lp_optimum"]
    assert len(report["results"]["slacks"]) == 8


def test_certify_matching(capsys):
    code, report, _ = run_cli(capsys, "certify", "matching", "--d", "3", "--lambda", "1")
    assert code == 0
    block = report["results"]["1"]
    assert block["optimum"] == "7/34"
    assert block["laguerre"] is True
    assert len(block["slacks"]) == 14


def test_zero_fugacity_is_usage_error(capsys):
    code, report, err = run_cli(capsys, "certify", "matching", "--d", "3", "--lambda", "0")
    assert code == 2
    assert report is None
    assert "positive" in err


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["nonsense"]) == 2


def test_capability_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "poly", "--graph", "cycle:40")
    assert code == 3
    assert "budget" in err or "capability" in err


def test_tree_command(capsys):
    code, report, _ = run_cli(
        capsys, "tree", "--d", "3", "--lambda", "1", "--tol", "1/1000000"
    )
    assert code == 0
    assert report["results"]["uniqueness_threshold"] == "4"


def test_verify_lower_bound_builtin(capsys):
    code, report, _ = run_cli(capsys, "verify", "lower-bound", "--grid", "1")
    assert code == 0
    assert report["verdict"] == "pass"
    assert len(report["results"]["checks"]) == 11


def test_verify_given_size_builtin(capsys):
    code, report, _ = run_cli(capsys, "verify", "given-size")
    assert code == 0
    assert report["verdict"] == "pass"


def test_counts_and_file_input(tmp_path, capsys):
    path = tmp_path / "graph.el"
    path.write_text("3\n0 1\n1 2\n")
    code, report, _ = run_cli(
        capsys, "counts", "--graph", f"file:{path}", "--format", "edgelist"
    )
    assert code == 0
    assert report["results"]["independent_sets"] == ["1", "3", "1"]

    g6 = tmp_path / "graph.g6"
    g6.write_text("C~\n")
    code, report, _ = run_cli(capsys, "counts", "--graph", f"file:{g6}")
    assert code == 0
    assert report["results"]["matchings"] == ["1", "6", "3"]


def test_conjectures_command(tmp_path, capsys):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("cycle:8\nhdn:2:8\n")
    code, report, _ = run_cli(
        capsys, "conjectures", "--corpus", str(corpus), "--format", "spec",
        "--d", "2", "--n", "8",
    )
    assert code == 0
    assert report["verdict"] == "pass"
    rows = report["results"]["independent"]
    assert rows[-1]["candidate_attains_max"] is True


def test_decimal_fugacity_rejected(capsys):
    code, _, err = run_cli(capsys, "occupancy", "--graph", "kdd:2", "--lambda", "0.5")
    assert code == 2


def test_selftest_quick(capsys):
    code, report, _ = run_cli(capsys, "selftest", "--quick")
    assert code == 0
    assert report["verdict"] == "pass"
    criteria = report["results"]["criteria"]
    assert len(criteria) == 10
    assert all(c["pass"] for c in criteria)


def test_verify_lower_bound_corpus_file(tmp_path, capsys):
    from occufrac.graphs import cycle, to_graph6

    path = tmp_path / "corpus.g6"
    path.write_text(to_graph6(cycle(6)) + "\n" + to_graph6(cycle(8)) + "\n")
    code, report, _ = run_cli(
        capsys, "verify", "lower-bound", "--corpus", str(path), "--grid", "1"
    )
    assert code == 0
    assert report["verdict"] == "pass"
    assert len(report["results"]["checks"]) == 2


def test_missing_file_is_usage_error(capsys):
    code, report, err = run_cli(capsys, "counts", "--graph", "file:/nonexistent/g.g6")
    assert code == 2
    assert report is None
