import csv
import io
import math

import pytest

from src import config, graph6
from src.constructions import FamilySpec, build_family
from src.main import _fmt, run


def read_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture
def star_file(tmp_path):
    path = tmp_path / "star.g6"
    assert run(["construct", "--family", "star", "--n", "3", "--out", str(path)]) == 0
    return str(path)


def test_construct_to_stdout(capsys):
    assert run(["construct", "--family", "bn", "--n", "8"]) == 0
    g = graph6.decode(capsys.readouterr().out)
    assert g.n == 8 and g.m == 11


def test_construct_edgelist(capsys):
    assert run(["construct", "--family", "complete_bipartite", "--n", "1", "--b", "2", "--format", "edgelist"]) == 0
    assert capsys.readouterr().out == "u,v\n0,1\n0,2\n"


def test_construct_rejects_small_bn(capsys):
    assert run(["construct", "--family", "bn", "--n", "4"]) == 1
    assert capsys.readouterr().err.startswith("error kind=GraphError exit=1 message=")


def test_construct_complete_bipartite_needs_both_sides(capsys):
    assert run(["construct", "--family", "complete_bipartite", "--b", "3"]) == 1
    assert capsys.readouterr().err.startswith("error kind=GraphError exit=1 message=complete_bipartite needs --n")


def test_spectrum(star_file, capsys):
    assert run(["spectrum", "--input", star_file, "--method", "dense"]) == 0
    (row,) = read_rows(capsys.readouterr().out)
    assert row["lambda1"] == "1.73205080756888"
    assert row["method"] == "dense_oracle"
    assert run(["spectrum", "--input", star_file]) == 0
    (row,) = read_rows(capsys.readouterr().out)
    assert float(row["lambda1"]) == pytest.approx(math.sqrt(3), abs=1e-12)
    assert row["method"] == "power_shifted"


def test_bounds(star_file, capsys):
    assert run(["bounds", "--input", star_file]) == 0
    (row,) = read_rows(capsys.readouterr().out)
    assert row["k"] == "1" and row["D"] == "2"
    assert float(row["main1_value"]) == pytest.approx(6 / 22)
    assert row["main1_holds"] == "true"


def test_bounds_regular_rows(tmp_path, capsys):
    path = tmp_path / "c6.g6"
    graph6.write_graph6([build_family(FamilySpec("cycle", (6,)))], str(path))
    assert run(["bounds", "--input", str(path), "--all-k"]) == 0
    (row,) = read_rows(capsys.readouterr().out)
    assert row["stevanovic_holds"] == "n/a"


def test_trees_compare(tmp_path, capsys):
    out = tmp_path / "trees.csv"
    assert run(["trees", "--n", "9", "--compare-bounds", "--out", str(out)]) == 0
    rows = read_rows(out.read_text())
    assert len(rows) == 47
    assert sum(r["winner"] == "cioaba" for r in rows) == 9


def test_conjecture(capsys):
    assert run(["conjecture", "--n-list", "6,8"]) == 0
    rows = read_rows(capsys.readouterr().out)
    assert [r["n"] for r in rows] == ["6", "8"]
    assert float(rows[0]["conjecture_ratio"]) == pytest.approx(18 * (2 - math.sqrt(3)), abs=1e-5)


def test_conjecture_reports_failed_rows(capsys):
    assert run(["conjecture", "--n-list", "4"]) == 1
    (row,) = read_rows(capsys.readouterr().out)
    assert row["lambda1"] == "nan" and row["error"]


def test_conjecture_nonconvergence_exit_code(monkeypatch, capsys):
    monkeypatch.setenv("TOOLKIT_MAX_ITER", "10")
    config.reset_settings()
    assert run(["conjecture", "--n-list", "20", "--tol", "1e-300"]) == 4
    (row,) = read_rows(capsys.readouterr().out)
    assert row["error"] and float(row["lambda1"]) > 2


def test_hillclimb_trace(tmp_path, capsys):
    path = tmp_path / "b8.g6"
    graph6.write_graph6([build_family(FamilySpec("bn", (8,)))], str(path))
    assert run(["hillclimb", "--input", str(path), "--seed", "1"]) == 0
    (row,) = read_rows(capsys.readouterr().out)
    assert row["step"] == "0" and row["move"] == ""


def test_catalog(capsys):
    assert run(["catalog", "--n", "5", "--tree"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3


def test_catalog_scale_cap(capsys):
    assert run(["catalog", "--n", "13", "--bipartite", "--delta", "3"]) == 3
    assert "kind=ScaleCapError exit=3" in capsys.readouterr().err


def test_census(capsys):
    assert run(["census", "--n", "8"]) == 0
    rows = read_rows(capsys.readouterr().out)
    assert all(r["maximum_is_free"] == "true" for r in rows)


def test_dominance(tmp_path):
    out = tmp_path / "dominance.csv"
    assert run(["dominance", "--n-max", "10", "--out", str(out)]) == 0
    rows = read_rows(out.read_text())
    assert rows and all(r["winner"] in ("main1", "main2") for r in rows)


def test_deletion(tmp_path, capsys):
    path = tmp_path / "petersen.g6"
    graph6.write_graph6([build_family(FamilySpec("petersen"))], str(path))
    assert run(["deletion", "--input", str(path)]) == 0
    rows = read_rows(capsys.readouterr().out)
    assert len(rows) == 15 and all(r["holds"] == "true" for r in rows)


def test_deletion_rejects_irregular(star_file, capsys):
    assert run(["deletion", "--input", star_file]) == 1


def test_verify_maximal(capsys):
    assert run(["verify-maximal", "--n-min", "6", "--n-max", "7"]) == 0
    rows = read_rows(capsys.readouterr().out)
    assert [r["isomorphic_to_bn"] for r in rows] == ["true", "true"]


def test_usage_errors(capsys):
    assert run(["frobnicate"]) == 2
    assert run(["spectrum", "--input", "x", "--tol", "-1"]) == 2
    assert run(["conjecture", "--n-list", "6,x"]) == 2


def test_missing_input_file(tmp_path, capsys):
    assert run(["spectrum", "--input", str(tmp_path / "absent.g6")]) == 1
    assert "kind=FileNotFoundError" in capsys.readouterr().err


def test_threads_and_cache_flags(capsys):
    assert run(["--threads", "2", "--cache", "catalog", "--n", "6", "--bipartite", "--delta", "3"]) == 0
    first = capsys.readouterr().out
    assert run(["--cache", "catalog", "--n", "6", "--bipartite", "--delta", "3"]) == 0
    assert capsys.readouterr().out == first


def test_fmt():
    assert _fmt(True) == "true"
    assert _fmt(None) == ""
    assert _fmt(math.inf) == "inf"
    assert _fmt(0.1 + 0.2) == "0.3"
