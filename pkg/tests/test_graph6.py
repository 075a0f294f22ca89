import networkx as nx
import pytest
from hypothesis import given

from src import graph6
from src.errors import GraphError
from src.graph_core import build
from tests.strategies import graphs


def test_triangle():
    assert graph6.encode(build(3, [(0, 1), (0, 2), (1, 2)])) == "Bw"


def test_single_vertex():
    assert graph6.encode(build(1, [])) == "@"
    assert graph6.decode("@").n == 1


def test_header_is_accepted():
    g = graph6.decode(">>graph6<<Bw\n")
    assert g.m == 3


@given(graphs(max_n=12))
def test_matches_networkx(g):
    expected = nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()
    assert graph6.encode(g) == expected
    assert graph6.decode(expected) == g


def test_large_order_prefix():
    g = build(70, [(0, 69)])
    text = graph6.encode(g)
    assert text.startswith("~")
    assert graph6.decode(text) == g


@pytest.mark.parametrize("text", ["", "B", "Bww", "B w", "Ba\x7f\x01"])
def test_rejects_malformed(text):
    with pytest.raises(GraphError):
        graph6.decode(text)


def test_file_round_trip(tmp_path, petersen, b8):
    path = tmp_path / "graphs.g6"
    graph6.write_graph6([petersen, b8], str(path))
    assert path.read_text().count("\n") == 2
    assert graph6.read_graph6(str(path)) == [petersen, b8]


def test_stdout(capsys, p4):
    graph6.write_graph6([p4], "-")
    assert capsys.readouterr().out == graph6.encode(p4) + "\n"
