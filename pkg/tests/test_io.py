import random
from fractions import Fraction

import pytest

from conftest import random_connected_graph
from nlgap import errors
from nlgap.graph import build_graph, gen_tree_ball
from nlgap.io import (format_graph, format_metric, format_w, parse_graph, parse_map,
                      parse_metric, parse_points, parse_w, read_graph)
from nlgap.metric import real_points_space
from nlgap.paths import make_w


@pytest.mark.parametrize("seed", range(5))
def test_graph_round_trip(seed):
    g = random_connected_graph(random.Random(seed), 6)
    assert parse_graph(format_graph(g)) == g


def test_rational_and_float_weights():
    g = build_graph(3, [(0, 1, Fraction(1, 3)), (1, 2, Fraction(7, 2))])
    text = format_graph(g)
    assert "1/3" in text and "7/2" in text
    assert parse_graph(text).weights == g.weights
    h = parse_graph("graph 2 1\n0 1 0.25\n")
    assert not h.exact and h.weights == (0.25,)


def test_comments_and_blank_lines():
    g = parse_graph("# a triangle\n\ngraph 3 3\n0 1 1  # first\n1 2 1\n0 2 1\n")
    assert g.num_edges == 3


@pytest.mark.parametrize("text", [
    "", "graf 2 1\n0 1 1\n", "graph 2\n0 1 1\n", "graph 2 2\n0 1 1\n",
    "graph 2 1\n0 1\n", "graph 2 1\n0 x 1\n", "graph 2 1\n0 1 1/0\n", "graph two 1\n0 1 1\n",
])
def test_graph_format_errors(text):
    with pytest.raises(errors.FileFormatError):
        parse_graph(text)


def test_graph_semantic_errors_pass_through():
    with pytest.raises(errors.RejectDisconnected):
        parse_graph("graph 3 1\n0 1 1\n")


def test_metric_round_trip():
    X = real_points_space([0, Fraction(1, 2), 3])
    Y = parse_metric(format_metric(X))
    assert Y.as_matrix() == X.as_matrix()
    with pytest.raises(errors.FileFormatError):
        parse_metric("metric 2\n0 1\n")
    with pytest.raises(errors.TriangleViolation):
        parse_metric("metric 3\n0 3 1\n3 0 1\n1 1 0\n")


def test_points():
    cfg = parse_points("points 2 2\n0 0\n3 4\n")
    assert cfg.distance_matrix()[0, 1] == pytest.approx(5.0)
    with pytest.raises(errors.FileFormatError):
        parse_points("points 2 2\n0 0\n3\n")


def test_w_round_trip():
    g = gen_tree_ball(3, 1)
    w = make_w({(0, 1): 2, (0, 2): Fraction(1, 2), (0, 3): 1}, g)
    w2 = parse_w(format_w(w), g)
    assert w2.values == w.values
    with pytest.raises(errors.FileFormatError):
        parse_w("w 2\n0 1 1\n1 0 2\n")
    with pytest.raises(errors.EdgeOutsideSupport):
        parse_w("w 1\n0 1 1\n", g)


def test_read_missing_file(tmp_path):
    with pytest.raises(errors.FileFormatError):
        read_graph(tmp_path / "nope.txt")


def test_read_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("graph 2 1\n0 1 1\n")
    assert read_graph(p).n == 2


def test_parse_map():
    assert parse_map("0,1,1", 3) == (0, 1, 1)
    assert parse_map("0 1") == (0, 1)
    with pytest.raises(errors.InvalidMap):
        parse_map("0,a")
    with pytest.raises(errors.InvalidMap):
        parse_map("0,1", 3)
