from fractions import Fraction

import pytest

from nlgap import errors
from nlgap.graph import (build_graph, gen_complete, gen_cycle, gen_hamming, gen_path,
                         gen_random_regular, gen_tree_ball, graph_metric_space,
                         tree_ball_size)
from nlgap.metric import validate_metric


def degree_sequence(g):
    return sorted(g.degree(x) for x in range(g.n))


def test_k2():
    g = build_graph(2, [(0, 1, 1)])
    assert g.vertex_weight == (1, 1)
    assert g.total_weight == 2
    assert list(g.oriented_edges()) == [(0, 1), (1, 0)]


def test_p2_weights():
    g = build_graph(3, [(0, 1, 1), (1, 2, 1)])
    assert g.vertex_weight[1] == 2
    assert g.total_weight == 4


@pytest.mark.parametrize("n, edges, exc", [
    (3, [(0, 1, 1)], errors.RejectDisconnected),
    (2, [(0, 0, 1)], errors.RejectLoop),
    (2, [(0, 1, 1), (1, 0, 2)], errors.RejectDuplicateEdge),
    (2, [(0, 1, 0)], errors.RejectNonpositiveWeight),
    (2, [(0, 1, -1.5)], errors.RejectNonpositiveWeight),
    (1, [], errors.RejectTooSmall),
    (2, [(0, 2, 1)], errors.VertexOutOfRange),
])
def test_build_rejects(n, edges, exc):
    with pytest.raises(exc):
        build_graph(n, edges)


def test_exact_and_float_modes():
    g = build_graph(2, [(0, 1, Fraction(1, 3))])
    assert g.exact and g.total_weight == Fraction(2, 3)
    h = build_graph(3, [(0, 1, 0.5), (1, 2, 1)])
    assert not h.exact and h.total_weight == 3.0


def test_hamming_small():
    assert gen_hamming(1) == gen_complete(2)
    h2 = gen_hamming(2)
    assert set(h2.vertex_weight) == {2} and h2.total_weight == 8
    h3 = gen_hamming(3)
    assert (h3.n, h3.num_edges) == (8, 12)


@pytest.mark.parametrize("n", range(1, 8))
def test_hamming_regular_and_bipartite(n):
    g = gen_hamming(n)
    assert all(g.degree(x) == n for x in range(g.n))
    parity = [bin(x).count("1") % 2 for x in range(g.n)]
    assert all(parity[u] != parity[v] for u, v in g.edges)


def test_cycle4_is_square():
    c4 = gen_cycle(4)
    h2 = gen_hamming(2)
    # 0-1-2-3-0 relabelled onto the cube 0-1-3-2-0
    perm = [0, 1, 3, 2]
    assert {tuple(sorted((perm[u], perm[v]))) for u, v in c4.edges} == set(h2.edges)


def test_tree_ball_examples():
    star = gen_tree_ball(3, 1)
    assert star.n == 4 and star.degree(0) == 3
    t32 = gen_tree_ball(3, 2)
    assert t32.n == 10
    assert t32.total_weight == 18
    # closed form 2d/(d-2) ((d-1)^r - 1) for the ordered edge count
    assert t32.total_weight == Fraction(2 * 3, 3 - 2) * ((3 - 1) ** 2 - 1)
    assert t32.levels == (0, 1, 1, 1, 2, 2, 2, 2, 2, 2)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_tree_ball_counts(d, r):
    g = gen_tree_ball(d, r)
    assert g.n == tree_ball_size(d, r) == 1 + d * ((d - 1) ** r - 1) // (d - 2)
    assert g.is_tree()
    assert g.total_weight == 2 * g.num_edges
    assert max(g.levels) == r
    assert all(g.degree(x) == d for x in range(g.n) if g.levels[x] < r)
    assert all(g.degree(x) == 1 for x in range(g.n) if g.levels[x] == r)


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_tree_d2_is_path(r):
    t = gen_tree_ball(2, r)
    p = gen_path(2 * r)
    assert t.n == 2 * r + 1
    assert degree_sequence(t) == degree_sequence(p)
    assert t.num_edges == p.num_edges and t.is_tree()


def test_path4_matches_tree_2_2():
    t, p = gen_tree_ball(2, 2), gen_path(4)
    assert degree_sequence(t) == degree_sequence(p)
    # level-order labels 3-1-0-2-4 put the tree on the chain
    perm = {3: 0, 1: 1, 0: 2, 2: 3, 4: 4}
    assert {tuple(sorted((perm[u], perm[v]))) for u, v in t.edges} == set(p.edges)


def test_small_generators():
    assert gen_path(1) == gen_complete(2)
    assert gen_path(2).total_weight == 4
    assert gen_complete(5).num_edges == 10
    with pytest.raises(errors.RejectTooSmall):
        gen_tree_ball(3, 0)
    with pytest.raises(errors.RejectTooSmall):
        gen_cycle(2)


def test_random_regular_deterministic():
    a = gen_random_regular(8, 3, seed=1)
    b = gen_random_regular(8, 3, seed=1)
    assert a.edges == b.edges
    assert all(a.degree(x) == 3 for x in range(8))


@pytest.mark.parametrize("n, d", [(10, 3), (16, 4), (64, 3)])
def test_random_regular_valid(n, d):
    g = gen_random_regular(n, d, seed=7)
    assert g.n == n and all(g.degree(x) == d for x in range(n))


def test_random_regular_rejects_odd():
    with pytest.raises(errors.InputError):
        gen_random_regular(7, 3, seed=0)


def test_random_regular_retry_budget():
    # one draw of an 8-regular pairing is simple with probability about e^-16
    with pytest.raises(errors.PairingFailed):
        gen_random_regular(200, 8, seed=0, max_tries=1)


def test_size_cap_env(monkeypatch):
    monkeypatch.setenv("SGT_SIZE_CAP", "100")
    with pytest.raises(errors.SizeCapExceeded):
        gen_hamming(7)
    with pytest.raises(errors.SizeCapExceeded):
        gen_tree_ball(3, 6)
    gen_hamming(6)


def test_metric_space_examples():
    assert graph_metric_space(gen_complete(2)).as_matrix() == [[0, 1], [1, 0]]
    h2 = graph_metric_space(gen_hamming(2))
    assert {h2.d(i, j) for i in range(4) for j in range(4)} == {0, 1, 2}
    assert h2.d(0, 3) == 2 and h2.d(1, 2) == 2
    star = graph_metric_space(gen_tree_ball(3, 1))
    assert [star.d(0, j) for j in (1, 2, 3)] == [1, 1, 1]
    assert star.d(1, 2) == star.d(2, 3) == 2


@pytest.mark.parametrize("g", [gen_hamming(4), gen_tree_ball(3, 3), gen_cycle(9),
                               gen_random_regular(20, 3, seed=2)], ids=repr)
def test_metric_space_validates(g):
    X = graph_metric_space(g)
    assert validate_metric(X.as_matrix()).k == g.n


def test_weight_scaling_keeps_sum_identity():
    g = gen_tree_ball(3, 2).scaled(Fraction(5, 2))
    assert g.total_weight == 2 * sum(g.weights)
