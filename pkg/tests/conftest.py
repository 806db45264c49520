import random

import pytest

from nlgap import build_graph, validate_metric

_acceptance = []


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    cid, title = marker.args
    passed = call.excinfo is None
    _acceptance.append((cid, title, passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, passed in sorted(_acceptance):
        terminalreporter.write_line(f"AC{cid:02d} {'PASS' if passed else 'FAIL'}  {title}")


def random_connected_graph(rng: random.Random, n: int, max_weight: int = 4, p_extra: float = 0.4):
    """Random spanning tree plus random extra edges, integer weights."""
    edges = {}
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges[(min(u, v), max(u, v))] = rng.randint(1, max_weight)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p_extra:
                edges[(u, v)] = rng.randint(1, max_weight)
    return build_graph(n, [(u, v, w) for (u, v), w in edges.items()])


def random_three_point_metric(rng: random.Random):
    while True:
        a, b, c = (rng.uniform(0.05, 1.0) for _ in range(3))
        if a <= b + c and b <= a + c and c <= a + b:
            return validate_metric([[0, a, b], [a, 0, c], [b, c, 0]])


@pytest.fixture
def rng():
    return random.Random(20240607)
