import math
import random
from fractions import Fraction

import pytest

from nlgap import errors
from nlgap.formulas import (FORMULAS, bourgain_ratio_bound, distortion_lower_bound, evaluate,
                            hamming_identity_value, pn_mu1, rearrangement_phi,
                            tree_cut_upper_bound, tree_lower_bound)
from nlgap.gap import center_edge_component, cut_quotient, poincare_quotient
from nlgap.graph import gen_cycle, gen_path, gen_tree_ball
from nlgap.metric import real_points_space, validate_metric
from nlgap.spectral import mu1


def test_examples():
    assert hamming_identity_value(1) == 2
    assert hamming_identity_value(2) == Fraction(2, 3)
    assert tree_lower_bound(3, 1) == Fraction(1, 72)
    assert tree_lower_bound(3, 2) == Fraction(1, 96)
    assert tree_cut_upper_bound(3, 1) == Fraction(6, 5)
    assert pn_mu1(2) == pytest.approx(1.0, abs=1e-15)
    assert distortion_lower_bound(1, 2) == 0.25


@pytest.mark.parametrize("fn, args", [
    (hamming_identity_value, (0,)), (tree_lower_bound, (2, 1)), (tree_lower_bound, (3, 0)),
    (tree_cut_upper_bound, (2, 3)), (pn_mu1, (1,)), (bourgain_ratio_bound, (1,)),
])
def test_domain_errors(fn, args):
    with pytest.raises(errors.DomainError):
        fn(*args)


def test_distortion_below_one():
    with pytest.raises(errors.DistortionBelowOne):
        distortion_lower_bound(0.5, 0.99)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
@pytest.mark.parametrize("r", range(1, 5))
def test_tree_forms(d, r):
    g = gen_tree_ball(d, r)
    assert tree_cut_upper_bound(d, r) == cut_quotient(g, center_edge_component(g))
    assert tree_lower_bound(d, r) < tree_cut_upper_bound(d, r)


@pytest.mark.parametrize("d", [3, 4])
def test_tree_forms_decay_in_r(d):
    lows = [tree_lower_bound(d, r) for r in range(1, 7)]
    ups = [tree_cut_upper_bound(d, r) for r in range(1, 7)]
    assert all(b < a for a, b in zip(lows, lows[1:]))
    assert all(b < a for a, b in zip(ups, ups[1:]))


def test_bourgain_monotone():
    vals = [bourgain_ratio_bound(n) for n in range(2, 200)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert bourgain_ratio_bound(math.e ** 2) == pytest.approx(0.25)


@pytest.mark.parametrize("n", range(2, 30))
def test_pn_mu1_matches_spectrum(n):
    assert pn_mu1(n) == pytest.approx(mu1(gen_path(n)), abs=1e-9)


def test_distortion_bound_sits_below_mu1():
    assert distortion_lower_bound(0.3, 1.0) == 0.3
    assert distortion_lower_bound(0.3, 3.0) == pytest.approx(0.3 / 9)


@pytest.mark.parametrize("seed", range(10))
def test_rearrangement(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    g = gen_path(n)
    pts = [rng.randint(0, 9) for _ in range(3)]
    X = validate_metric([[abs(Fraction(a - b)) + (a != b) for b in pts] for a in pts]) \
        if len(set(pts)) == 3 else real_points_space([0, 1, 4])
    f = [rng.randrange(3) for _ in range(g.n)]
    phi = rearrangement_phi(g, X, f)
    assert phi[0] == 0
    assert all(phi[i + 1] - phi[i] == X.d(f[i], f[i + 1]) for i in range(n))
    # consecutive gaps match the image distances and every pair is dominated
    for i in range(g.n):
        for j in range(i, g.n):
            assert X.d(f[i], f[j]) <= phi[j] - phi[i]
    if len(set(f)) > 1:
        q = poincare_quotient(g, X, f).ratio
        line = real_points_space(sorted(set(phi)))
        idx = {v: k for k, v in enumerate(sorted(set(phi)))}
        q_line = poincare_quotient(g, line, [idx[v] for v in phi]).ratio
        # along a path the rearranged map never has a larger quotient
        assert q_line <= q


def test_rearrangement_requires_path():
    with pytest.raises(errors.NotAPathGraph):
        rearrangement_phi(gen_cycle(4), real_points_space([0, 1]), [0, 1, 0, 1])


def test_registry():
    assert set(FORMULAS) == {"hamming-identity", "tree-lower", "tree-upper", "path-mu1",
                             "distortion-lower", "bourgain-ratio"}
    cf = evaluate("tree-upper", {"d": 3, "r": 1})
    assert (cf.formula_id, cf.value) == ("tree-upper", Fraction(6, 5))
    with pytest.raises(errors.InputError):
        evaluate("nope", {})
    with pytest.raises(errors.InputError):
        evaluate("tree-lower", {"d": 3})
