import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qduopoly.market import MarketParams, cournot_payoff
from qduopoly.scheme_ldm import (FockConfig, LdmStrategy, best_reply, equilibrium, equilibrium_point,
                                 fock_verify_quantity_map, ldm_payoff, pareto_symmetric_optimum,
                                 quantity_map, strategy_box)

P = MarketParams(30, 3)
LN2 = math.log(2)


def argmax_reply(gamma, params, opponent, n=20001):
    xs = np.linspace(0, strategy_box(gamma, params), n)
    vals = np.array([ldm_payoff(1, x, opponent, gamma, params) for x in xs], dtype=float) \
        if n <= 2001 else ldm_payoff(1, xs, opponent, gamma, params)
    k = int(np.argmax(vals))
    return xs[k], vals[k], xs[1]


def test_quantity_map_examples():
    assert quantity_map(2.5, 4.0, 0) == (2.5, 4.0)
    assert quantity_map(1, 0, LN2) == pytest.approx((1.25, 0.75))
    t = 0.7
    q1, q2 = quantity_map(t, t, 0.9)
    assert q1 == pytest.approx(t * math.exp(0.9)) and q2 == pytest.approx(q1)


@given(st.floats(0, 50), st.floats(0, 50), st.floats(0, 3))
def test_quantity_map_total_scales_by_exp_gamma(x1, x2, g):
    q1, q2 = quantity_map(x1, x2, g)
    assert q1 + q2 == pytest.approx(math.exp(g) * (x1 + x2), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("x1,x2,g,cut,tol", [(0, 0, 0.8, 16, 1e-8), (1, 0, 0, 16, 1e-8),
                                             (0.5, 0.3, 0.4, 24, 1e-6)])
def test_fock_examples(x1, x2, g, cut, tol):
    r = fock_verify_quantity_map(LdmStrategy(x1, x2, g), FockConfig(cut))
    assert r.error <= tol
    assert not r.tail_too_large


def test_fock_truncation_too_small_is_flagged():
    r = fock_verify_quantity_map(LdmStrategy(3.0, 3.0, 1.0), FockConfig(6))
    assert r.tail_too_large


def test_strategy_validation():
    with pytest.raises(ValueError):
        LdmStrategy(-1, 0, 0.1)
    with pytest.raises(ValueError):
        LdmStrategy(1, 0, -0.1)


def test_payoff_examples():
    assert ldm_payoff(1, 9, 9, 0, P) == pytest.approx(81)
    assert ldm_payoff(1, 20, 20, 0, P) == pytest.approx(-60)
    x = equilibrium_point(LN2, P)
    _, best, step = argmax_reply(LN2, P, x)
    assert float(ldm_payoff(1, x, x, LN2, P)) == pytest.approx(best, abs=1e-4)


def test_refined_gamma_zero_is_cournot():
    xs = np.linspace(0, 40, 41)
    for x1 in xs:
        for x2 in xs:
            assert float(ldm_payoff(2, x1, x2, 0, P)) == pytest.approx(cournot_payoff(2, x1, x2, P))


def test_best_reply_examples():
    assert float(best_reply(0, 0, P)) == pytest.approx(13.5)
    assert float(best_reply(1, LN2, P)) == pytest.approx(5.95)
    cut = 27 * math.exp(-2 * 0.7) * math.cosh(0.7)
    assert float(best_reply(cut + 0.1, 0.7, P)) == 0
    br, _, step = argmax_reply(LN2, P, 1.0)
    assert abs(br - 5.95) <= step


def test_best_reply_against_grid_argmax_random():
    rng = np.random.default_rng(7)
    for _ in range(20):
        g = rng.uniform(0, 1.5)
        a = rng.uniform(5, 50)
        p = MarketParams(a, rng.uniform(0.05, 0.9) * a)
        for opp in rng.uniform(0, strategy_box(g, p), 10):
            br, _, step = argmax_reply(g, p, opp, n=4001)
            assert abs(br - float(best_reply(opp, g, p))) <= step


def test_equilibrium_examples():
    assert equilibrium(0, P).data == pytest.approx((9, 9), abs=1e-12)
    res = equilibrium(LN2, P)
    assert res.data == pytest.approx((3.75, 3.75))
    assert res.certified and res.unique
    reg = equilibrium(0, MarketParams(1, 0))
    assert reg.kind == "region" and reg.data == (1, 1) and reg.certified


@pytest.mark.parametrize("g", [0, 0.3, 1.0])
def test_equilibrium_is_fixed_point_of_best_reply(g):
    x = equilibrium_point(g, P)
    assert float(best_reply(x, g, P)) == pytest.approx(x, rel=1e-12)


@pytest.mark.parametrize("g,a,c,expected", [(0, 30, 3, 91.125), (1, 30, 3, 91.125), (1, 3, 1, 0.5)])
def test_pareto_symmetric_optimum(g, a, c, expected):
    (x1, x2), u = pareto_symmetric_optimum(g, MarketParams(a, c))
    assert u == pytest.approx(expected)
    assert x1 + x2 == pytest.approx((a - c) * math.exp(-g) / 2)


@settings(max_examples=30)
@given(st.floats(0, 2), st.floats(0, 1), st.floats(0, 1))
def test_joint_payoff_bounded_by_monopoly(g, f1, f2):
    box = strategy_box(g, P)
    x1, x2 = f1 * box, f2 * box
    total = float(ldm_payoff(1, x1, x2, g, P) + ldm_payoff(2, x1, x2, g, P))
    assert total <= P.margin ** 2 / 4 + 1e-9
