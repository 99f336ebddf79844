import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qduopoly.market import (BertrandParams, MarketParams, bertrand_equilibrium, bertrand_payoffs,
                             bertrand_joint_supremum, classical_equilibrium, cournot_payoff,
                             monopoly_bound, price)

P = MarketParams(30, 3)


def grid_argmax(f, lo, hi, n):
    xs = np.linspace(lo, hi, n)
    vals = np.array([f(x) for x in xs])
    k = int(np.argmax(vals))
    return xs[k], vals[k]


def test_params_validation():
    with pytest.raises(ValueError, match="a > c"):
        MarketParams(3, 5)
    with pytest.raises(ValueError, match="c >= 0"):
        MarketParams(3, -1)
    MarketParams(1, 0)
    with pytest.raises(ValueError, match="0 < b < 1"):
        BertrandParams(1, 1.0, 0)
    with pytest.raises(ValueError):
        BertrandParams(1, 0.5, 3)


@pytest.mark.parametrize("q1,q2,expected", [(5, 5, 20), (10, 25, 0), (30, 0, 0)])
def test_price_examples(q1, q2, expected):
    assert price(q1, q2, P) == expected


def test_cournot_payoff_examples():
    assert cournot_payoff(1, 9, 9, P) == 81
    assert cournot_payoff(1, 0, 17.3, P) == 0
    assert cournot_payoff(1, 12, 25, P) == -3 * 12
    assert cournot_payoff(2, 12, 25, P) == -3 * 25
    with pytest.raises(ValueError):
        cournot_payoff(3, 1, 1, P)


def test_classical_equilibrium_point():
    res = classical_equilibrium(P)
    assert res.kind == "point" and res.unique
    assert res.data == (9, 9)
    assert res.payoffs[0] == (81, 81)
    assert res.certified


def test_classical_equilibrium_c_zero_region():
    res = classical_equilibrium(MarketParams(1, 0))
    assert res.kind == "region" and not res.unique
    assert res.data == (1, 1)
    assert all(u == (0, 0) for u in res.payoffs)
    assert res.certified


def test_classical_equilibrium_a4_c1_against_grid():
    p = MarketParams(4, 1)
    res = classical_equilibrium(p)
    assert res.data == pytest.approx((1, 1))
    assert res.payoffs[0] == pytest.approx((1, 1))
    # mutual best replies on an explicit grid
    br, _ = grid_argmax(lambda q: cournot_payoff(1, q, 1.0, p), 0, 4, 4001)
    assert br == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("a,c,expected", [(30, 3, (13.5, 182.25)), (7, 5, (1, 1)), (3, 1, (1, 1))])
def test_monopoly_bound(a, c, expected):
    p = MarketParams(a, c)
    assert monopoly_bound(p) == pytest.approx(expected)
    q, u = grid_argmax(lambda q: cournot_payoff(1, q, 0.0, p), 0, a, 27001)
    assert q == pytest.approx(expected[0], abs=a / 27000)
    assert u == pytest.approx(expected[1], rel=1e-6)


def test_monopoly_bound_requires_positive_cost():
    with pytest.raises(ValueError):
        monopoly_bound(MarketParams(1, 0))


def test_bertrand_payoffs_examples():
    bp = BertrandParams(2, 0.5, 1)
    assert bertrand_payoffs(1, 1, bp) == (0, 0)
    assert bertrand_payoffs(0, 0, bp) == (-2, -2)
    # (3 - 1 + 0.5*2) * 1 and (3 - 2 + 0.5*1) * 2
    assert bertrand_payoffs(1, 2, BertrandParams(3, 0.5, 0)) == (3, 3)


@pytest.mark.parametrize("abc,expected", [((1, 0.5, 0), 1), ((2, 0.5, 2), 1), ((1, 0.9, 0), 5)])
def test_bertrand_joint_supremum(abc, expected):
    bp = BertrandParams(*abc)
    assert bertrand_joint_supremum(bp) == pytest.approx(expected)
    ps = np.linspace(0, bp.price_box, 801)
    P1, P2 = np.meshgrid(ps, ps, indexing="ij")
    u1, u2 = bertrand_payoffs(P1, P2, bp)
    assert (u1 + u2).max() == pytest.approx(expected, rel=1e-3)


def test_bertrand_equilibrium_certified():
    bp = BertrandParams(30, 0.5, 3)
    res = bertrand_equilibrium(bp)
    assert res.data == pytest.approx((22, 22))
    assert res.certified


@given(st.floats(0, 40), st.floats(0, 40), st.floats(0, 5))
def test_price_nonincreasing_and_zero_beyond_a(q1, q2, dq):
    assert price(q1 + dq, q2, P) <= price(q1, q2, P)
    assert price(q1, q2 + dq, P) <= price(q1, q2, P)
    if q1 + q2 >= P.a:
        assert price(q1, q2, P) == 0


@settings(max_examples=30)
@given(st.floats(0.5, 50), st.floats(0.01, 0.95), st.floats(0, 1))
def test_best_reply_argmax_within_one_step(a, cfrac, frac):
    p = MarketParams(a, cfrac * a)
    q2 = frac * p.margin
    xs = np.linspace(0, a, 2001)
    k = int(np.argmax(cournot_payoff(1, xs, q2, p)))
    assert abs(xs[k] - (p.margin - q2) / 2) <= xs[1]


def test_payoff_never_exceeds_monopoly_bound():
    qs = np.linspace(0, 40, 401)
    Q1, Q2 = np.meshgrid(qs, qs, indexing="ij")
    assert cournot_payoff(1, Q1, Q2, P).max() <= monopoly_bound(P)[1] + 1e-9
