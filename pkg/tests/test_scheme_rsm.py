import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qduopoly.market import MarketParams, cournot_payoff
from qduopoly.qstate import partial_trace
from qduopoly.scheme_rsm import (GAMMA_MAX, RsmStrategy, best_reply, entangled_state,
                                 equilibrium_payoff, equilibrium_point, equilibrium_set,
                                 quantity_map, quantity_map_matrix, rsm_payoff, strategy_observables)

P = MarketParams(30, 3)


def reply_argmax(opp, g, params=P, n=30001):
    xs = np.linspace(0, params.a, n)
    vals = rsm_payoff(1, xs, opp, g, params)
    k = int(np.argmax(vals))
    return xs[k], vals[k], xs[1]


def test_entangled_state_examples():
    assert np.allclose(entangled_state(0), np.diag([1, 0, 0, 0]))
    assert np.allclose(partial_trace(entangled_state(GAMMA_MAX), 1), np.eye(2) / 2)
    assert np.allclose(partial_trace(entangled_state(GAMMA_MAX), 2), np.eye(2) / 2)
    assert np.allclose(partial_trace(entangled_state(math.pi / 6), 1), np.diag([0.75, 0.25]))
    with pytest.raises(ValueError):
        entangled_state(1.0)


def test_strategy_observables():
    m1, m2 = strategy_observables(2, 5)
    assert np.array_equal(m1.matrix, np.diag([2.0, 5.0]))
    assert np.array_equal(m2.matrix, np.diag([5.0, 2.0]))
    m1, m2 = strategy_observables(1, 0)
    assert np.array_equal(m1.matrix, np.diag([1.0, 0.0]))
    assert np.array_equal(m2.matrix, np.diag([0.0, 1.0]))


def test_quantity_map_examples():
    assert quantity_map(4, 7, 0) == (4, 7)
    assert quantity_map(4, 7, GAMMA_MAX) == pytest.approx((5.5, 5.5))
    assert quantity_map(1, 0, math.pi / 6) == pytest.approx((0.75, 0.25))
    assert quantity_map_matrix(RsmStrategy(1, 0, math.pi / 6)) == pytest.approx((0.75, 0.25))


def test_matrix_path_matches_closed_form():
    rng = np.random.default_rng(11)
    for _ in range(500):
        x1, x2 = rng.uniform(0, 50, 2)
        g = rng.uniform(0, GAMMA_MAX)
        qm = quantity_map_matrix(RsmStrategy(x1, x2, g))
        qc = quantity_map(x1, x2, g)
        assert abs(qm[0] - qc[0]) <= 1e-12 and abs(qm[1] - qc[1]) <= 1e-12


@given(st.floats(0, 100), st.floats(0, 100), st.floats(0, GAMMA_MAX))
def test_total_quantity_conserved(x1, x2, g):
    q1, q2 = quantity_map(x1, x2, g)
    assert q1 + q2 == pytest.approx(x1 + x2, rel=1e-12, abs=1e-12)


def test_payoff_examples():
    assert float(rsm_payoff(1, 9, 9, 0, P)) == pytest.approx(81)
    assert float(rsm_payoff(1, 20, 20, 0.4, P)) == pytest.approx(-60)
    assert float(rsm_payoff(1, 6.75, 6.75, GAMMA_MAX, P)) == pytest.approx(91.125)


def test_gamma_zero_is_cournot():
    xs = np.linspace(0, 40, 41)
    X1, X2 = np.meshgrid(xs, xs, indexing="ij")
    assert np.allclose(rsm_payoff(1, X1, X2, 0, P), cournot_payoff(1, X1, X2, P))


def test_best_reply_examples():
    assert float(best_reply(0, 0, P)) == pytest.approx(13.5)
    g = 0.5
    assert float(best_reply(27 * math.cos(g) ** 2, g, P)) == pytest.approx(0, abs=1e-12)
    # (27 * 0.75 - 3) / (2 * 0.75)
    assert float(best_reply(3, math.pi / 6, P)) == pytest.approx(11.5)
    br, _, step = reply_argmax(3, math.pi / 6)
    assert abs(br - 11.5) <= step


@pytest.mark.parametrize("g", [0, math.pi / 8, math.pi / 6, math.pi / 5])
def test_best_reply_matches_grid_argmax(g):
    for opp in np.linspace(0, 27, 10):
        br, _, step = reply_argmax(opp, g)
        assert abs(br - float(best_reply(opp, g, P))) <= step


def test_equilibrium_set_examples():
    r0 = equilibrium_set(0, P)
    assert r0.kind == "point" and r0.data == pytest.approx((9, 9)) and r0.certified
    r6 = equilibrium_set(math.pi / 6, P)
    assert r6.data == pytest.approx((8.1, 8.1)) and r6.certified
    r4 = equilibrium_set(GAMMA_MAX, P)
    assert r4.kind == "segment" and not r4.unique and r4.certified
    for x1, x2 in r4.representatives(7):
        assert x1 + x2 == pytest.approx(13.5)


def test_equilibrium_payoff_examples():
    assert equilibrium_payoff(0, P) == pytest.approx(81, abs=1e-9)
    assert equilibrium_payoff(GAMMA_MAX, P) == pytest.approx(91.125, abs=1e-9)
    g = math.pi / 6
    x = equilibrium_point(g, P)
    assert equilibrium_payoff(g, P) == pytest.approx(float(rsm_payoff(1, x, x, g, P)))
    _, best, _ = reply_argmax(x, g)
    assert equilibrium_payoff(g, P) == pytest.approx(best, abs=1e-4)


def test_equilibrium_payoff_increases_with_gamma():
    gs = np.linspace(0, GAMMA_MAX, 60)
    vals = [equilibrium_payoff(g, P) for g in gs]
    assert all(b > a for a, b in zip(vals, vals[1:]))
