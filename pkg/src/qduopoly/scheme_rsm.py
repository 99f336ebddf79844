"""Two-qubit Cournot scheme with quantities read off the reduced states.

The entangler ``I(g) = cos(g) 1x1 + i sin(g) sx x sx`` maps ``|00>`` to
``cos(g)|00> + i sin(g)|11>``.  Player strategies ``(x1, x2)`` define the
diagonal operators ``M1 = diag(x1, x2)`` and ``M2 = diag(x2, x1)``, and each
quantity is the expectation of ``M_i`` in player i's reduced state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .market import MarketParams
from .qstate import DiagonalObservable, expectation, partial_trace, pure_state
from .solver import EquilibriumResult, GridSpec, PayoffPair, default_eps

GAMMA_MAX = math.pi / 4
_GAMMA_TOL = 1e-12


@dataclass(frozen=True)
class RsmStrategy:
    x1: float
    x2: float
    gamma: float

    def __post_init__(self) -> None:
        if self.x1 < 0 or self.x2 < 0:
            raise ValueError(f"strategies must be nonnegative, got ({self.x1}, {self.x2})")
        check_gamma(self.gamma)


def check_gamma(gamma: float) -> None:
    if not -_GAMMA_TOL <= gamma <= GAMMA_MAX + _GAMMA_TOL:
        raise ValueError(f"gamma must lie in [0, pi/4], got {gamma}")


def is_maximal(gamma: float) -> bool:
    return abs(gamma - GAMMA_MAX) <= _GAMMA_TOL


def entangled_state(gamma: float) -> np.ndarray:
    check_gamma(gamma)
    return pure_state([math.cos(gamma), 0, 0, 1j * math.sin(gamma)])


def strategy_observables(x1: float, x2: float) -> tuple[DiagonalObservable, DiagonalObservable]:
    if x1 < 0 or x2 < 0:
        raise ValueError(f"strategies must be nonnegative, got ({x1}, {x2})")
    return DiagonalObservable((x1, x2)), DiagonalObservable((x2, x1))


def quantity_map_matrix(s: RsmStrategy) -> tuple[float, float]:
    """Quantities by reducing the entangled state and measuring ``M1``, ``M2``."""
    rho = entangled_state(s.gamma)
    m1, m2 = strategy_observables(s.x1, s.x2)
    return expectation(partial_trace(rho, 1), m1), expectation(partial_trace(rho, 2), m2)


def quantity_map(x1, x2, gamma: float):
    """Closed form ``q1 = x1 cos^2 g + x2 sin^2 g`` (and symmetrically ``q2``)."""
    c2, s2 = math.cos(gamma) ** 2, math.sin(gamma) ** 2
    return x1 * c2 + x2 * s2, x2 * c2 + x1 * s2


def rsm_payoff(player: int, x1, x2, gamma: float, params: MarketParams):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    q1, q2 = quantity_map(x1, x2, gamma)
    if player == 1:
        qi = q1
    elif player == 2:
        qi = q2
    else:
        raise ValueError(f"player must be 1 or 2, got {player}")
    total = x1 + x2
    return np.where(total <= params.a, qi * (params.margin - total), -params.c * qi)


def rsm_game(gamma: float, params: MarketParams) -> PayoffPair:
    check_gamma(gamma)
    return PayoffPair(lambda x1, x2: rsm_payoff(1, x1, x2, gamma, params),
                      lambda x1, x2: rsm_payoff(2, x1, x2, gamma, params))


def best_reply(opponent, gamma: float, params: MarketParams):
    if not params.c > 0:
        raise ValueError("best_reply requires c > 0")
    check_gamma(gamma)
    kc = params.margin * math.cos(gamma) ** 2
    x = np.asarray(opponent, dtype=float)
    return np.where(x <= kc, (kc - x) / (2 * math.cos(gamma) ** 2), 0.0)


def best_reply_slope(gamma: float) -> float:
    return -1.0 / (2 * math.cos(gamma) ** 2)


def equilibrium_point(gamma: float, params: MarketParams) -> float:
    c2 = math.cos(gamma) ** 2
    return params.margin * c2 / (2 * c2 + 1)


def equilibrium_set(gamma: float, params: MarketParams, grid: GridSpec | None = None,
                    eps: float | None = None, samples: int = 5) -> EquilibriumResult:
    """A single symmetric point, or the segment ``x1 + x2 = (a-c)/2`` at ``g = pi/4``."""
    if not params.c > 0:
        raise ValueError("equilibrium_set requires c > 0")
    check_gamma(gamma)
    if grid is None:
        grid = GridSpec(params.a, 601)
    if eps is None:
        eps = default_eps(params.a, params.c, grid)
    if is_maximal(gamma):
        half = params.margin / 2
        res = EquilibriumResult("segment", ((0.0, half), (half, 0.0)), unique=False)
    else:
        x = equilibrium_point(gamma, params)
        res = EquilibriumResult("point", (x, x), unique=True)
    return res.certify(rsm_game(gamma, params), grid, eps, k=samples)


def equilibrium_payoff(gamma: float, params: MarketParams) -> float:
    """Player 1's payoff at the symmetric equilibrium, by substitution."""
    x = equilibrium_point(gamma, params)
    return float(rsm_payoff(1, x, x, gamma, params))
