"""Classical Cournot and Bertrand duopolies.

These are the baselines every quantum scheme has to reproduce at its
classical setting.  All functions accept scalars or numpy arrays for the
strategy arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .solver import EquilibriumResult, GridSpec, PayoffPair, default_eps


@dataclass(frozen=True)
class MarketParams:
    """Linear inverse demand ``P = max(a - q1 - q2, 0)`` with marginal cost ``c``."""

    a: float
    c: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.c)):
            raise ValueError("a and c must be finite")
        if self.c < 0:
            raise ValueError(f"c >= 0 violated: c={self.c}")
        if not self.a > self.c:
            raise ValueError(f"a > c violated: a={self.a}, c={self.c}")

    @property
    def margin(self) -> float:
        return self.a - self.c


@dataclass(frozen=True)
class BertrandParams:
    """Differentiated-goods price competition, ``q_i = a - p_i + b p_j``.

    Only ``a > c (1 - b)`` is required, which keeps demand at marginal-cost
    pricing positive (``a = c`` is admitted).
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not 0 < self.b < 1:
            raise ValueError(f"0 < b < 1 violated: b={self.b}")
        if self.c < 0:
            raise ValueError(f"c >= 0 violated: c={self.c}")
        if not self.a > self.c * (1 - self.b):
            raise ValueError(f"a > c(1-b) violated: a={self.a}, b={self.b}, c={self.c}")

    @property
    def price_box(self) -> float:
        """Upper edge of the price box searched by the oracles."""
        return 4 * self.a / (1 - self.b)


def price(q1, q2, params: MarketParams):
    """Market price; zero once total supply exceeds ``a`` (ties stay on the linear branch)."""
    total = np.asarray(q1, dtype=float) + np.asarray(q2, dtype=float)
    return np.where(total <= params.a, params.a - total, 0.0)


def cournot_payoff(player: int, q1, q2, params: MarketParams):
    qi = _own(player, q1, q2)
    return qi * price(q1, q2, params) - params.c * qi


def cournot_game(params: MarketParams) -> PayoffPair:
    return PayoffPair(lambda x1, x2: cournot_payoff(1, x1, x2, params),
                      lambda x1, x2: cournot_payoff(2, x1, x2, params))


def classical_equilibrium(params: MarketParams, grid: GridSpec | None = None,
                          eps: float | None = None) -> EquilibriumResult:
    """Unique point ``((a-c)/3, (a-c)/3)`` for ``c > 0``.

    With ``c = 0`` every profile with both quantities at least ``a`` is an
    equilibrium with zero payoff; that quadrant is returned as a region.
    Representatives are certified on ``grid`` (default ``[0, a]``, 601 points).
    """
    if grid is None:
        grid = GridSpec(params.a, 601)
    if eps is None:
        eps = default_eps(params.a, params.c, grid)
    if params.c > 0:
        q = params.margin / 3
        res = EquilibriumResult("point", (q, q), unique=True)
    else:
        res = EquilibriumResult("region", (params.a, params.a), unique=False)
    return res.certify(cournot_game(params), grid, eps)


def monopoly_bound(params: MarketParams) -> tuple[float, float]:
    """Monopoly quantity ``(a-c)/2`` and the payoff ceiling ``(a-c)^2/4``."""
    if not params.c > 0:
        raise ValueError("monopoly_bound requires c > 0")
    m = params.margin
    return m / 2, m * m / 4


def bertrand_payoffs(p1, p2, params: BertrandParams):
    a, b, c = params.a, params.b, params.c
    u1 = (a - p1 + b * p2) * (p1 - c)
    u2 = (a - p2 + b * p1) * (p2 - c)
    return u1, u2


def bertrand_game(params: BertrandParams) -> PayoffPair:
    return PayoffPair(lambda p1, p2: bertrand_payoffs(p1, p2, params)[0],
                      lambda p1, p2: bertrand_payoffs(p1, p2, params)[1])


def bertrand_joint_supremum(params: BertrandParams) -> float:
    a, b, c = params.a, params.b, params.c
    return (a - c * (1 - b)) ** 2 / (2 * (1 - b))


def bertrand_equilibrium(params: BertrandParams, grid: GridSpec | None = None,
                         eps: float | None = None) -> EquilibriumResult:
    """Symmetric price equilibrium ``p* = (a + c) / (2 - b)`` of the classical game."""
    if grid is None:
        grid = GridSpec(params.price_box, 801)
    if eps is None:
        eps = default_eps(params.a, params.c, grid)
    p = (params.a + params.c) / (2 - params.b)
    return EquilibriumResult("point", (p, p), unique=True).certify(bertrand_game(params), grid, eps)


def _own(player: int, q1, q2):
    if player == 1:
        return np.asarray(q1, dtype=float)
    if player == 2:
        return np.asarray(q2, dtype=float)
    raise ValueError(f"player must be 1 or 2, got {player}")
