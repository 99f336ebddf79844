"""Continuous-variable quantum Cournot duopoly on two squeezed field modes.

Strategies ``x_i >= 0`` are displacements of two squeezed field modes and
the measured quadratures give

    q1 = x1 cosh(g) + x2 sinh(g),   q2 = x2 cosh(g) + x1 sinh(g).

Payoffs use the closed-form map; :func:`fock_verify_quantity_map` checks
the map against a truncated two-mode Fock-space simulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .market import MarketParams
from .solver import EquilibriumResult, GridSpec, PayoffPair, default_eps

TAIL_LIMIT = 1e-8


@dataclass(frozen=True)
class LdmStrategy:
    x1: float
    x2: float
    gamma: float

    def __post_init__(self) -> None:
        if self.x1 < 0 or self.x2 < 0:
            raise ValueError(f"strategies must be nonnegative, got ({self.x1}, {self.x2})")
        if self.gamma < 0:
            raise ValueError(f"gamma >= 0 violated: gamma={self.gamma}")


@dataclass(frozen=True)
class FockConfig:
    cutoff: int = 24

    def __post_init__(self) -> None:
        if self.cutoff < 2:
            raise ValueError(f"cutoff >= 2 violated: cutoff={self.cutoff}")


def quantity_map(x1, x2, gamma: float):
    ch, sh = math.cosh(gamma), math.sinh(gamma)
    return x1 * ch + x2 * sh, x2 * ch + x1 * sh


def ldm_payoff(player: int, x1, x2, gamma: float, params: MarketParams, refined: bool = True):
    """Payoff of ``player``.

    The original form applies the linear price everywhere; the refined form
    charges ``-c q_i`` once ``e^g (x1 + x2) > a`` (ties use the linear price).
    """
    q1, q2 = quantity_map(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float), gamma)
    if player == 1:
        qi = q1
    elif player == 2:
        qi = q2
    else:
        raise ValueError(f"player must be 1 or 2, got {player}")
    total = q1 + q2
    linear = qi * (params.margin - total)
    if not refined:
        return linear
    return np.where(total <= params.a, linear, -params.c * qi)


def ldm_game(gamma: float, params: MarketParams, refined: bool = True) -> PayoffPair:
    return PayoffPair(lambda x1, x2: ldm_payoff(1, x1, x2, gamma, params, refined),
                      lambda x1, x2: ldm_payoff(2, x1, x2, gamma, params, refined))


def strategy_box(gamma: float, params: MarketParams) -> float:
    """Strategies above ``a e^-g`` alone already push the price to zero."""
    return params.a * math.exp(-gamma)


def best_reply(opponent, gamma: float, params: MarketParams):
    if not params.c > 0:
        raise ValueError("best_reply requires c > 0")
    m = params.margin
    e2 = math.exp(2 * gamma)
    ch = math.cosh(gamma)
    x = np.asarray(opponent, dtype=float)
    return np.where(x <= m * ch / e2, (m * ch - e2 * x) / (e2 + 1), 0.0)


def best_reply_slope(gamma: float) -> float:
    e2 = math.exp(2 * gamma)
    return -e2 / (e2 + 1)


def equilibrium_point(gamma: float, params: MarketParams) -> float:
    return params.margin * math.cosh(gamma) / (1 + 2 * math.exp(2 * gamma))


def equilibrium(gamma: float, params: MarketParams, grid: GridSpec | None = None,
                eps: float | None = None) -> EquilibriumResult:
    """Symmetric unique equilibrium for ``c > 0``; the quadrant ``x_i >= a e^-g`` for ``c = 0``."""
    if gamma < 0:
        raise ValueError(f"gamma >= 0 violated: gamma={gamma}")
    if grid is None:
        grid = GridSpec(strategy_box(gamma, params), 601)
    if eps is None:
        eps = default_eps(params.a, params.c, grid)
    if params.c > 0:
        x = equilibrium_point(gamma, params)
        res = EquilibriumResult("point", (x, x), unique=True)
    else:
        lo = strategy_box(gamma, params)
        res = EquilibriumResult("region", (lo, lo), unique=False)
    return res.certify(ldm_game(gamma, params), grid, eps)


def pareto_symmetric_optimum(gamma: float, params: MarketParams) -> tuple[tuple[float, float], float]:
    """Symmetric maximiser of the joint payoff and its per-player value ``(a-c)^2/8``."""
    x = params.margin * math.exp(-gamma) / 4
    return (x, x), float(ldm_payoff(1, x, x, gamma, params))


# --- truncated Fock-space check ---------------------------------------------

@dataclass(frozen=True)
class FockResult:
    q1: float
    q2: float
    tail_mass: float
    closed_form: tuple[float, float]

    @property
    def error(self) -> float:
        return max(abs(self.q1 - self.closed_form[0]), abs(self.q2 - self.closed_form[1]))

    @property
    def tail_too_large(self) -> bool:
        return self.tail_mass >= TAIL_LIMIT


def annihilation(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1)


@lru_cache(maxsize=16)
def _entangler(gamma: float, cutoff: int) -> np.ndarray:
    a = annihilation(cutoff)
    eye = np.eye(cutoff)
    a1, a2 = np.kron(a, eye), np.kron(eye, a)
    J = expm(-gamma * (a1.T @ a2.T - a1 @ a2))
    J.setflags(write=False)
    return J


def _displacement(x: float, cutoff: int) -> np.ndarray:
    a = annihilation(cutoff)
    return expm(x * (a.T - a) / math.sqrt(2))


def fock_verify_quantity_map(s: LdmStrategy, cfg: FockConfig = FockConfig()) -> FockResult:
    """Quadrature means of ``J(g)^+ (D(x1) x D(x2)) J(g) |00>`` on a truncated space.

    ``tail_mass`` is the probability of finding either mode in one of its
    top two Fock levels; it bounds the truncation error.
    """
    n = cfg.cutoff
    J = _entangler(float(s.gamma), n)
    D = np.kron(_displacement(s.x1, n), _displacement(s.x2, n))
    vac = np.zeros(n * n)
    vac[0] = 1.0
    psi = J.T @ (D @ (J @ vac))
    a = annihilation(n)
    X = (a + a.T) / math.sqrt(2)
    eye = np.eye(n)
    q1 = float(psi @ (np.kron(X, eye) @ psi))
    q2 = float(psi @ (np.kron(eye, X) @ psi))
    prob = (psi ** 2).reshape(n, n)
    top = slice(n - 2, n)
    tail = float(prob[top, :].sum() + prob[:, top].sum() - prob[top, top].sum())
    return FockResult(q1, q2, tail, quantity_map(s.x1, s.x2, s.gamma))
