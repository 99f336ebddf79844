"""Quantum duopoly over a two-qubit mixed-strategy (flip probability) scheme.

A quantity ``q_i`` becomes the probability ``1/(1+q_i)`` of leaving the
player's qubit alone (otherwise sigma_x is applied), and a payoff is the
trace of the resulting mixture against a diagonal payoff operator.  Payoffs
are always computed through that trace; closed forms appear only in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .market import BertrandParams, MarketParams, bertrand_joint_supremum, monopoly_bound
from .qstate import DiagonalObservable, basis_state, correlated_flip_mixture, expectation
from .solver import EpsNashReport, GridSpec, PayoffPair, default_eps, eps_nash_verify

VARIANTS = ("M", "Mprime", "Mdoubleprime")


@dataclass(frozen=True)
class General:
    """Arbitrary diagonal payoff operator, coefficients ``(x1..x4)`` per player."""

    player1: tuple[float, float, float, float]
    player2: tuple[float, float, float, float]


def initial_state(label: str) -> np.ndarray:
    """Basis state from a two-character label such as ``"11"``."""
    if len(label) != 2 or any(ch not in "01" for ch in label):
        raise ValueError(f"initial state label must be one of 00/01/10/11, got {label!r}")
    return basis_state(int(label[0]), int(label[1]))


def probabilities(q1: float, q2: float) -> tuple[float, float]:
    if q1 < 0 or q2 < 0:
        raise ValueError(f"quantities must be nonnegative, got ({q1}, {q2})")
    return 1.0 / (1.0 + q1), 1.0 / (1.0 + q2)


def final_state(q1: float, q2: float, rho_in: np.ndarray) -> np.ndarray:
    x, y = probabilities(q1, q2)
    return correlated_flip_mixture(rho_in, x, y)


def payoff_operator(variant, player: int, q1: float, q2: float,
                    params: MarketParams) -> DiagonalObservable:
    """Weights of ``M``, ``M'``, ``M''`` or a :class:`General` operator.

    ``M'`` switches to the ``-c|00><00|`` branch once ``q1 + q2 > a``.
    """
    if player not in (1, 2):
        raise ValueError(f"player must be 1 or 2, got {player}")
    scale = (1 + q1) * (1 + q2)
    qi = q1 if player == 1 else q2
    m, c = params.margin, params.c
    if isinstance(variant, General):
        w = variant.player1 if player == 1 else variant.player2
    elif variant == "M" or (variant == "Mprime" and q1 + q2 <= params.a):
        w = (qi * m, -qi, -qi, 0.0)
    elif variant == "Mprime":
        w = (-c * qi, 0.0, 0.0, 0.0)
    elif variant == "Mdoubleprime":
        w = (m * q1, 0.0, -q1, -1.0) if player == 1 else (m * q2, -q2, 0.0, -1.0)
    else:
        raise ValueError(f"unknown operator variant {variant!r}; expected one of {VARIANTS}")
    return DiagonalObservable(tuple(scale * v for v in w))


def mw_payoff(player: int, q1: float, q2: float, rho_in: np.ndarray, variant,
              params: MarketParams) -> float:
    rho = final_state(q1, q2, rho_in)
    return expectation(rho, payoff_operator(variant, player, q1, q2, params))


def refined_payoff(player: int, q1: float, q2: float, rho_in: np.ndarray,
                   params: MarketParams) -> float:
    """Trace payoff with the price-aware operator ``M'``."""
    return mw_payoff(player, q1, q2, rho_in, "Mprime", params)


def mw_game(rho_in: np.ndarray, variant, params: MarketParams) -> PayoffPair:
    return PayoffPair(lambda q1, q2: mw_payoff(1, q1, q2, rho_in, variant, params),
                      lambda q1, q2: mw_payoff(2, q1, q2, rho_in, variant, params),
                      vectorized=False)


def half_a_threshold(c: float) -> float:
    """Smallest ``a`` for which ``(a/2, a/2)`` is an equilibrium of the refined |11> game."""
    return (c + math.sqrt(c * c + 16)) / 2


@dataclass(frozen=True)
class HalfAReport:
    params: MarketParams
    threshold: float
    condition_holds: bool
    report: EpsNashReport
    payoff: float

    @property
    def certified(self) -> bool:
        return self.report.certified


def half_a_equilibrium_check(params: MarketParams, grid: GridSpec | None = None,
                             eps: float | None = None) -> HalfAReport:
    """Scan unilateral deviations from ``(a/2, a/2)`` under the refined |11> payoffs.

    A failed condition ``a >= threshold`` is reported, not raised.
    """
    if not params.c > 0:
        raise ValueError("half_a_equilibrium_check requires c > 0")
    if grid is None:
        grid = GridSpec(params.a, 601)
    if eps is None:
        eps = default_eps(params.a, params.c, grid)
    rho = initial_state("11")
    h = params.a / 2
    rep = eps_nash_verify(mw_game(rho, "Mprime", params), (h, h), grid, eps)
    thr = half_a_threshold(params.c)
    return HalfAReport(params, thr, params.a >= thr, rep, refined_payoff(1, h, h, rho, params))


def uniqueness_matrix(q1: float, q2: float) -> np.ndarray:
    """Coefficients of ``(x1..x4)`` in ``tr(rho_fin M)`` for the four basis inputs.

    Rows follow the initial states 00, 11, 01, 10.
    """
    return np.array([
        [1, q2, q1, q1 * q2],
        [q1 * q2, q1, q2, 1],
        [q2, 1, q1 * q2, q1],
        [q1, q1 * q2, 1, q2],
    ], dtype=float)


@dataclass(frozen=True)
class OperatorSolve:
    """Solution of the general-operator system.

    ``coefficients`` is the unique solution when ``rank == 4``; otherwise it
    is the minimum-norm member of a ``solution_dim``-dimensional affine set.
    """

    coefficients: np.ndarray
    rank: int
    solution_dim: int
    residual: float

    @property
    def singular(self) -> bool:
        return self.rank < 4


def trivial_operator_solve(q1: float, q2: float, player: int, params: MarketParams,
                           rtol: float = 1e-10) -> OperatorSolve:
    """Solve for the operator that reproduces the classical payoff from every basis input."""
    if player not in (1, 2):
        raise ValueError(f"player must be 1 or 2, got {player}")
    A = uniqueness_matrix(q1, q2)
    qi = q1 if player == 1 else q2
    rhs = np.full(4, qi * (params.margin - q1 - q2))
    U, s, Vt = np.linalg.svd(A)
    rank = int(np.sum(s > rtol * s[0]))
    x = Vt[:rank].T @ ((U[:, :rank].T @ rhs) / s[:rank])
    return OperatorSolve(x, rank, 4 - rank, float(np.abs(A @ x - rhs).max()))


def unboundedness_witness(params: MarketParams, target: float,
                          max_doublings: int = 200) -> tuple[float, float]:
    """Quantities whose |11>, ``M`` payoff to player 1 exceeds ``target``.

    Doubles ``q1 = q2`` from 1; the payoff grows like ``(a-c) q^3``.
    """
    if not target > 0:
        raise ValueError(f"target > 0 violated: target={target}")
    rho = initial_state("11")
    q = 1.0
    for _ in range(max_doublings):
        if mw_payoff(1, q, q, rho, "M", params) > target:
            return (q, q)
        q *= 2
    raise RuntimeError(f"no witness found below q = {q}")


@dataclass(frozen=True)
class HullReport:
    classical_max: float
    witness: tuple[float, float] | None
    witness_payoffs: tuple[float, float] | None
    violated: bool
    half_a_payoff: float | None = None


def convex_hull_violation_check(params: MarketParams, initial: str = "11",
                                variant="M", max_doublings: int = 60) -> HullReport:
    """Look for a payoff profile whose sum beats the classical joint maximum ``(a-c)^2/4``.

    The search doubles ``q1 = q2`` from 1 for ``max_doublings`` steps.  From
    ``|00>`` with ``M`` the payoffs are classical and no witness exists.
    """
    _, bound = monopoly_bound(params)
    rho = initial_state(initial)
    half = params.a / 2
    half_a = refined_payoff(1, half, half, rho, params) if initial == "11" else None
    q = 1.0
    for _ in range(max_doublings):
        u = (mw_payoff(1, q, q, rho, variant, params), mw_payoff(2, q, q, rho, variant, params))
        if u[0] + u[1] > bound:
            return HullReport(bound, (q, q), u, True, half_a)
        q *= 2
    return HullReport(bound, None, None, False, half_a)


def bertrand_quantum_payoffs(p1, p2, gamma: float, params: BertrandParams):
    """Payoffs of the quantum Bertrand game from ``cos(g)|00> + sin(g)|11>``."""
    a, b, c = params.a, params.b, params.c
    cg, sg = math.cos(gamma) ** 2, math.sin(gamma) ** 2
    u1 = (a - p1 + b * p2) * ((p1 - c) * cg + (p2 + p1 * (-1 - c * p2 + p2 * p2)) * sg)
    u2 = (a - p2 + b * p1) * ((p2 - c) * cg + (p1 + p2 * (-1 - c * p1 + p1 * p1)) * sg)
    return u1, u2


def bertrand_divergence_witness(params: BertrandParams, factor: float = 10.0,
                                max_doublings: int = 200) -> tuple[float, float, float]:
    """Price ``p2`` (with ``p1 = 0``, ``gamma = pi/2``) at which player 1 earns
    more than ``factor`` times the classical joint supremum.

    Returns ``(p2, u1, u2)``.
    """
    target = factor * bertrand_joint_supremum(params)
    p2 = 1.0
    for _ in range(max_doublings):
        u1, u2 = bertrand_quantum_payoffs(0.0, p2, math.pi / 2, params)
        if u1 > target:
            return p2, float(u1), float(u2)
        p2 *= 2
    raise RuntimeError(f"no witness found below p2 = {p2}")
