"""Grid oracles for two-player games with continuous strategy sets.

Every routine here is scheme-agnostic: a game is a :class:`PayoffPair` of
callables ``u(x1, x2)`` and strategies live on the box ``[0, xmax]^2``
discretised by a :class:`GridSpec`.  Payoff callables are evaluated with
numpy broadcasting when ``vectorized`` is set, otherwise element by element.

Tie-breaking is always toward the smallest strategy value (lowest index), so
results do not depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

Payoff = Callable[[np.ndarray, np.ndarray], np.ndarray]
Profile = tuple[float, float]

# relative slack used when deciding whether two payoff values tie
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``j * xmax / (n - 1)``, ``j = 0..n-1``, on each axis."""

    xmax: float
    n: int

    def __post_init__(self) -> None:
        if not self.xmax > 0:
            raise ValueError(f"xmax > 0 violated: xmax={self.xmax}")
        if self.n < 2:
            raise ValueError(f"n >= 2 violated: n={self.n}")

    @property
    def step(self) -> float:
        return self.xmax / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return np.arange(self.n) * self.xmax / (self.n - 1)


@dataclass(frozen=True)
class PayoffPair:
    """The two payoff functions of a game, each a function of ``(x1, x2)``."""

    u1: Payoff
    u2: Payoff
    vectorized: bool = True

    def player(self, i: int) -> Payoff:
        if i == 1:
            return self.u1
        if i == 2:
            return self.u2
        raise ValueError(f"player must be 1 or 2, got {i}")


@dataclass(frozen=True)
class EpsNashReport:
    profile: Profile
    max_gain_1: float
    max_gain_2: float
    eps: float
    certified: bool

    @property
    def max_gain(self) -> float:
        return max(self.max_gain_1, self.max_gain_2)


@dataclass(frozen=True)
class EquilibriumResult:
    """A point, segment or unbounded region of equilibrium profiles.

    ``data`` holds the point ``(x1, x2)`` for ``kind="point"``, the endpoint
    pair for ``kind="segment"`` and the lower-left corner ``(x1_min, x2_min)``
    of the quadrant ``{x1 >= x1_min, x2 >= x2_min}`` for ``kind="region"``.
    ``payoffs`` and ``certification`` are aligned with
    :meth:`representatives`.
    """

    kind: str
    data: tuple
    unique: bool
    payoffs: tuple[tuple[float, float], ...] = ()
    certification: tuple[EpsNashReport, ...] = ()

    def representatives(self, k: int = 5) -> list[Profile]:
        if self.kind == "point":
            return [tuple(map(float, self.data))]
        if self.kind == "segment":
            return sample_segment(self.data, k)
        if self.kind == "region":
            x1, x2 = self.data
            span = max(x1, x2, 1.0)
            return [(x1 + s * span, x2 + t * span) for s, t in
                    [(0, 0), (0.5, 0), (0, 0.5), (0.25, 0.75), (0.5, 0.5)][:k]]
        return []

    @property
    def certified(self) -> bool:
        return bool(self.certification) and all(r.certified for r in self.certification)

    def certify(self, u: PayoffPair, grid: GridSpec, eps: float, k: int = 5) -> "EquilibriumResult":
        """Return a copy carrying payoffs and eps-Nash reports for the representatives."""
        reps = self.representatives(k)
        payoffs = tuple((_scalar(u.u1, p), _scalar(u.u2, p)) for p in reps)
        reports = tuple(eps_nash_verify(u, p, grid, eps) for p in reps)
        return EquilibriumResult(self.kind, self.data, self.unique, payoffs, reports)


class ConvergenceError(RuntimeError):
    """Best-response iteration did not settle; ``trajectory`` holds the last profiles."""

    def __init__(self, message: str, trajectory: list[Profile]):
        super().__init__(message)
        self.trajectory = trajectory


def sample_segment(endpoints, k: int = 5) -> list[Profile]:
    (p0, p1) = endpoints
    ts = np.linspace(0.0, 1.0, k)
    return [(float(p0[0] + t * (p1[0] - p0[0])), float(p0[1] + t * (p1[1] - p0[1]))) for t in ts]


def default_eps(a: float, c: float, grid: GridSpec, lipschitz: float | None = None) -> float:
    """Grid-step-scaled tolerance ``L * h`` with ``L = 2(a + c)`` unless given."""
    L = 2.0 * (a + c) if lipschitz is None else lipschitz
    return L * grid.step


def _evaluate(u: Payoff, x1, x2, vectorized: bool) -> np.ndarray:
    x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
    if vectorized:
        return np.asarray(u(x1, x2), dtype=float) * np.ones_like(x1)
    return np.vectorize(u, otypes=[float])(x1, x2)


def _scalar(u: Payoff, profile: Sequence[float]) -> float:
    return float(np.asarray(u(float(profile[0]), float(profile[1]))))


def _first_max(values: np.ndarray) -> int:
    best = values.max()
    tol = TIE_RTOL * max(1.0, abs(best))
    return int(np.flatnonzero(values >= best - tol)[0])


def grid_best_response(u: Payoff, player: int, opponent_value: float, grid: GridSpec,
                       vectorized: bool = True) -> float:
    """Grid point maximising ``player``'s payoff against a fixed opponent value."""
    own = grid.points
    other = np.full_like(own, float(opponent_value))
    if player == 1:
        vals = _evaluate(u, own, other, vectorized)
    elif player == 2:
        vals = _evaluate(u, other, own, vectorized)
    else:
        raise ValueError(f"player must be 1 or 2, got {player}")
    return float(own[_first_max(vals)])


def eps_nash_verify(u: PayoffPair, profile: Sequence[float], grid: GridSpec,
                    eps: float) -> EpsNashReport:
    """Scan all unilateral grid deviations from ``profile``.

    The gains are floored at zero; the profile is certified when neither
    player can improve by more than ``eps``.
    """
    if not eps > 0:
        raise ValueError(f"eps > 0 violated: eps={eps}")
    x1, x2 = float(profile[0]), float(profile[1])
    own = grid.points
    dev1 = _evaluate(u.u1, own, np.full_like(own, x2), u.vectorized).max()
    dev2 = _evaluate(u.u2, np.full_like(own, x1), own, u.vectorized).max()
    base1 = _evaluate(u.u1, x1, x2, u.vectorized).item()
    base2 = _evaluate(u.u2, x1, x2, u.vectorized).item()
    g1 = max(0.0, float(dev1 - base1))
    g2 = max(0.0, float(dev2 - base2))
    return EpsNashReport((x1, x2), g1, g2, eps, g1 <= eps and g2 <= eps)


def best_response_iteration(u: PayoffPair, init: Sequence[float], grid: GridSpec,
                            max_iters: int = 200, tol: float = 0.0) -> Profile:
    """Alternate grid best responses (player 1 first) until the profile stops moving.

    Raises:
        ConvergenceError: if ``max_iters`` sweeps pass without the profile
            moving less than ``tol`` in max-norm.
    """
    if max_iters < 1:
        raise ValueError("max_iters >= 1 violated")
    x1, x2 = float(init[0]), float(init[1])
    trajectory: list[Profile] = [(x1, x2)]
    for _ in range(max_iters):
        n1 = grid_best_response(u.u1, 1, x2, grid, u.vectorized)
        n2 = grid_best_response(u.u2, 2, n1, grid, u.vectorized)
        moved = max(abs(n1 - x1), abs(n2 - x2))
        x1, x2 = n1, n2
        trajectory.append((x1, x2))
        if moved <= tol:
            return (x1, x2)
    raise ConvergenceError(f"no convergence after {max_iters} sweeps", trajectory[-10:])


def payoff_matrices(u: PayoffPair, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """``U[k][i, j] = u_k(g_i, g_j)``: rows index player 1, columns player 2."""
    g = grid.points
    X1, X2 = np.meshgrid(g, g, indexing="ij")
    return _evaluate(u.u1, X1, X2, u.vectorized), _evaluate(u.u2, X1, X2, u.vectorized)


def brute_force_equilibria(u: PayoffPair, grid: GridSpec, eps: float) -> list[Profile]:
    """Every grid profile whose best unilateral grid deviation gains at most ``eps``.

    Column/row maxima are computed once, so the cost is ``n^2`` payoff
    evaluations per player.  Output is in lexicographic order.
    """
    U1, U2 = payoff_matrices(u, grid)
    gain1 = U1.max(axis=0)[None, :] - U1
    gain2 = U2.max(axis=1)[:, None] - U2
    idx = np.argwhere((gain1 <= eps) & (gain2 <= eps))
    g = grid.points
    return [(float(g[i]), float(g[j])) for i, j in idx]


def pareto_scan(u: PayoffPair, grid: GridSpec, eps: float | None = None) -> tuple[float, list[Profile]]:
    """Maximum of ``u1 + u2`` on the grid and every profile within ``eps`` of it."""
    U1, U2 = payoff_matrices(u, grid)
    total = U1 + U2
    best = float(total.max())
    if eps is None:
        eps = 1e-9 * max(1.0, abs(best))
    idx = np.argwhere(total >= best - eps)
    g = grid.points
    return best, [(float(g[i]), float(g[j])) for i, j in idx]


def discretization_radius(slope: float, step: float) -> float:
    """Max-norm distance within which every grid equilibrium lies.

    For payoffs that are concave quadratics in the player's own strategy the
    grid best reply is the grid point nearest the true best reply, so an
    error ``e`` obeys ``|e| <= h/2 + |slope| |e|`` where ``slope`` is the
    best-reply slope at the equilibrium.
    """
    if not abs(slope) < 1:
        raise ValueError(f"|slope| < 1 required, got {slope}")
    return 0.5 * step / (1 - abs(slope))


@dataclass
class UniquenessReport:
    """Brute-force equilibrium set compared against an analytic point."""

    target: Profile
    found: list[Profile] = field(default_factory=list)
    radius: float = 0.0
    max_distance: float = float("nan")

    @property
    def unique(self) -> bool:
        return bool(self.found) and self.max_distance <= self.radius * (1 + 1e-9)


def check_unique(found: list[Profile], target: Sequence[float], radius: float) -> UniquenessReport:
    """Is ``found`` nonempty and contained in the max-norm ball of ``radius`` around ``target``?"""
    t = (float(target[0]), float(target[1]))
    rep = UniquenessReport(t, list(found), radius)
    if found:
        rep.max_distance = float(np.abs(np.asarray(found) - np.asarray(t)).max())
    return rep
