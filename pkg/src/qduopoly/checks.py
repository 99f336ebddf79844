"""Verification batteries run by ``qduopoly verify``.

Each check returns a :class:`Check`; nothing here raises on failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import scheme_ldm, scheme_mw, scheme_rsm
from .market import (BertrandParams, MarketParams, bertrand_game, bertrand_joint_supremum,
                     bertrand_payoffs, classical_equilibrium, cournot_game)
from .solver import (GridSpec, brute_force_equilibria, check_unique, discretization_radius,
                     pareto_scan)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def grid_nash_eps(params: MarketParams) -> float:
    """Tolerance for mutual grid best responses: float noise on the payoff scale."""
    return 1e-9 * max(1.0, params.margin ** 2)


def classical_uniqueness(params: MarketParams, n: int = 601) -> Check:
    grid = GridSpec(params.a, n)
    q = params.margin / 3
    found = brute_force_equilibria(cournot_game(params), grid, grid_nash_eps(params))
    rep = check_unique(found, (q, q), discretization_radius(-0.5, grid.step))
    return Check("classical uniqueness", rep.unique,
                 f"{len(found)} grid equilibria, max distance {rep.max_distance:.4g} "
                 f"<= {rep.radius:.4g}")


def classical_certified(params: MarketParams) -> Check:
    res = classical_equilibrium(params)
    gain = max(r.max_gain for r in res.certification)
    return Check("classical eps-Nash", res.certified, f"{res.kind} {res.data}, max gain {gain:.3g}")


def mw_trivial_operator(params: MarketParams, q1: float, q2: float) -> Check:
    out = []
    ok = True
    for player in (1, 2):
        sol = scheme_mw.trivial_operator_solve(q1, q2, player, params)
        qi = q1 if player == 1 else q2
        expected = qi * (params.margin - q1 - q2) / ((1 + q1) * (1 + q2))
        if sol.singular:
            ok = False
            out.append(f"player {player}: singular (rank {sol.rank}, {sol.solution_dim}-dim solutions)")
            continue
        good = bool(np.allclose(sol.coefficients, expected, rtol=0, atol=1e-9))
        ok &= good
        out.append(f"player {player}: all-equal {expected:.12g}" if good
                   else f"player {player}: {sol.coefficients}")
    return Check("mw trivial operator", ok, "; ".join(out))


def mw_hull(params: MarketParams) -> Check:
    rep = scheme_mw.convex_hull_violation_check(params)
    if not rep.violated:
        return Check("mw hull violation", False, "no witness found")
    return Check("mw hull violation", True,
                 f"violation exhibited at q={rep.witness}, payoff sum "
                 f"{sum(rep.witness_payoffs):.12g} > {rep.classical_max:.12g}; "
                 f"refined (a/2,a/2) payoff {rep.half_a_payoff:.12g}")


def mw_half_a(params: MarketParams) -> Check:
    rep = scheme_mw.half_a_equilibrium_check(params)
    return Check("mw (a/2,a/2) equilibrium", rep.certified == rep.condition_holds,
                 f"a >= {rep.threshold:.6g}: {rep.condition_holds}; certified {rep.certified}, "
                 f"max gain {rep.report.max_gain:.3g}, payoff {rep.payoff:.12g}")


def mw_reduction(params: MarketParams, n: int = 50) -> Check:
    rho = scheme_mw.initial_state("00")
    qs = np.linspace(0, params.a, n)
    err = 0.0
    for q1 in qs:
        for q2 in qs:
            closed = q1 * (params.margin - q1 - q2)
            err = max(err, abs(scheme_mw.mw_payoff(1, q1, q2, rho, "M", params) - closed))
    return Check("mw |00> reduction", err <= 1e-9, f"max error {err:.3g} on {n}x{n} grid")


def ldm_fock(gamma: float, cutoff: int, xs=(0.0, 0.3, 0.7)) -> Check:
    worst_err, worst_tail = 0.0, 0.0
    for x1 in xs:
        for x2 in xs:
            r = scheme_ldm.fock_verify_quantity_map(scheme_ldm.LdmStrategy(x1, x2, gamma),
                                                    scheme_ldm.FockConfig(cutoff))
            worst_err = max(worst_err, r.error)
            worst_tail = max(worst_tail, r.tail_mass)
    ok = worst_err <= 1e-6 and worst_tail < scheme_ldm.TAIL_LIMIT
    return Check("ldm fock oracle", ok,
                 f"gamma={gamma:g}, cutoff={cutoff}: max error {worst_err:.3g}, tail mass {worst_tail:.3g}")


def ldm_uniqueness(gamma: float, params: MarketParams, n: int = 401) -> Check:
    grid = GridSpec(scheme_ldm.strategy_box(gamma, params), n)
    x = scheme_ldm.equilibrium_point(gamma, params)
    found = brute_force_equilibria(scheme_ldm.ldm_game(gamma, params), grid, grid_nash_eps(params))
    rep = check_unique(found, (x, x), discretization_radius(scheme_ldm.best_reply_slope(gamma), grid.step))
    return Check("ldm uniqueness", rep.unique,
                 f"gamma={gamma:g}: x*={x:.12g}, {len(found)} grid equilibria within "
                 f"{rep.max_distance:.4g} (radius {rep.radius:.4g})")


def ldm_pareto(gamma: float, params: MarketParams, n: int = 401) -> Check:
    grid = GridSpec(scheme_ldm.strategy_box(gamma, params), n)
    best, argmax = pareto_scan(scheme_ldm.ldm_game(gamma, params), grid)
    target = params.margin ** 2 / 4
    line = params.margin * math.exp(-gamma) / 2
    off = max(abs(x1 + x2 - line) for x1, x2 in argmax)
    ok = abs(best - target) <= 5e-3 * target and off <= grid.step
    return Check("ldm pareto", ok, f"gamma={gamma:g}: max sum {best:.12g} (target {target:.12g}), "
                                   f"band offset {off:.3g}")


def rsm_matrix_path(samples: int = 500, seed: int = 0) -> Check:
    rng = np.random.default_rng(seed)
    err = 0.0
    for _ in range(samples):
        x1, x2 = rng.uniform(0, 50, 2)
        g = rng.uniform(0, scheme_rsm.GAMMA_MAX)
        qm = scheme_rsm.quantity_map_matrix(scheme_rsm.RsmStrategy(x1, x2, g))
        qc = scheme_rsm.quantity_map(x1, x2, g)
        err = max(err, abs(qm[0] - qc[0]), abs(qm[1] - qc[1]))
    return Check("rsm matrix path", err <= 1e-12, f"max error {err:.3g} over {samples} samples")


def rsm_band_eps(grid: GridSpec) -> float:
    """At g = pi/4 a profile k steps off the band loses k^2 h^2 / 2; admit k = 1 only."""
    return grid.step ** 2


def rsm_uniqueness(gamma: float, params: MarketParams, n: int = 401) -> Check:
    grid = GridSpec(params.a, n)
    game = scheme_rsm.rsm_game(gamma, params)
    if scheme_rsm.is_maximal(gamma):
        found = brute_force_equilibria(game, grid, rsm_band_eps(grid))
        half = params.margin / 2
        g = grid.points
        X1, X2 = np.meshgrid(g, g, indexing="ij")
        band = np.abs(X1 + X2 - half) <= grid.step * (1 + 1e-9)
        expected = sorted((float(a), float(b)) for a, b in zip(X1[band], X2[band]))
        ok = found == expected
        return Check("rsm band", ok, f"{len(found)} grid equilibria; band has {len(expected)} points")
    x = scheme_rsm.equilibrium_point(gamma, params)
    found = brute_force_equilibria(game, grid, grid_nash_eps(params))
    rep = check_unique(found, (x, x), discretization_radius(scheme_rsm.best_reply_slope(gamma), grid.step))
    return Check("rsm uniqueness", rep.unique,
                 f"gamma={gamma:.6g}: x*={x:.12g}, {len(found)} grid equilibria within "
                 f"{rep.max_distance:.4g} (radius {rep.radius:.4g})")


def rsm_endpoints(params: MarketParams) -> Check:
    lo = scheme_rsm.equilibrium_payoff(0.0, params)
    hi = scheme_rsm.equilibrium_payoff(scheme_rsm.GAMMA_MAX, params)
    m2 = params.margin ** 2
    ok = abs(lo - m2 / 9) <= 1e-9 and abs(hi - m2 / 8) <= 1e-9
    return Check("rsm payoff endpoints", ok, f"u(0)={lo:.12g}, u(pi/4)={hi:.12g}")


def bertrand_reduction(params: BertrandParams, samples: int = 1000, seed: int = 0) -> Check:
    rng = np.random.default_rng(seed)
    p = rng.uniform(0, params.price_box, (samples, 2))
    uq = scheme_mw.bertrand_quantum_payoffs(p[:, 0], p[:, 1], 0.0, params)
    uc = bertrand_payoffs(p[:, 0], p[:, 1], params)
    err = float(max(np.abs(uq[0] - uc[0]).max(), np.abs(uq[1] - uc[1]).max()))
    return Check("bertrand gamma=0 reduction", err <= 1e-12 * max(1.0, np.abs(uc).max()),
                 f"max error {err:.3g}")


def bertrand_divergence(params: BertrandParams) -> Check:
    p2, u1, _ = scheme_mw.bertrand_divergence_witness(params)
    sup = bertrand_joint_supremum(params)
    return Check("bertrand divergence", u1 > 10 * sup,
                 f"p1=0, p2={p2:g}: u1={u1:.12g} > 10 x {sup:.12g}")


def bertrand_supremum(params: BertrandParams, n: int = 801) -> Check:
    grid = GridSpec(params.price_box, n)
    best, _ = pareto_scan(bertrand_game(params), grid)
    sup = bertrand_joint_supremum(params)
    return Check("bertrand joint supremum", abs(best - sup) <= 5e-3 * sup,
                 f"grid max {best:.12g} vs formula {sup:.12g}")
