"""Tabulated data behind the four figures.

Each function returns ``(header, rows)``; :func:`write_csv` fixes the
on-disk format so repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from . import scheme_ldm, scheme_rsm
from .market import MarketParams
from .scheme_mw import half_a_threshold, initial_state, refined_payoff

DEFAULT_PARAMS = MarketParams(30.0, 3.0)
LDM_GAMMA = 0.5
RSM_GAMMA = math.pi / 6


def fmt(v: float) -> str:
    v = float(v)
    return "0" if v == 0 else f"{v:.12g}"


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def fig0(c: float = 3.0, a_max: float = 40.0, step: float = 0.5):
    """Classical equilibrium payoff vs. refined |11> payoff at ``(a/2, a/2)``."""
    a0 = half_a_threshold(c)
    rho = initial_state("11")
    rows = []
    for k in range(int(math.floor((a_max - a0) / step + 1e-9)) + 1):
        a = a0 + k * step
        p = MarketParams(a, c)
        rows.append((a, p.margin ** 2 / 9, refined_payoff(1, a / 2, a / 2, rho, p)))
    return ("a", "u_classical", "u_quantum"), rows


def fig1(params: MarketParams = DEFAULT_PARAMS, gamma: float = LDM_GAMMA, samples: int = 201):
    xs = np.linspace(0.0, scheme_ldm.strategy_box(gamma, params), samples)
    br = scheme_ldm.best_reply(xs, gamma, params)
    return ("x", "beta1", "beta2"), list(zip(xs, br, br))


def fig2(params: MarketParams = DEFAULT_PARAMS, gamma: float = RSM_GAMMA, samples: int = 201):
    xs = np.linspace(0.0, params.a, samples)
    br = scheme_rsm.best_reply(xs, gamma, params)
    return ("x", "beta1", "beta2"), list(zip(xs, br, br))


def fig3(params: MarketParams = DEFAULT_PARAMS, samples: int = 200):
    gs = np.linspace(0.0, scheme_rsm.GAMMA_MAX, samples)
    return ("gamma", "payoff"), [(g, scheme_rsm.equilibrium_payoff(g, params)) for g in gs]


def write_all(out_dir: Path, params: MarketParams = DEFAULT_PARAMS) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tables = {
        "fig0.csv": fig0(params.c),
        "fig1.csv": fig1(params),
        "fig2.csv": fig2(params),
        "fig3.csv": fig3(params),
    }
    paths = []
    for name, (header, rows) in tables.items():
        path = out_dir / name
        write_csv(path, header, rows)
        paths.append(path)
    return paths
