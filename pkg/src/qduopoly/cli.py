"""Command-line entry point: ``qduopoly {equilibrium,payoff,figures,verify}``.

Exit codes: 0 success, 1 usage or parameter error, 2 failed certification
or verification.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import checks, figures, scheme_ldm, scheme_mw, scheme_rsm
from .market import (BertrandParams, MarketParams, bertrand_equilibrium, bertrand_payoffs,
                     classical_equilibrium, cournot_payoff)
from .solver import EquilibriumResult, GridSpec

SCHEMES = ("classical", "bertrand", "mw", "ldm", "rsm")
OPERATORS = {"M": "M", "Mprime": "Mprime", "Mdoubleprime": "Mdoubleprime"}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    scheme: str
    params: MarketParams | BertrandParams
    gamma: float | None
    grid: GridSpec
    eps: float | None
    out: Path | None = None


def g12(v: float) -> str:
    return figures.fmt(v)


def build_config(args) -> RunConfig:
    scheme = args.scheme
    if scheme == "bertrand":
        params = BertrandParams(args.a, args.b, args.c)
    else:
        params = MarketParams(args.a, args.c)
    gamma = args.gamma
    if scheme in ("ldm", "rsm") and gamma is None:
        raise UsageError(f"--gamma is required for scheme {scheme}")
    if gamma is not None:
        if scheme == "ldm" and gamma < 0:
            raise UsageError(f"gamma >= 0 violated: gamma={gamma}")
        if scheme == "rsm":
            scheme_rsm.check_gamma(gamma)
    if args.xmax is not None:
        xmax = args.xmax
    elif scheme == "bertrand":
        xmax = params.price_box
    elif scheme == "ldm":
        xmax = scheme_ldm.strategy_box(gamma, params)
    else:
        xmax = params.a
    return RunConfig(scheme, params, gamma, GridSpec(xmax, args.grid_points), args.eps,
                     getattr(args, "out", None))


# --- equilibrium -------------------------------------------------------------

def _print_result(res: EquilibriumResult) -> None:
    if res.kind == "point":
        x1, x2 = res.data
        print(f"equilibrium: point ({g12(x1)}, {g12(x2)})  unique={res.unique}")
    elif res.kind == "segment":
        (p, q) = res.data
        print(f"equilibrium: segment x1+x2={g12(p[0] + p[1])} from ({g12(p[0])}, {g12(p[1])}) "
              f"to ({g12(q[0])}, {g12(q[1])})  unique=False")
    elif res.kind == "region":
        print(f"equilibrium: region x1 >= {g12(res.data[0])}, x2 >= {g12(res.data[1])}  unique=False")
    for (u1, u2), rep in zip(res.payoffs, res.certification):
        p = rep.profile
        print(f"  profile ({g12(p[0])}, {g12(p[1])}): payoffs ({g12(u1)}, {g12(u2)}), "
              f"max gain {rep.max_gain:.3g} <= eps {rep.eps:.3g}: "
              f"{'certified' if rep.certified else 'NOT certified'}")


def cmd_equilibrium(cfg: RunConfig, initial: str = "11") -> int:
    p = cfg.params
    if cfg.scheme == "classical":
        res = classical_equilibrium(p, cfg.grid, cfg.eps)
    elif cfg.scheme == "bertrand":
        res = bertrand_equilibrium(p, cfg.grid, cfg.eps)
    elif cfg.scheme == "ldm":
        res = scheme_ldm.equilibrium(cfg.gamma, p, cfg.grid, cfg.eps)
    elif cfg.scheme == "rsm":
        res = scheme_rsm.equilibrium_set(cfg.gamma, p, cfg.grid, cfg.eps)
    else:
        if initial == "00":
            res = classical_equilibrium(p, cfg.grid, cfg.eps)
        else:
            rep = scheme_mw.half_a_equilibrium_check(p, cfg.grid, cfg.eps)
            h = p.a / 2
            print(f"equilibrium: point ({g12(h)}, {g12(h)}) from |11>, operator M'")
            print(f"  condition a >= {g12(rep.threshold)}: {rep.condition_holds}")
            print(f"  payoffs ({g12(rep.payoff)}, {g12(rep.payoff)}), max gain "
                  f"{rep.report.max_gain:.3g} <= eps {rep.report.eps:.3g}: "
                  f"{'certified' if rep.certified else 'NOT certified'}")
            return 0 if rep.certified else 2
    _print_result(res)
    return 0 if res.certified else 2


# --- payoff ------------------------------------------------------------------

def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))
    return [getattr(args, n) for n in names]


def compute_payoffs(cfg: RunConfig, args) -> tuple[float, float]:
    p = cfg.params
    if cfg.scheme == "classical":
        q1, q2 = _require(args, "q1", "q2")
        return float(cournot_payoff(1, q1, q2, p)), float(cournot_payoff(2, q1, q2, p))
    if cfg.scheme == "bertrand":
        p1, p2 = _require(args, "p1", "p2")
        if cfg.gamma is None:
            u = bertrand_payoffs(p1, p2, p)
        else:
            u = scheme_mw.bertrand_quantum_payoffs(p1, p2, cfg.gamma, p)
        return float(u[0]), float(u[1])
    if cfg.scheme == "mw":
        q1, q2 = _require(args, "q1", "q2")
        if q1 < 0 or q2 < 0:
            raise UsageError("quantities must be nonnegative")
        rho = scheme_mw.initial_state(args.initial)
        op = OPERATORS[args.operator]
        return (scheme_mw.mw_payoff(1, q1, q2, rho, op, p),
                scheme_mw.mw_payoff(2, q1, q2, rho, op, p))
    x1, x2 = _require(args, "x1", "x2")
    if x1 < 0 or x2 < 0:
        raise UsageError("strategies must be nonnegative")
    if cfg.scheme == "ldm":
        return tuple(float(scheme_ldm.ldm_payoff(i, x1, x2, cfg.gamma, p, args.refined))
                     for i in (1, 2))
    return tuple(float(scheme_rsm.rsm_payoff(i, x1, x2, cfg.gamma, p)) for i in (1, 2))


def cmd_payoff(cfg: RunConfig, args) -> int:
    u1, u2 = compute_payoffs(cfg, args)
    print(f"u1 = {g12(u1)}")
    print(f"u2 = {g12(u2)}")
    return 0


# --- figures -----------------------------------------------------------------

def cmd_figures(out_dir: Path, params: MarketParams) -> int:
    try:
        paths = figures.write_all(out_dir, params)
    except OSError as exc:
        print(f"error: cannot write figures to {out_dir}: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0


# --- verify ------------------------------------------------------------------

def verification_battery(cfg: RunConfig, args) -> list[checks.Check]:
    p = cfg.params
    s = cfg.scheme
    if s == "classical":
        out = [checks.classical_certified(p)]
        if p.c > 0:
            out.append(checks.classical_uniqueness(p))
        return out
    if s == "bertrand":
        return [checks.bertrand_reduction(p), checks.bertrand_divergence(p),
                checks.bertrand_supremum(p)]
    if s == "mw":
        selected = args.trivial_operator or args.hull
        out = []
        if args.trivial_operator or not selected:
            q1 = 2.0 if args.q1 is None else args.q1
            q2 = 3.0 if args.q2 is None else args.q2
            out.append(checks.mw_trivial_operator(p, q1, q2))
        if args.hull or not selected:
            out.append(checks.mw_hull(p))
        if not selected:
            out += [checks.mw_reduction(p), checks.mw_half_a(p)]
        return out
    if s == "ldm":
        out = [checks.ldm_fock(cfg.gamma, args.cutoff)]
        if not args.fock and p.c > 0:
            out += [checks.ldm_uniqueness(cfg.gamma, p), checks.ldm_pareto(cfg.gamma, p)]
        return out
    out = [checks.rsm_matrix_path(), checks.rsm_endpoints(p)]
    if p.c > 0:
        out.append(checks.rsm_uniqueness(cfg.gamma, p))
    return out


def cmd_verify(cfg: RunConfig, args) -> int:
    results = verification_battery(cfg, args)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        print("failed: " + ", ".join(failed))
        return 2
    return 0


# --- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scheme", choices=SCHEMES, default="classical")
    common.add_argument("--a", type=float, default=30.0, help="demand intercept")
    common.add_argument("--c", type=float, default=3.0, help="marginal cost")
    common.add_argument("--b", type=float, default=0.5, help="Bertrand substitution coefficient")
    common.add_argument("--gamma", type=float, default=None, help="entanglement parameter")
    common.add_argument("--q1", type=float)
    common.add_argument("--q2", type=float)
    common.add_argument("--x1", type=float)
    common.add_argument("--x2", type=float)
    common.add_argument("--p1", type=float)
    common.add_argument("--p2", type=float)
    common.add_argument("--initial", choices=("00", "01", "10", "11"), default="11")
    common.add_argument("--operator", choices=tuple(OPERATORS), default="M")
    common.add_argument("--refined", action="store_true", help="LDM payoff with zero-price branch")
    common.add_argument("--grid-points", type=int, default=601)
    common.add_argument("--xmax", type=float, default=None, help="strategy box edge")
    common.add_argument("--eps", type=float, default=None, help="eps-Nash tolerance")

    parser = argparse.ArgumentParser(prog="qduopoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("equilibrium", parents=[common], help="analytic equilibrium plus grid certification")
    sub.add_parser("payoff", parents=[common], help="payoff pair at a profile")
    fig = sub.add_parser("figures", parents=[common], help="write fig0..fig3 CSV files")
    fig.add_argument("--out", type=Path, default=Path("figures"))
    ver = sub.add_parser("verify", parents=[common], help="run a verification battery")
    ver.add_argument("--fock", action="store_true", help="ldm: only the Fock-space oracle")
    ver.add_argument("--cutoff", type=int, default=24)
    ver.add_argument("--trivial-operator", action="store_true", help="mw: general-operator system")
    ver.add_argument("--hull", action="store_true", help="mw: convex-hull violation")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        if args.command == "figures":
            return cmd_figures(args.out, MarketParams(args.a, args.c))
        cfg = build_config(args)
        if args.command == "equilibrium":
            return cmd_equilibrium(cfg, args.initial)
        if args.command == "payoff":
            return cmd_payoff(cfg, args)
        return cmd_verify(cfg, args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
