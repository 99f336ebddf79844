"""Print the headline numbers for a=30, c=3 in every scheme."""

import math

from qduopoly import scheme_ldm, scheme_mw, scheme_rsm
from qduopoly.market import MarketParams, classical_equilibrium, monopoly_bound


def main() -> None:
    p = MarketParams(30, 3)
    res = classical_equilibrium(p)
    print(f"classical equilibrium {res.data}, payoff {res.payoffs[0][0]:g}")
    print(f"monopoly bound {monopoly_bound(p)}")

    rho = scheme_mw.initial_state("11")
    print(f"MW refined |11> payoff at (15, 15): {scheme_mw.refined_payoff(1, 15, 15, rho, p):g}")
    rep = scheme_mw.half_a_equilibrium_check(p)
    print(f"MW (a/2, a/2) certified: {rep.certified} (max gain {rep.report.max_gain:.3g})")
    print(f"MW witness above 1e9: q = {scheme_mw.unboundedness_witness(p, 1e9)}")

    for g in (0.0, 0.3, math.log(2), 1.2):
        x = scheme_ldm.equilibrium_point(g, p)
        u = float(scheme_ldm.ldm_payoff(1, x, x, g, p))
        print(f"LDM gamma={g:.4f}: x* = {x:.6f}, payoff {u:.6f}")

    for g in (0.0, math.pi / 8, math.pi / 6, math.pi / 4):
        x = scheme_rsm.equilibrium_point(g, p)
        print(f"RSM gamma={g:.4f}: x* = {x:.6f}, payoff {scheme_rsm.equilibrium_payoff(g, p):.6f}")


if __name__ == "__main__":
    main()
