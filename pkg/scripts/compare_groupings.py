"""Compare the two cycle-class groupings for the Klein curve against brute force.

Only primes where pi^n -+ 1 contains the square of sqrt(-7) can separate the
rules; the script lists those and reports which rule reproduces the graph.
"""

import argparse

from thetadyn.arith import is_prime
from thetadyn.case23 import BY_ANNIHILATOR, BY_ORDER, predict_case23
from thetadyn.cmcurve import CurveCase, case_params, frobenius_elem, make_curve
from thetadyn.ffield import build_field
from thetadyn.projdyn import ThetaMap, build_graph, summarize
from thetadyn.qring import RAMIFIED, factor

CASE3 = CurveCase.CASE3


def ramified_square(p: int) -> bool:
    pi = frobenius_elem(make_curve(CASE3, p)).pi_p
    rho0 = pi.ring.alpha
    return any(c.kind == RAMIFIED and c.exponent >= 2 for m in (pi - 1, pi + 1) for c in factor(m, rho0).others)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-max", type=int, default=3000)
    args = ap.parse_args(argv)
    for p in range(11, args.p_max + 1):
        if not (is_prime(p) and CASE3.admits(p)) or not ramified_square(p):
            continue
        ctx = build_field(p)
        for k in case_params(CASE3, p).ks:
            s = summarize(build_graph(ThetaMap(ctx, k), ctx))
            by_ann = predict_case23(CASE3, p, 1, k, BY_ANNIHILATOR).cycle_spectrum
            by_ord = predict_case23(CASE3, p, 1, k, BY_ORDER).cycle_spectrum
            print(
                f"p={p:5d} k={k:5d} observed {s.cycle_spectrum}\n"
                f"    annihilator {'ok' if by_ann == s.cycle_spectrum else by_ann}"
                f"  order {'ok' if by_ord == s.cycle_spectrum else by_ord}"
            )


if __name__ == "__main__":
    main()
