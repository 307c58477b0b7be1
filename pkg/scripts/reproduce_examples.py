"""Print predicted and brute-force structure for the worked examples.

Exit status is 1 if any example disagrees with its prediction.
"""

import sys

from thetadyn.harness import verify

EXAMPLES = [
    # (p, n, k, modulus, note)
    (29, 1, 14, None, "theta_{-1/2} on F_29"),
    (29, 1, 15, None, "theta_{1/2} on F_29"),
    (7, 2, 24, [3, 5, 1], "theta_{-1/2} on F_49, modulus x^2 - 2x + 3"),
    (53, 1, 15, None, "Gaussian curve, k = 15"),
    (53, 1, 38, None, "Gaussian curve, k = 38"),
    (53, 1, 7, None, "Klein curve, k = 7"),
    (53, 1, 19, None, "Klein curve, k = 19"),
]


def main() -> int:
    bad = 0
    for p, n, k, modulus, note in EXAMPLES:
        rep = verify(p, n, k, modulus=modulus)
        status = "ok" if rep.ok else "MISMATCH"
        bad += not rep.ok
        print(f"{note}  [{rep.tag.kind}]")
        print(f"  predicted {rep.predicted.cycle_spectrum}")
        print(f"  observed  {rep.observed.cycle_spectrum}  max depth {max(rep.observed.depth)}  {status}")
        for t in rep.predicted.tree_plan:
            if t.roots:
                print(f"    {t.roots:3d} roots on {t.cycle_length}-cycles: {t.shape} tree, depth {t.depth} ({t.tag})")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
