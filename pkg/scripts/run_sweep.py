"""Verify every covered parameter over a range of primes and report mismatches."""

import argparse
import json
import sys
import time

from thetadyn.harness import ALL_CASES, sweep


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-min", type=int, default=3)
    ap.add_argument("--p-max", type=int, default=200)
    ap.add_argument("--n-max", type=int, default=2)
    ap.add_argument("--q-max", type=int, default=10**5)
    ap.add_argument("--cases", default=",".join(ALL_CASES))
    ap.add_argument("--json", help="write every report to this file")
    args = ap.parse_args(argv)

    cases = tuple(c for c in args.cases.split(",") if c)
    t0 = time.perf_counter()
    res = sweep((args.p_min, args.p_max), args.n_max, cases, q_max=args.q_max)
    elapsed = time.perf_counter() - t0

    per_case: dict[str, list[int]] = {}
    for r in res.reports:
        tally = per_case.setdefault(r.tag.kind, [0, 0])
        tally[0 if r.ok else 1] += 1
        if not r.ok:
            print(f"MISMATCH p={r.p} n={r.n} k={r.k}: {r.mismatches or r.structural}")
    for err in res.errors:
        print(f"ERROR p={err['p']} n={err['n']} k={err['k']}: {err['error']}")
    for case in sorted(per_case):
        ok, bad = per_case[case]
        print(f"{case:10s} {ok:6d} ok {bad:4d} failed")
    print(f"{len(res.reports)} instances in {elapsed:.1f} s: passed {res.passed}, failed {res.failed}")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.to_dict() for r in res.reports], fh, indent=1)
    return 1 if res.failed else 0


if __name__ == "__main__":
    sys.exit(main())
