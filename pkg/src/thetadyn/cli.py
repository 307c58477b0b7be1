"""Command line: ``thetadyn {predict,build,verify,sweep,export}``.

Exit codes: 0 on success or full match, 2 on a prediction mismatch, 1 on error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ThetaDynError
from .ffield import build_field
from .harness import (
    ALL_CASES,
    HarnessConfig,
    export_graph,
    predict,
    report_json,
    sweep,
    verify,
)
from .projdyn import ThetaMap, build_graph, summarize

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


def _modulus(text: str | None):
    if not text:
        return None
    return [int(c) for c in text.split(",")]


def _add_point_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--modulus", help="little-endian monic coefficients c0,c1,...,1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thetadyn", description="Functional graphs of x -> k(x + 1/x) over finite fields.")
    parser.add_argument("--config", help="JSON file with limit / labeling / fmt defaults")
    parser.add_argument("--limit", type=int, help="brute-force domain limit (overrides THETA_BF_LIMIT)")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("predict", help="closed-form structure for a covered k")
    _add_point_args(sp)

    sp = sub.add_parser("build", help="brute-force graph summary")
    _add_point_args(sp)

    sp = sub.add_parser("verify", help="compare prediction with brute force")
    _add_point_args(sp)

    sp = sub.add_parser("sweep", help="verify every covered k over a prime range")
    sp.add_argument("--p-min", type=int, default=3)
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--n-max", type=int, default=1)
    sp.add_argument("--q-max", type=int)
    sp.add_argument("--cases", default=",".join(ALL_CASES), help="comma-separated subset of " + ",".join(ALL_CASES))

    sp = sub.add_parser("export", help="write the graph as DOT or JSON")
    _add_point_args(sp)
    sp.add_argument("--format", dest="fmt", choices=("dot", "json"))
    sp.add_argument("--labeling", choices=("dlog", "raw"))
    sp.add_argument("--out", help="output file (default stdout)")
    return parser


def _config(args) -> HarnessConfig:
    config = HarnessConfig.from_file(args.config) if args.config else HarnessConfig()
    if args.limit is not None:
        config.limit = args.limit
    if getattr(args, "fmt", None):
        config.fmt = args.fmt
    if getattr(args, "labeling", None):
        config.labeling = args.labeling
    return config


def run(args) -> int:
    config = _config(args)
    out = sys.stdout
    if args.command == "predict":
        tag, report = predict(args.p, args.n, args.k)
        doc = {"case": tag.kind, "choice": tag.choice}
        doc["prediction"] = None if report is None else report.to_dict()
        out.write(json.dumps(doc, ensure_ascii=False, indent=2) + "\n")
        return EXIT_OK
    if args.command == "build":
        ctx = build_field(args.p, args.n, _modulus(args.modulus))
        s = summarize(build_graph(ThetaMap(ctx, args.k), ctx, config.limit))
        doc = {
            "q": ctx.q,
            "k": args.k % args.p,
            "cycle_spectrum": [list(x) for x in s.cycle_spectrum],
            "components": s.components,
            "indegree_histogram": {str(a): b for a, b in s.indegree_histogram.items()},
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    if args.command == "verify":
        rep = verify(args.p, args.n, args.k, _modulus(args.modulus), config)
        out.write(report_json(rep) + "\n")
        return EXIT_OK if rep.ok else EXIT_MISMATCH
    if args.command == "sweep":
        cases = tuple(c.strip() for c in args.cases.split(",") if c.strip())
        unknown = set(cases) - set(ALL_CASES)
        if unknown:
            raise ValueError(f"unknown cases {sorted(unknown)}")
        res = sweep((args.p_min, args.p_max), args.n_max, cases, config, args.q_max)
        for r in res.reports:
            status = "ok" if r.ok else "MISMATCH"
            out.write(f"p={r.p} n={r.n} k={r.k} {r.tag.kind}: {status}\n")
        for e in res.errors:
            out.write(f"p={e['p']} n={e['n']} k={e['k']}: ERROR {e['error']}\n")
        out.write(f"passed {res.passed} failed {res.failed}\n")
        return EXIT_OK if res.failed == 0 else EXIT_MISMATCH
    if args.command == "export":
        ctx = build_field(args.p, args.n, _modulus(args.modulus))
        g = build_graph(ThetaMap(ctx, args.k), ctx, config.limit, name=f"theta_{args.k % args.p}")
        data = export_graph(g, config.fmt, config.labeling, k=args.k % args.p)
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(data)
        else:
            out.write(data.decode("utf-8"))
        return EXIT_OK
    raise AssertionError(args.command)  # pragma: no cover


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (ThetaDynError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
