"""Case classification, prediction-versus-brute-force verification, export."""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field

from .arith import is_prime, quadratic_roots_mod
from .case1 import Case1Input, predict_case1
from .case23 import predict_case23
from .cmcurve import CurveCase, case_params
from .errors import KZeroError, ThetaDynError
from .ffield import INF, FieldCtx, build_field
from .projdyn import (
    FunctionalGraph,
    GraphSummary,
    ThetaMap,
    build_graph,
    index_to_point,
    summarize,
    tree_size,
)
from .report import StructureReport

CASE1_PLUS = "Case1Plus"
CASE1_MINUS = "Case1Minus"
CASE2 = "Case2"
CASE3 = "Case3"
GENERIC = "Generic"
ALL_CASES = (CASE1_PLUS, CASE1_MINUS, CASE2, CASE3)


@dataclass(frozen=True)
class CaseTag:
    kind: str
    choice: int | None = None  # sigma index for cases 2 and 3

    @property
    def has_theory(self) -> bool:
        return self.kind != GENERIC


@dataclass
class HarnessConfig:
    """Knobs shared by the CLI and the library entry points."""

    limit: int | None = None  # brute-force domain limit; None defers to THETA_BF_LIMIT
    labeling: str = "dlog"
    fmt: str = "dot"

    @classmethod
    def from_file(cls, path: str) -> HarnessConfig:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - {"limit", "labeling", "fmt"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def case_parameters(p: int) -> dict[str, tuple[int, ...]]:
    """All k with theory coverage mod ``p``, keyed by case."""
    half = pow(2, -1, p)
    out = {CASE1_PLUS: (half,), CASE1_MINUS: (p - half,)}
    if p % 4 == 1:
        out[CASE2] = tuple(quadratic_roots_mod(4, 0, 1, p))
    if p % 7 in (1, 2, 4):
        out[CASE3] = tuple(quadratic_roots_mod(2, 1, 1, p))
    return out


def classify_k(p: int, k: int) -> CaseTag:
    if k % p == 0:
        raise KZeroError("k must be nonzero mod p")
    k %= p
    if 2 * k % p == 1:
        return CaseTag(CASE1_PLUS)
    if 2 * k % p == p - 1:
        return CaseTag(CASE1_MINUS)
    if p % 4 == 1 and (4 * k * k + 1) % p == 0:
        return CaseTag(CASE2, case_params(CurveCase.CASE2, p).choice_for_k(k))
    if p % 7 in (1, 2, 4) and (2 * k * k + k + 1) % p == 0:
        return CaseTag(CASE3, case_params(CurveCase.CASE3, p).choice_for_k(k))
    return CaseTag(GENERIC)


def predict(p: int, n: int, k: int) -> tuple[CaseTag, StructureReport | None]:
    tag = classify_k(p, k)
    if tag.kind == CASE1_PLUS:
        return tag, predict_case1(Case1Input(p, n, 1))
    if tag.kind == CASE1_MINUS:
        return tag, predict_case1(Case1Input(p, n, -1))
    if tag.kind == CASE2:
        return tag, predict_case23(CurveCase.CASE2, p, n, k)
    if tag.kind == CASE3:
        return tag, predict_case23(CurveCase.CASE3, p, n, k)
    return tag, None


# -- structural sanity -------------------------------------------------------


def structural_problems(g: FunctionalGraph, summary: GraphSummary, k: int) -> list[str]:
    """Indegrees in {0, 1, 2}, indegree 1 exactly at +-2k, and node mass."""
    ctx = g.ctx
    out = []
    deg = g.indegrees()
    bad = sorted({d for d in deg if d not in (0, 1, 2)})
    if bad:
        out.append(f"indegrees outside 0..2: {bad}")
    ones = {index_to_point(ctx, i) for i, d in enumerate(deg) if d == 1}
    expected = {2 * k % ctx.p, -2 * k % ctx.p}
    if ones != expected:
        out.append(f"indegree-1 nodes {sorted(map(str, ones))} != +-2k {sorted(expected)}")
    mass = sum(tree_size(enc) for shapes in summary.tree_shapes for enc in shapes)
    if mass != g.domain_size:
        out.append(f"cycles and trees cover {mass} nodes, expected {g.domain_size}")
    return out


# -- verification ------------------------------------------------------------


@dataclass
class VerificationReport:
    p: int
    n: int
    k: int
    modulus: tuple[int, ...]
    tag: CaseTag
    predicted: StructureReport | None
    observed: GraphSummary
    spectrum_match: bool | None
    tree_match: bool | None
    mismatches: list[dict] = field(default_factory=list)
    structural: list[str] = field(default_factory=list)
    timing_ms: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Full match; generic k counts as ok when the graph is sane."""
        if self.structural:
            return False
        if not self.tag.has_theory:
            return True
        return bool(self.spectrum_match and self.tree_match)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "k": self.k,
            "modulus": list(self.modulus),
            "case": self.tag.kind,
            "choice": self.tag.choice,
            "predicted": None if self.predicted is None else self.predicted.to_dict(),
            "observed": {
                "cycle_spectrum": [list(x) for x in self.observed.cycle_spectrum],
                "components": self.observed.components,
                "indegree_histogram": {str(a): b for a, b in self.observed.indegree_histogram.items()},
            },
            "spectrum_match": self.spectrum_match,
            "tree_match": self.tree_match,
            "mismatches": self.mismatches,
            "structural": self.structural,
            "timing_ms": {key: round(v, 3) for key, v in self.timing_ms.items()},
        }


def _diff_counters(kind: str, predicted: Counter, observed: Counter) -> list[dict]:
    out = []
    for key in sorted(set(predicted) | set(observed), key=str):
        a, b = predicted.get(key, 0), observed.get(key, 0)
        if a != b:
            out.append({"kind": kind, "key": key if isinstance(key, int) else list(key), "predicted": a, "observed": b})
    return out


def verify(
    p: int,
    n: int,
    k: int,
    modulus=None,
    config: HarnessConfig | None = None,
    ctx: FieldCtx | None = None,
) -> VerificationReport:
    config = config or HarnessConfig()
    timing = {}
    t0 = time.perf_counter()
    tag, predicted = predict(p, n, k)
    timing["predict"] = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    ctx = ctx or build_field(p, n, modulus)
    g = build_graph(ThetaMap(ctx, k), ctx, config.limit, name=f"theta_{k}")
    timing["build"] = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    observed = summarize(g)
    structural = structural_problems(g, observed, k % p)
    spectrum_match = tree_match = None
    mismatches: list[dict] = []
    if predicted is not None:
        spectrum_match = predicted.cycle_spectrum == observed.cycle_spectrum
        mismatches += _diff_counters("cycles", Counter(dict(predicted.cycle_spectrum)), Counter(dict(observed.cycle_spectrum)))
        pr, ob = predicted.rooted_shapes(), observed.rooted_shapes()
        tree_match = pr == ob
        mismatches += _diff_counters("trees", pr, ob)
    timing["compare"] = (time.perf_counter() - t0) * 1e3
    return VerificationReport(
        p, n, k % p, ctx.modulus, tag, predicted, observed, spectrum_match, tree_match, mismatches, structural, timing
    )


@dataclass
class SweepResult:
    reports: list[VerificationReport]
    errors: list[dict]

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.reports)

    @property
    def failed(self) -> int:
        return len(self.reports) - self.passed + len(self.errors)


def sweep(
    p_range: range | tuple[int, int],
    n_max: int,
    cases=ALL_CASES,
    config: HarnessConfig | None = None,
    q_max: int | None = None,
) -> SweepResult:
    """Verify every covered k for each odd prime in ``p_range`` and ``n <= n_max``."""
    if isinstance(p_range, tuple):
        p_range = range(p_range[0], p_range[1] + 1)
    config = config or HarnessConfig()
    reports, errors = [], []
    for p in p_range:
        if p < 3 or not is_prime(p):
            continue
        ks = sorted({k for case, vals in case_parameters(p).items() if case in cases for k in vals})
        for n in range(1, n_max + 1):
            if q_max is not None and p**n > q_max:
                break
            if not ks:
                continue
            ctx = build_field(p, n)
            for k in ks:
                try:
                    reports.append(verify(p, n, k, config=config, ctx=ctx))
                except ThetaDynError as exc:
                    errors.append({"p": p, "n": n, "k": k, "error": repr(exc)})
    reports.sort(key=lambda r: (r.p, r.n, r.k))
    return SweepResult(reports, errors)


# -- export ------------------------------------------------------------------


def node_label(ctx: FieldCtx, i: int, labeling: str) -> str:
    x = index_to_point(ctx, i)
    if x is INF:
        return "∞"
    if labeling == "raw":
        return str(x)
    if labeling != "dlog":
        raise ValueError(f"unknown labeling {labeling!r}")
    if x == 0:
        return "'0'"
    return str(ctx.dlog(x))


def export_graph(g: FunctionalGraph, fmt: str = "dot", labeling: str = "dlog", k: int | None = None) -> bytes:
    ctx = g.ctx
    labels = [node_label(ctx, i, labeling) for i in range(g.domain_size)]
    if fmt == "dot":
        lines = [f'digraph "{g.name or "G"}" {{']
        for i, s in enumerate(g.successor):
            lines.append(f'  "{labels[i]}" -> "{labels[s]}";')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt != "json":
        raise ValueError(f"unknown format {fmt!r}")
    summary = summarize(g)
    doc = {
        "q": ctx.q,
        "k": k,
        "p": ctx.p,
        "n": ctx.n,
        "modulus": list(ctx.modulus),
        "labeling": labeling,
        "nodes": labels,
        "successor": list(g.successor),
        "cycles": [list(c) for c in summary.cycles],
        "trees": [list(t) for t in summary.tree_shapes],
    }
    return json.dumps(doc, ensure_ascii=False).encode("utf-8")


def load_graph_json(data: bytes | str) -> FunctionalGraph:
    doc = json.loads(data)
    ctx = build_field(doc["p"], doc["n"], doc["modulus"])
    succ = tuple(int(s) for s in doc["successor"])
    if len(succ) != ctx.q + 1 or doc["q"] != ctx.q:
        raise ValueError("successor array does not match the field size")
    name = f"theta_{doc['k']}" if doc.get("k") is not None else ""
    return FunctionalGraph(ctx, succ, name)


def report_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), ensure_ascii=False, default=str)
