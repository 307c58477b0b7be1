"""Functional graphs of ``x -> k (x + 1/x)`` on the projective line over F_{p^n}.

Closed-form cycle and tree structure for ``k = +-1/2`` and for the two CM
families (``4k^2 + 1 = 0`` and ``2k^2 + k + 1 = 0``), checked against
exhaustive graph construction.
"""

from .case1 import Case1Input, predict_case1
from .case23 import predict_case23
from .cmcurve import CurveCase, case_params, count_points, frobenius_elem, make_curve
from .ffield import INF, FieldCtx, build_field
from .harness import (
    CaseTag,
    HarnessConfig,
    VerificationReport,
    classify_k,
    export_graph,
    sweep,
    verify,
)
from .projdyn import FunctionalGraph, GraphSummary, ThetaMap, build_graph, summarize
from .qring import QuadInt, Ring, factor
from .report import StructureReport

__all__ = [
    "INF",
    "Case1Input",
    "CaseTag",
    "CurveCase",
    "FieldCtx",
    "FunctionalGraph",
    "GraphSummary",
    "HarnessConfig",
    "QuadInt",
    "Ring",
    "StructureReport",
    "ThetaMap",
    "VerificationReport",
    "build_field",
    "build_graph",
    "case_params",
    "classify_k",
    "count_points",
    "export_graph",
    "factor",
    "frobenius_elem",
    "make_curve",
    "predict_case1",
    "predict_case23",
    "summarize",
    "sweep",
    "verify",
]
