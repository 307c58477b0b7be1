"""Structure prediction for the two CM cases.

The x-coordinates of rational points (side A) and of points over the
quadratic extension killed by ``pi_p^n + 1`` (side B) are acted on by
multiplication by ``rho0``, a norm-2 prime, inside the residue rings
``R / (pi_p^n - 1)`` and ``R / (pi_p^n + 1)``.  Cycles come from elements with
trivial ``rho0``-component, grouped by their additive-order vector ``h``;
every such element and its negative share an x-coordinate, hence the
division by ``2 l_h``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .cmcurve import (
    CaseParams,
    CurveCase,
    FrobeniusData,
    case_params,
    frobenius_elem,
    make_curve,
)
from .errors import NoMatchError
from .qring import (
    QuadFactorization,
    QuadInt,
    Ring,
    canonical_associate,
    cycle_length_for_exponents,
    divides,
    factor,
)
from .report import (
    BINARY,
    CASE2_INFINITY,
    CASE3_SPECIAL,
    StructureReport,
    TreeSpec,
    merge_spectrum,
)

SIDE_A = "A"
SIDE_B = "B"

# grouping of ramified components when computing cycle lengths
BY_ORDER = "order"  # modulus prime**h, h the additive-order exponent
BY_ANNIHILATOR = "annihilator"  # modulus prime**a, a the exact annihilator exponent


@dataclass(frozen=True)
class Case23Input:
    case: CurveCase
    p: int
    n: int
    choice: int  # index into CaseParams.sigmas / ks

    @property
    def params(self) -> CaseParams:
        return case_params(self.case, self.p)

    @property
    def k(self) -> int:
        return self.params.ks[self.choice]

    @property
    def sigma(self) -> int:
        return self.params.sigmas[self.choice]


@dataclass(frozen=True)
class CycleClass:
    h: tuple[int, ...]
    length: int
    count: int
    side: str
    annihilator: tuple[int, ...] | None = None
    tag: str = ""


@dataclass(frozen=True)
class TreePlan:
    side: str
    depth: int
    exceptional_roots: tuple[tuple[str, str, int], ...] = ()  # (root, shape, depth)


@dataclass(frozen=True)
class SidePrediction:
    side: str
    rho0: QuadInt
    factorization: QuadFactorization
    classes: tuple[CycleClass, ...]
    plan: TreePlan


def rho0_select(case: CurveCase, params: CaseParams, choice: int, pi: QuadInt) -> QuadInt:
    """The norm-2 prime representing the endomorphism of ``sigmas[choice]``.

    Case 2 tests ``rho**2 * k == 1 mod pi``; case 3 tests ``rho == sigma mod pi``.
    """
    ring = case.ring
    alpha = ring.alpha
    hits = []
    for rho in (alpha, alpha.conj()):
        if case is CurveCase.CASE2:
            target = rho * rho * params.ks[choice] - 1
        else:
            target = rho - params.sigmas[choice]
        if divides(pi, target):
            hits.append(rho)
    if len(hits) != 1:
        raise NoMatchError(f"{len(hits)} norm-2 primes match sigma = {params.sigmas[choice]} mod {pi}")
    return hits[0]


def _is_rho0_bar(prime: QuadInt, rho0: QuadInt) -> bool:
    return prime.ring is Ring.KLEIN7 and prime == canonical_associate(rho0.conj())


def _component_options(comp, grouping: str):
    """``(h, annihilator exponent, count)`` triples for one component."""
    if grouping == BY_ANNIHILATOR:
        return list(comp.annihilator_classes())
    return [(h, h, comp.order_table[h]) for h in comp.h_range]


def predict_side(inp: Case23Input, side: str, grouping: str = BY_ANNIHILATOR, frob: FrobeniusData | None = None) -> SidePrediction:
    if side not in (SIDE_A, SIDE_B):
        raise ValueError(f"side must be {SIDE_A!r} or {SIDE_B!r}")
    if frob is None:
        frob = frobenius_elem(make_curve(inp.case, inp.p))
    pi = frob.pi_p
    rho0 = rho0_select(inp.case, inp.params, inp.choice, pi)
    modulus = pi**inp.n - 1 if side == SIDE_A else pi**inp.n + 1
    fac = factor(modulus, rho0)
    comps = fac.others
    bar = [i for i, c in enumerate(comps) if _is_rho0_bar(c.prime, rho0)]

    merged: dict[tuple, list] = {}
    options = [_component_options(c, grouping) for c in comps]
    for combo in itertools.product(*options):
        h = (0,) + tuple(o[0] for o in combo)
        ann = tuple(o[1] for o in combo)
        raw = prod(o[2] for o in combo)
        nonzero = [i for i, hi in enumerate(h[1:]) if hi]
        is_zero = not nonzero
        is_bar_torsion = len(nonzero) == 1 and nonzero[0] in bar and h[1 + nonzero[0]] == 1
        if side == SIDE_A and is_zero:
            key, cls = (h, ann), CycleClass(h, 1, 1, side, ann, "INF")
        elif side == SIDE_A and is_bar_torsion:
            # single 2-torsion point with trivial rho0-part: x = sigma + 3
            key, cls = (h, ann), CycleClass(h, 1, 1, side, ann, "sigma+3")
        elif side == SIDE_B and (is_zero or is_bar_torsion):
            continue
        else:
            moduli = [c.prime**a for c, a in zip(comps, ann)]
            length = cycle_length_for_exponents(rho0, moduli)
            key = (h, ann, length)
            if key in merged:
                merged[key][0] += raw
                continue
            merged[key] = [raw, length, ann]
            continue
        merged[key] = cls

    classes = []
    for key, val in merged.items():
        if isinstance(val, CycleClass):
            classes.append(val)
            continue
        raw, length, ann = val
        if raw % (2 * length):
            raise AssertionError(f"{raw} elements of class {key[0]} do not split into pairs of {length}-cycles")
        classes.append(CycleClass(key[0], length, raw // (2 * length), side, ann))
    classes.sort(key=lambda c: (c.h, c.annihilator or (), c.length))

    depth = fac.e0
    exceptional: tuple = ()
    if side == SIDE_A:
        if inp.case is CurveCase.CASE2:
            # with 1, -1 outside A the INF tree stops at them, level 3
            inf_depth = 3 if exceptional_pair(inp) else depth
            exceptional = (("INF", CASE2_INFINITY, inf_depth),)
        else:
            # the single preimage of each level-1 two-torsion vertex may lie
            # on either side; only one of pi^n -+ 1 is divisible by rho0**2
            other = factor(pi**inp.n + 1, rho0).e0
            special = max(depth, other)
            exceptional = (("INF", CASE3_SPECIAL, special), ("sigma+3", CASE3_SPECIAL, special))
    return SidePrediction(side, rho0, fac, tuple(classes), TreePlan(side, depth, exceptional))


def exceptional_pair(inp: Case23Input) -> bool:
    """Case 2 with ``n`` odd and ``p = +-3 mod 8``: 1 and -1 are not x-coordinates over F_{p^n}."""
    return inp.case is CurveCase.CASE2 and inp.n % 2 == 1 and inp.p % 8 in (3, 5)


def _tree_specs(pred: SidePrediction) -> list[TreeSpec]:
    special = {tag: (shape, d) for tag, shape, d in pred.plan.exceptional_roots}
    generic: dict[int, int] = {}
    specs = []
    for c in pred.classes:
        if c.tag in special:
            shape, d = special[c.tag]
            specs.append(TreeSpec(f"{pred.side}:{c.tag}", c.length, c.count * c.length, shape, d))
        elif c.count:
            generic[c.length] = generic.get(c.length, 0) + c.count * c.length
    for length, roots in sorted(generic.items()):
        specs.append(TreeSpec(f"{pred.side}:l={length}", length, roots, BINARY, pred.plan.depth))
    return specs


def predict_case23(
    case: CurveCase, p: int, n: int, k: int, grouping: str = BY_ANNIHILATOR
) -> StructureReport:
    params = case_params(case, p)
    inp = Case23Input(case, p, n, params.choice_for_k(k))
    frob = frobenius_elem(make_curve(case, p))
    sides = [predict_side(inp, s, grouping, frob) for s in (SIDE_A, SIDE_B)]
    pairs, plan, notes = [], [], []
    for pred in sides:
        pairs += [(c.length, c.count) for c in pred.classes]
        plan += _tree_specs(pred)
        f = pred.factorization
        parts = ", ".join(f"({c.prime})^{c.exponent}" for c in f.components)
        notes.append(f"side {pred.side}: pi^n {'-' if pred.side == SIDE_A else '+'} 1 = {f.unit} * {parts}")
        for c in pred.classes:
            notes.append(f"side {pred.side}: h={c.h} length {c.length} x {c.count}" + (f" [{c.tag}]" if c.tag else ""))
    extra = {
        "pi_p": str(frob.pi_p),
        "m": frob.m,
        "rho0": str(sides[0].rho0),
        "e0": {pred.side: pred.factorization.e0 for pred in sides},
        "sides": {pred.side: pred for pred in sides},
        "grouping": grouping,
    }
    return StructureReport(merge_spectrum(pairs), plan, notes, extra)
