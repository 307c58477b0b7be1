"""Structure of the graphs of ``theta_{1/2}`` and ``theta_{-1/2}``.

Both maps are conjugate, through ``psi(x) = (x+1)/(x-1)``, to the square
map (resp. ``x -> x**-2``), so periods come from multiplicative orders of
``2`` (resp. ``-2``) modulo the odd parts of element orders, and the trees
are binary of depth ``e`` where ``2**e || q - 1``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .arith import divisors, order_mod, split_order, totient
from .errors import PeriodicInputError
from .ffield import INF, FieldCtx, ProjPoint
from .projdyn import psi_apply
from .report import BARE, BINARY, StructureReport, TreeSpec, merge_spectrum


@dataclass(frozen=True)
class Case1Input:
    p: int
    n: int
    sign: int  # +1 for theta_{1/2}, -1 for theta_{-1/2}

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def odd_divisors(self) -> list[int]:
        """Distinct odd divisors of ``q - 1`` greater than one."""
        return [d for d in divisors(self.q - 1) if d % 2 and d > 1]

    @property
    def e(self) -> int:
        return split_order(self.q - 1)[1]

    @property
    def k(self) -> int:
        return self.sign * pow(2, -1, self.p) % self.p


def fixed_point_count_minus(p: int, n: int) -> int:
    """Fixed points of ``theta_{-1/2}``: INF plus the square roots of -1/3."""
    return 3 if p != 3 and (p % 3 == 1 or n % 2 == 0) else 1


def period_classes(inp: Case1Input) -> dict[int, int]:
    """Map each period ``ord_d(+-2)`` to its cycle count over the odd divisors ``d``."""
    elements = defaultdict(int)
    for d in inp.odd_divisors:
        elements[order_mod(2 * inp.sign, d)] += totient(d)
    out = {}
    for length, total in sorted(elements.items()):
        if total % length:
            raise AssertionError(f"{total} elements do not split into cycles of length {length}")
        out[length] = total // length
    return out


def predict_case1(inp: Case1Input) -> StructureReport:
    classes = period_classes(inp)
    e = inp.e
    notes = []
    if inp.sign == 1:
        if 1 in classes:
            raise AssertionError("ord_d(2) = 1 for some odd d > 1")
        pairs = [(1, 3)] + list(classes.items())
        plan = [
            TreeSpec("+1, -1", 1, 2, BARE, 0),
            TreeSpec("INF", 1, 1, BINARY, e),
        ]
        plan += [TreeSpec(f"ord_d(2)={l}", l, l * c, BINARY, e) for l, c in classes.items()]
        notes.append("fixed points 1, -1, INF; other periods are ord_d(2) over odd d | q-1")
    else:
        if 2 in classes:
            raise AssertionError("ord_d(-2) = 2 for some odd d > 1")
        fixed = fixed_point_count_minus(inp.p, inp.n)
        from_d3 = classes.pop(1, 0)
        if 1 + from_d3 != fixed:
            raise AssertionError(
                f"fixed-point rule gives {fixed}, d=3 class gives {1 + from_d3}"
            )
        pairs = [(1, fixed), (2, 1)] + list(classes.items())
        plan = [
            TreeSpec("+1, -1", 2, 2, BARE, 0),
            TreeSpec("fixed points", 1, fixed, BINARY, e),
        ]
        plan += [TreeSpec(f"ord_d(-2)={l}", l, l * c, BINARY, e) for l, c in classes.items()]
        notes.append(
            f"{fixed} fixed point(s) (INF and roots of 3x^2+1); the d=3 class "
            f"contributes {from_d3} of them and is merged, not added"
        )
        if inp.p == 3:
            notes.append("p = 3: 3x^2+1 has no roots, single fixed point INF")
    notes.append(f"trees: depth e={e}; 1 and -1 carry no tree")
    return StructureReport(merge_spectrum(pairs), plan, notes, {"e": e})


def period_of_element(inp: Case1Input, ctx: FieldCtx, x: ProjPoint) -> int | None:
    """Period of ``x`` under ``theta_{sign/2}``, or ``None`` if pre-periodic."""
    if x is INF:
        return 1
    if x == 1 or x == ctx.neg(1):
        return 1 if inp.sign == 1 else 2
    t = ctx.mul_order(psi_apply(ctx, x))
    if t % 2 == 0:
        return None
    return order_mod(2 * inp.sign, t)


def preimage_count_case1(inp: Case1Input, ctx: FieldCtx, gamma: int) -> int:
    """Number of finite preimages of a non-periodic ``gamma``: 0 or 2."""
    if period_of_element(inp, ctx, gamma) is not None:
        raise PeriodicInputError(f"{gamma} is periodic")
    t = ctx.mul_order(psi_apply(ctx, gamma))
    return 0 if t % (1 << inp.e) == 0 else 2


def tree_level_exponent(ctx: FieldCtx, beta: int) -> int:
    """Exponent of 2 in ``ord(psi(beta))``; equals the tree level of ``beta``."""
    return split_order(ctx.mul_order(psi_apply(ctx, beta)))[1]
