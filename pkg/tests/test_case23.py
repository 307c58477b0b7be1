import pytest

from thetadyn.arith import is_prime
from thetadyn.case23 import (
    BY_ANNIHILATOR,
    BY_ORDER,
    SIDE_A,
    SIDE_B,
    Case23Input,
    exceptional_pair,
    predict_case23,
    predict_side,
    rho0_select,
)
from thetadyn.cmcurve import CurveCase, case_params, frobenius_elem, make_curve
from thetadyn.errors import KNotInCaseError
from thetadyn.ffield import build_field
from thetadyn.projdyn import ThetaMap, build_graph, summarize, tree_depth
from thetadyn.qring import RAMIFIED, QuadInt, Ring, are_associate, factor

CASE2, CASE3 = CurveCase.CASE2, CurveCase.CASE3


def side(case, p, k, s, n=1):
    prm = case_params(case, p)
    return predict_side(Case23Input(case, p, n, prm.choice_for_k(k)), s)


def observed(p, k, n=1):
    ctx = build_field(p, n)
    return summarize(build_graph(ThetaMap(ctx, k), ctx))


def test_rho0_examples():
    pi = QuadInt(-7, 2, Ring.GAUSSIAN)
    prm = case_params(CASE2, 53)
    assert rho0_select(CASE2, prm, prm.choice_for_k(15), pi) == QuadInt(1, -1, Ring.GAUSSIAN)
    pi = QuadInt(-7, 4, Ring.KLEIN7)
    prm = case_params(CASE3, 53)
    assert rho0_select(CASE3, prm, prm.choice_for_k(7), pi) == Ring.KLEIN7.alpha
    assert rho0_select(CASE3, prm, prm.choice_for_k(19), pi) == Ring.KLEIN7.alpha.conj()


def test_predict_side_case2_examples():
    a = side(CASE2, 53, 15, SIDE_A)
    assert [(c.h, c.length, c.count) for c in a.classes] == [((0, 0), 1, 1), ((0, 1), 8, 1)]
    assert a.plan.depth == 2
    assert ("INF", "case2-infinity", 3) in a.plan.exceptional_roots
    assert are_associate(a.factorization.others[0].prime, QuadInt(-1, -4, Ring.GAUSSIAN))

    b = side(CASE2, 53, 38, SIDE_B)
    assert [(c.h, c.length, c.count) for c in b.classes] == [((0, 1), 1, 2)]
    assert b.plan.depth == 3


def test_predict_side_case3_examples():
    b = side(CASE3, 53, 7, SIDE_B)
    assert sorted((c.h, c.length, c.count) for c in b.classes) == [((0, 0, 1), 5, 1), ((0, 1, 1), 5, 1)]
    assert b.plan.depth == 1
    a = side(CASE3, 53, 7, SIDE_A)
    assert a.plan.depth == 4
    assert {c.tag for c in a.classes} >= {"INF", "sigma+3"}
    a = side(CASE3, 53, 19, SIDE_A)
    assert a.plan.depth == 2
    with pytest.raises(ValueError):
        side(CASE3, 53, 19, "C")


def test_predict_case23_examples():
    assert predict_case23(CASE3, 53, 1, 19).cycle_spectrum == ((1, 3), (2, 1), (4, 1), (5, 2))
    assert predict_case23(CASE2, 53, 1, 15).cycle_spectrum == ((1, 1), (2, 1), (8, 1))
    assert predict_case23(CASE3, 53, 1, 7).cycle_spectrum == ((1, 3), (5, 2))
    r = predict_case23(CASE2, 53, 1, 15)
    assert r.extra["pi_p"] == "-7+2i" and r.extra["m"] == 68
    with pytest.raises(KNotInCaseError):
        predict_case23(CASE2, 53, 1, 11)


def test_exceptional_pair_rule():
    assert exceptional_pair(Case23Input(CASE2, 53, 1, 0))
    assert not exceptional_pair(Case23Input(CASE2, 53, 2, 0))
    assert not exceptional_pair(Case23Input(CASE2, 17, 1, 0))


def test_special_trees_take_the_deeper_side():
    # e0 is 1 on side A and 2 on side B; the special chains reach depth 2
    p, k = 37, 14
    assert (2 * k * k + k + 1) % p == 0
    r = predict_case23(CASE3, p, 1, k)
    assert r.extra["e0"] == {SIDE_A: 1, SIDE_B: 2}
    s = observed(p, k)
    assert r.cycle_spectrum == s.cycle_spectrum
    assert r.rooted_shapes() == s.rooted_shapes()
    depths = sorted(tree_depth(enc) for shapes in s.tree_shapes for enc in shapes)
    assert depths.count(2) >= 2


@pytest.mark.parametrize("k_index", [0, 1])
def test_ramified_grouping_against_brute_force(k_index):
    # pi_379 + 1 carries sqrt(-7)^2: grouping by additive order mispredicts
    p = 379
    pi = frobenius_elem(make_curve(CASE3, p)).pi_p
    assert (RAMIFIED, 2) in {(c.kind, c.exponent) for c in factor(pi + 1, Ring.KLEIN7.alpha).others}
    k = case_params(CASE3, p).ks[k_index]
    s = observed(p, k)
    good = predict_case23(CASE3, p, 1, k, grouping=BY_ANNIHILATOR)
    literal = predict_case23(CASE3, p, 1, k, grouping=BY_ORDER)
    assert good.cycle_spectrum == s.cycle_spectrum
    assert good.rooted_shapes() == s.rooted_shapes()
    assert literal.cycle_spectrum != s.cycle_spectrum


def test_grouping_rules_agree_without_ramified_squares():
    for p in (11, 23, 29, 37, 43, 53, 67, 71, 79, 107, 109, 113):
        for k in case_params(CASE3, p).ks:
            a = predict_case23(CASE3, p, 1, k, BY_ANNIHILATOR)
            b = predict_case23(CASE3, p, 1, k, BY_ORDER)
            assert a.cycle_spectrum == b.cycle_spectrum


INSTANCES = [
    (case, p, n)
    for case in (CASE2, CASE3)
    for p in range(3, 130)
    if is_prime(p) and case.admits(p) and not (case is CASE3 and p == 7)
    for n in (1, 2)
    if p**n <= 20_000
]


@pytest.mark.parametrize("case,p,n", INSTANCES, ids=lambda v: getattr(v, "name", str(v)))
def test_prediction_matches_brute_force(case, p, n):
    ctx = build_field(p, n)
    for k in case_params(case, p).ks:
        r = predict_case23(case, p, n, k)
        s = summarize(build_graph(ThetaMap(ctx, k), ctx))
        assert r.cycle_spectrum == s.cycle_spectrum
        assert r.rooted_shapes() == s.rooted_shapes()
