import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetadyn.arith import is_prime
from thetadyn.case1 import (
    Case1Input,
    fixed_point_count_minus,
    period_of_element,
    predict_case1,
    preimage_count_case1,
    tree_level_exponent,
)
from thetadyn.errors import PeriodicInputError
from thetadyn.ffield import INF, build_field
from thetadyn.projdyn import (
    ThetaMap,
    binary_tree_encoding,
    build_graph,
    index_to_point,
    summarize,
)

F29 = build_field(29)
F49 = build_field(7, 2, [3, 5, 1])
MINUS29 = Case1Input(29, 1, -1)
MINUS49 = Case1Input(7, 2, -1)


def elem(ctx, label):
    return ctx.pow(ctx.generator, label)


def observed(inp, ctx=None):
    ctx = ctx or build_field(inp.p, inp.n)
    return summarize(build_graph(ThetaMap(ctx, inp.k), ctx))


def test_input_fields():
    assert MINUS29.q == 29 and MINUS29.e == 2 and MINUS29.odd_divisors == [7]
    assert MINUS29.k == 14 and Case1Input(29, 1, 1).k == 15
    assert MINUS49.e == 4 and MINUS49.odd_divisors == [3]


def test_predict_examples():
    r = predict_case1(MINUS29)
    assert r.cycle_spectrum == ((1, 1), (2, 1), (6, 1))
    assert {t.depth for t in r.tree_plan if t.roots and t.shape != "bare"} == {2}
    r = predict_case1(MINUS49)
    assert r.cycle_spectrum == ((1, 3), (2, 1))
    assert {t.depth for t in r.tree_plan if t.roots and t.shape != "bare"} == {4}
    r = predict_case1(Case1Input(29, 1, 1))
    assert r.cycle_spectrum == ((1, 3), (3, 2))
    assert observed(Case1Input(29, 1, 1)).cycle_spectrum == ((1, 3), (3, 2))


def test_period_examples():
    assert period_of_element(MINUS29, F29, INF) == 1
    assert period_of_element(MINUS29, F29, 1) == 2
    assert period_of_element(MINUS29, F29, elem(F29, 22)) == 6


def test_period_of_element_matches_iteration():
    m = ThetaMap(F29, 14)
    for x in list(range(29)) + [INF]:
        orbit = [x]
        for _ in range(31):
            orbit.append(m(orbit[-1]))
        periodic = x in orbit[1:]
        got = period_of_element(MINUS29, F29, x)
        if not periodic:
            assert got is None
        else:
            assert got == orbit[1:].index(x) + 1


def test_preimage_count_examples():
    assert preimage_count_case1(MINUS29, F29, elem(F29, 5)) == 0
    assert preimage_count_case1(MINUS29, F29, elem(F29, 3)) == 2
    with pytest.raises(PeriodicInputError):
        preimage_count_case1(MINUS29, F29, 1)
    # every depth-4 leaf of the q=49 graph
    s = observed(MINUS49, F49)
    g = build_graph(ThetaMap(F49, 24), F49)
    deg = g.indegrees()
    leaves = [i for i, d in enumerate(s.depth) if d == 4]
    assert leaves
    for i in leaves:
        assert deg[i] == 0
        assert preimage_count_case1(MINUS49, F49, index_to_point(F49, i)) == 0


def test_fixed_points_minus():
    assert fixed_point_count_minus(29, 1) == 1
    assert fixed_point_count_minus(7, 1) == 3
    assert fixed_point_count_minus(5, 2) == 3
    assert fixed_point_count_minus(3, 2) == 1


def test_q49_two_cycle_labels():
    s = observed(MINUS49, F49)
    two = [c for c in s.cycles if len(c) == 2]
    assert len(two) == 1
    assert sorted(F49.dlog(index_to_point(F49, i)) for i in two[0]) == [0, 24]


CASES = [(p, n) for p in range(3, 60) if is_prime(p) for n in (1, 2, 3) if p**n <= 4000]


@pytest.mark.parametrize("p,n", CASES)
@pytest.mark.parametrize("sign", [1, -1])
def test_prediction_matches_brute_force(p, n, sign):
    inp = Case1Input(p, n, sign)
    r = predict_case1(inp)
    s = observed(inp)
    assert r.cycle_spectrum == s.cycle_spectrum
    assert r.rooted_shapes() == s.rooted_shapes()
    assert r.components == s.components


@pytest.mark.parametrize("n", range(1, 10))
def test_characteristic_three(n):
    # the fixed-point formula reads f = 1 at p = 3
    for sign in (1, -1):
        inp = Case1Input(3, n, sign)
        s = observed(inp)
        assert predict_case1(inp).cycle_spectrum == s.cycle_spectrum
    assert sum(1 for c in observed(Case1Input(3, n, -1)).cycles if len(c) == 1) == 1


@pytest.mark.parametrize("p,n", [(29, 1), (7, 2), (17, 1), (5, 3), (41, 1)])
def test_tree_levels_follow_two_adic_order(p, n):
    ctx = build_field(p, n)
    for sign in (1, -1):
        inp = Case1Input(p, n, sign)
        s = observed(inp, ctx)
        ones = {1, ctx.neg(1)}
        for cyc, shapes in zip(s.cycles, s.tree_shapes):
            for i, enc in zip(cyc, shapes):
                x = index_to_point(ctx, i)
                if x is INF or x in ones:
                    continue
                assert enc == binary_tree_encoding(inp.e)
        for i, d in enumerate(s.depth):
            x = index_to_point(ctx, i)
            root = index_to_point(ctx, s.root[i])
            if d == 0 or x is INF or root is INF or root in ones:
                continue
            assert tree_level_exponent(ctx, x) == d


@given(st.sampled_from(CASES), st.sampled_from([1, -1]))
def test_plus_minus_one_cycle_shape(pn, sign):
    p, n = pn
    r = predict_case1(Case1Input(p, n, sign))
    lengths = dict(r.cycle_spectrum)
    if sign == 1:
        # only INF, 1 and -1 are fixed
        assert lengths.get(1) == 3
    else:
        assert lengths.get(2) == 1
