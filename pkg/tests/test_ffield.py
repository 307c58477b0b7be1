import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_dlog_mod, brute_order_mod, brute_sqrt_mod

from thetadyn.arith import split_order
from thetadyn.errors import (
    EvenCharacteristicError,
    NotASquareError,
    NotPrimeError,
    ReducibleModulusError,
    ZeroElementError,
)
from thetadyn.ffield import (
    build_field,
    dlog_label,
    embed_field,
    is_irreducible,
    is_square,
    mul_order,
    sqrt,
)

F29 = build_field(29)
F53 = build_field(53)
F49 = build_field(7, 2, [3, 5, 1])  # x^2 - 2x + 3

SMALL_FIELDS = [(3, 1), (5, 1), (29, 1), (53, 1), (3, 2), (5, 2), (7, 2), (3, 3), (3, 4), (11, 2)]


@pytest.fixture(scope="module", params=SMALL_FIELDS, ids=lambda pn: f"F{pn[0]}^{pn[1]}")
def field(request):
    return build_field(*request.param)


def test_build_field_examples():
    assert F29.q == 29 and F29.generator == 2
    assert F49.q == 49 and F49.modulus == (3, 5, 1)
    with pytest.raises(EvenCharacteristicError):
        build_field(2)
    with pytest.raises(NotPrimeError):
        build_field(15)
    with pytest.raises(ReducibleModulusError):
        build_field(7, 2, [0, 0, 1])
    with pytest.raises(ReducibleModulusError):
        build_field(7, 2, [3, 5])


def test_mul_order_examples():
    assert mul_order(F29, 1) == 1
    assert mul_order(F29, 28) == 2
    assert mul_order(F29, 2) == brute_order_mod(2, 29) == 28
    with pytest.raises(ZeroElementError):
        mul_order(F29, 0)


def test_split_order_examples():
    assert split_order(28) == (7, 2)
    assert split_order(1) == (1, 0)
    assert split_order(48) == (3, 4)


def test_is_square_examples():
    assert not is_square(F53, 2)
    assert is_square(F53, 52)
    assert is_square(F53, 0) and is_square(F49, 0)


def test_sqrt_examples():
    assert brute_sqrt_mod(52, 53) == [23, 30]
    assert sqrt(F53, 52) == (23, 30)
    assert sqrt(F49, 0) == (0, 0)
    assert sqrt(F53, 1) == (1, 52)
    assert sqrt(F49, 1) == (1, F49.neg(1))
    with pytest.raises(NotASquareError):
        sqrt(F53, 2)


def test_dlog_examples():
    assert dlog_label(F29, 1) == 0
    assert dlog_label(F29, 28) == 14
    assert F53.generator == 2
    assert brute_dlog_mod(15, 2, 53) == 12
    assert dlog_label(F53, 15) == 12
    with pytest.raises(ZeroElementError):
        dlog_label(F29, 0)


def test_conway_generator_for_49():
    # x is primitive for x^2 - 2x + 3, so it is the generator and has label 1
    x = F49.from_coeffs([0, 1])
    assert F49.generator == x
    assert F49.dlog(x) == 1


def test_default_modulus_is_irreducible_and_smallest():
    ctx = build_field(3, 2)
    assert is_irreducible(ctx.modulus, 3)
    for c0 in range(3):
        for c1 in range(3):
            if (c0, c1) < ctx.modulus[:2]:
                assert not is_irreducible((c0, c1, 1), 3)


def test_field_axioms_exhaustive(field):
    q = field.q
    elems = range(q)
    for a in elems:
        assert field.add(a, field.neg(a)) == 0
        if a:
            assert field.mul(a, field.inv(a)) == 1
    # distributivity on a sample grid
    step = max(1, q // 7)
    for a in range(0, q, step):
        for b in range(0, q, step):
            for c in range(0, q, step):
                assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))


def test_group_is_cyclic_of_order_q_minus_1(field):
    g = field.generator
    seen = set()
    x = 1
    for _ in range(field.q - 1):
        seen.add(x)
        x = field.mul(x, g)
    assert x == 1 and len(seen) == field.q - 1


def test_frobenius_fixes_prime_subfield(field):
    for c in range(field.p):
        assert field.frobenius(c) == c
    for x in range(field.q):
        assert field.frobenius(x, field.n) == x


@pytest.mark.parametrize("small,big", [((3, 1), (3, 2)), ((3, 2), (3, 4)), ((5, 1), (5, 2)), ((7, 2), (7, 4))])
def test_embed_field_is_a_ring_homomorphism(small, big):
    s = build_field(*small)
    b = build_field(*big)
    emb = embed_field(s, b)
    assert len(set(emb)) == s.q
    step = max(1, s.q // 10)
    for x in range(0, s.q, step):
        for y in range(0, s.q, step):
            assert emb[s.add(x, y)] == b.add(emb[x], emb[y])
            assert emb[s.mul(x, y)] == b.mul(emb[x], emb[y])


def _elements(ctx):
    return st.integers(min_value=0, max_value=ctx.q - 1)


@given(st.sampled_from([F29, F53, F49, build_field(3, 5), build_field(101)]).flatmap(lambda c: st.tuples(st.just(c), _elements(c))))
def test_square_iff_order_divides_half(pair):
    ctx, x = pair
    if x == 0:
        return
    assert ctx.is_square(x) == ((ctx.q - 1) // 2 % ctx.mul_order(x) == 0)


@given(st.sampled_from([F29, F53, F49, build_field(3, 5), build_field(101)]).flatmap(lambda c: st.tuples(st.just(c), _elements(c))))
def test_sqrt_then_square_is_identity(pair):
    ctx, x = pair
    y = ctx.square(x)
    r1, r2 = ctx.sqrt(y)
    assert {r1, r2} == {x, ctx.neg(x)}
    assert ctx.sort_key(r1) <= ctx.sort_key(r2)


@given(st.sampled_from([F29, F53, F49, build_field(3, 5)]).flatmap(lambda c: st.tuples(st.just(c), st.integers(1, c.q - 1))))
def test_mul_order_divides_and_is_exact(pair):
    ctx, x = pair
    t = ctx.mul_order(x)
    assert (ctx.q - 1) % t == 0
    assert ctx.pow(x, t) == 1
    assert all(ctx.pow(x, t // ell) != 1 for ell in range(2, t + 1) if t % ell == 0 and all(ell % d for d in range(2, ell)))


@pytest.mark.parametrize("ctx", [F29, F53, F49], ids=["29", "53", "49"])
def test_dlog_is_a_bijection(ctx):
    labels = [ctx.dlog(x) for x in range(1, ctx.q)]
    assert sorted(labels) == list(range(ctx.q - 1))
    for x in range(1, ctx.q):
        assert ctx.pow(ctx.generator, ctx.dlog(x)) == x


def test_prime_field_matches_integer_oracles():
    for p in (3, 5, 7, 29, 53):
        ctx = build_field(p)
        for x in range(1, p):
            assert ctx.mul_order(x) == brute_order_mod(x, p)
            roots = brute_sqrt_mod(x, p)
            assert ctx.is_square(x) == bool(roots)
            if roots:
                assert sorted(ctx.sqrt(x)) == roots
