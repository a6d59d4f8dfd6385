import random

import pytest

from pptlab.errors import (
    ContextMismatchError,
    ExponentOverflowError,
    InputError,
    NotDivisibleError,
)
from pptlab.ring import (
    Context,
    LiftPoly,
    ResPoly,
    exact_div_p,
    frobenius_substitute,
    lift_of,
    project_mod_p,
    render,
)

from oracles import delta_int, int_mul, int_pow, random_int_poly, reduce_mod


def test_context_rejects_bad_parameters():
    with pytest.raises(InputError):
        Context(4, ["x"])
    with pytest.raises(InputError):
        Context(17, ["x"])
    with pytest.raises(InputError):
        Context(2, [])
    with pytest.raises(InputError):
        Context(2, ["x"] * 7)
    with pytest.raises(InputError):
        Context(2, ["x", "x"])
    with pytest.raises(InputError):
        Context(2, ["not an identifier!"])
    # p**N over the multiplier cap
    with pytest.raises(InputError):
        Context(13, ["a", "b", "c", "d"])


def test_context_accepts_supported_range():
    Context(13, ["a", "b", "c"])
    Context(2, [f"x{i}" for i in range(1, 7)])


def test_char2_square_is_frobenius():
    ctx = Context(2, ["x", "y"])
    x = ResPoly.variable(ctx, "x")
    y = ResPoly.variable(ctx, "y")
    assert (x + y) * (x + y) == ResPoly(ctx, {(2, 0): 1, (0, 2): 1})


def test_add_zero_is_identity():
    ctx = Context(3, ["x", "y"])
    f = ResPoly(ctx, {(1, 2): 2, (0, 0): 1})
    assert f + ResPoly.zero(ctx) == f


def test_mod9_square_example():
    ctx = Context(3, ["x"])
    f = LiftPoly.variable(ctx, "x") + LiftPoly.constant(ctx, 2)
    assert f * f == LiftPoly(ctx, {(2,): 1, (1,): 4, (0,): 4})


def test_pow_basics():
    ctx = Context(3, ["x", "y"])
    f = ResPoly.variable(ctx, "x") + ResPoly.variable(ctx, "y")
    assert f ** 0 == ResPoly.one(ctx)
    assert f ** 2 == ResPoly(ctx, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    x = ResPoly.variable(ctx, "x")
    assert x ** 5 == ResPoly(ctx, {(5, 0): 1})


def test_mul_matches_integer_expansion():
    rng = random.Random(101)
    for _ in range(300):
        p = rng.choice([2, 3, 5])
        n = rng.randrange(1, 4)
        ctx = Context(p, [f"x{i}" for i in range(n)])
        a = random_int_poly(rng, n)
        b = random_int_poly(rng, n)
        got = LiftPoly(ctx, a) * LiftPoly(ctx, b)
        want = LiftPoly(ctx, reduce_mod(int_mul(a, b), p * p))
        assert got == want


def test_pow_matches_integer_expansion():
    rng = random.Random(102)
    for _ in range(100):
        p = rng.choice([2, 3])
        n = rng.randrange(1, 3)
        ctx = Context(p, [f"x{i}" for i in range(n)])
        a = random_int_poly(rng, n, max_terms=3, max_exp=3)
        k = rng.randrange(5)
        assert LiftPoly(ctx, a) ** k == LiftPoly(
            ctx, reduce_mod(int_pow(a, k, n), p * p)
        )


def test_ring_mixing_is_rejected():
    ctx = Context(2, ["x"])
    other = Context(3, ["x"])
    with pytest.raises(ContextMismatchError):
        LiftPoly.one(ctx) + LiftPoly.one(other)
    with pytest.raises(ContextMismatchError):
        LiftPoly.one(ctx) * ResPoly.one(ctx)


def test_frobenius_substitute():
    ctx = Context(2, ["x", "y"])
    x = LiftPoly.variable(ctx, "x")
    y = LiftPoly.variable(ctx, "y")
    one = LiftPoly.one(ctx)
    assert frobenius_substitute(x) == LiftPoly(ctx, {(2, 0): 1})
    assert frobenius_substitute(LiftPoly.constant(ctx, 3)) == LiftPoly.constant(ctx, 3)
    assert frobenius_substitute(x + y + one) == LiftPoly(
        ctx, {(2, 0): 1, (0, 2): 1, (0, 0): 1}
    )


def test_project_mod_p():
    ctx = Context(3, ["x", "y"])
    f = LiftPoly(ctx, {(1, 0): 3})
    assert project_mod_p(f).is_zero()
    assert project_mod_p(LiftPoly(ctx, {(1, 0): 4})) == ResPoly(ctx, {(1, 0): 1})
    g = LiftPoly(ctx, {(2, 0): 1, (0, 1): 3})
    assert project_mod_p(g) == ResPoly(ctx, {(2, 0): 1})


def test_exact_div_p():
    ctx = Context(2, ["x", "y"])
    assert exact_div_p(LiftPoly(ctx, {(2, 0): 2})) == ResPoly(ctx, {(2, 0): 1})
    assert exact_div_p(LiftPoly.zero(ctx)).is_zero()
    f = LiftPoly(ctx, {(1, 0): 2, (0, 1): 2})
    assert exact_div_p(f) == ResPoly(ctx, {(1, 0): 1, (0, 1): 1})
    with pytest.raises(NotDivisibleError):
        exact_div_p(LiftPoly(ctx, {(1, 0): 1}))


def test_exact_div_p_inverts_lift_scaling():
    rng = random.Random(103)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        ctx = Context(p, ["x", "y"])
        b = ResPoly(ctx, random_int_poly(rng, 2))
        assert exact_div_p(lift_of(b).scale(p)) == b


def test_render_canonical_form():
    ctx = Context(3, ["x", "y"])
    f = LiftPoly(ctx, {(2, 0): 1, (0, 2): -1})
    assert render(f) == "x^2 + 8*y^2"
    assert render(LiftPoly.zero(ctx)) == "0"
    assert render(LiftPoly.one(ctx)) == "1"
    g = LiftPoly(ctx, {(1, 1): 2, (0, 0): 5})
    assert render(g) == "2*x*y + 5"
    # descending graded-lex
    h = ResPoly(ctx, {(0, 2): 1, (1, 0): 1, (2, 0): 1})
    assert render(h) == "x^2 + y^2 + x"


def test_leading_monomial_is_graded_lex_max():
    ctx = Context(5, ["x", "y", "z"])
    f = ResPoly(ctx, {(1, 1, 1): 1, (0, 4, 0): 2, (2, 0, 0): 3})
    assert ctx.decode_monomial(f.leading_monomial()) == (0, 4, 0)


def test_exponent_overflow_guard():
    ctx = Context(2, ["x"])
    with pytest.raises(ExponentOverflowError):
        ResPoly(ctx, {(2**31,): 1})
    big = ResPoly(ctx, {(2**30,): 1})
    with pytest.raises(ExponentOverflowError):
        big * big


def test_monomial_encoding_roundtrip():
    rng = random.Random(104)
    ctx = Context(3, ["a", "b", "c", "d"])
    for _ in range(200):
        exps = tuple(rng.randrange(50) for _ in range(4))
        assert ctx.decode_monomial(ctx.encode_monomial(exps)) == exps


def test_delta_oracle_consistency_of_kernel_ops():
    # project(f^p - phi(f)) must vanish: the two routes to char p agree
    rng = random.Random(105)
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        ctx = Context(p, ["x", "y"])
        a = random_int_poly(rng, 2, max_terms=4, max_exp=3)
        f = LiftPoly(ctx, a)
        numerator = f ** p - frobenius_substitute(f)
        assert project_mod_p(numerator).is_zero()
        # and the exact quotient matches the all-integer reference
        assert exact_div_p(numerator) == ResPoly(ctx, delta_int(a, p, 2))
