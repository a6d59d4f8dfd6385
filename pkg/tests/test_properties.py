"""Randomized invariants, 200+ cases per suite."""

import random

from pptlab.ideals import Echelon, ideal_in_frobenius_power, principal_ideal, u_image
from pptlab.ladder import _Workspace, _truncated_contained, compute_ladder
from pptlab.ring import ResPoly, frobenius_substitute, project_mod_p

import property_suites as ps

CASES = 200


def test_delta_product_rule():
    assert ps.suite_delta_product_rule(11, CASES) == CASES


def test_delta_sum_rule():
    assert ps.suite_delta_sum_rule(12, CASES) == CASES


def test_u_semilinearity():
    assert ps.suite_u_semilinearity(13, CASES) == CASES


def test_fedder_duality():
    assert ps.suite_fedder_duality(14, CASES) == CASES


def test_echelon_span_preservation():
    assert ps.suite_echelon_span(15, CASES) == CASES


def test_prefix_stability():
    assert ps.suite_prefix_stability(16, CASES) == CASES


def test_mod_p_squared_invariance():
    assert ps.suite_mod_p_squared_invariance(17, CASES) == CASES


def test_downward_closure():
    assert ps.suite_downward_closure(18, CASES) == CASES


# -- further randomized invariants beyond the named suites --------------------


def test_ring_axioms():
    rng = random.Random(19)
    for _ in range(CASES):
        ctx = ps.random_context(rng, max_vars=3)
        a = ps.random_lift(rng, ctx)
        b = ps.random_lift(rng, ctx)
        c = ps.random_lift(rng, ctx)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_frobenius_is_a_ring_homomorphism():
    rng = random.Random(20)
    for _ in range(CASES):
        ctx = ps.random_context(rng, max_vars=3)
        a = ps.random_lift(rng, ctx)
        b = ps.random_lift(rng, ctx)
        assert frobenius_substitute(a * b) == frobenius_substitute(
            a
        ) * frobenius_substitute(b)
        assert frobenius_substitute(a + b) == frobenius_substitute(
            a
        ) + frobenius_substitute(b)


def test_frobenius_lift_law():
    # phi(a) = a^p mod p, exactly testable through the kernel
    rng = random.Random(21)
    for _ in range(CASES):
        ctx = ps.random_context(rng, max_vars=3)
        a = ps.random_lift(rng, ctx)
        assert project_mod_p(frobenius_substitute(a)) == project_mod_p(a) ** ctx.p


def test_u_image_inclusion_preserving_on_principal_divisors():
    # J = (g*h) inside K = (g): every generator of u(F_* J) lies in the
    # span of bounded-degree monomial multiples of u(F_* K)'s generators
    rng = random.Random(22)
    for _ in range(CASES):
        ctx = ps.random_context(rng)
        g = ps.random_res(rng, ctx, max_terms=3, max_exp=3)
        h = ps.random_res(rng, ctx, max_terms=3, max_exp=3)
        if g.is_zero() or h.is_zero():
            continue
        image_small = u_image(principal_ideal(g))
        image_big = u_image(principal_ideal(g * h))
        bound = (h.total_degree() + (ctx.p - 1) * ctx.n_vars) // ctx.p + 1
        ech = Echelon(ctx)
        for gen in image_small.gens:
            for exps in _monomials_up_to(ctx, bound):
                ech.insert(dict((ResPoly.monomial(ctx, exps) * gen).terms))
        for gen in image_big.gens:
            assert ech.spans(dict(gen.terms)), (str(g), str(h), str(gen))


def _monomials_up_to(ctx, degree):
    import itertools

    for exps in itertools.product(range(degree + 1), repeat=ctx.n_vars):
        if sum(exps) <= degree:
            yield exps


def test_truncated_scan_matches_exact_on_random_inputs():
    rng = random.Random(23)
    for _ in range(CASES):
        ctx = ps.random_context(rng)
        p = ctx.p
        h = ps.random_hypersurface(rng, ctx)
        ws = _Workspace(h)
        n = rng.randrange(1, 4)
        entries = tuple(rng.randrange(p) for _ in range(n - 1)) + (
            rng.randrange(p + 1),
        )
        exact = ideal_in_frobenius_power(compute_ladder(h, entries), 1)
        assert _truncated_contained(ws, entries) == exact


def test_sequence_values_always_in_range():
    rng = random.Random(24)
    from pptlab.ladder import splitting_sequence

    for _ in range(100):
        ctx = ps.random_context(rng)
        h = ps.random_hypersurface(rng, ctx)
        seq = splitting_sequence(h, rng.randrange(1, 4))
        assert seq.values[0] == 0
        assert all(0 <= s <= ctx.p for s in seq.values)
