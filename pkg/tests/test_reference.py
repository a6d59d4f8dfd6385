"""End-to-end cross-check against a self-contained naive implementation.

The reference below shares no code with the package: polynomials are
exponent-tuple dicts, the dual-basis operator enumerates all p^N shift
multipliers, generator lists are never compressed (containment in a
monomial ideal is generator-wise, so reduction is unnecessary for
correctness), and delta comes from all-integer arithmetic.  Agreement of
the computed sequences exercises every production layer at once: packed
monomials, kernel arithmetic, bucketing, echelon compression, and the
truncated containment scan.
"""

import itertools
import random

from pptlab.delta import validate
from pptlab.ladder import splitting_sequence
from pptlab.ring import Context, LiftPoly

from oracles import delta_int, int_mul, int_pow, random_int_poly, reduce_mod


def naive_mul(a, b, p):
    return reduce_mod(int_mul(a, b), p)


def naive_pow(a, k, p, n):
    return reduce_mod(int_pow(a, k, n), p)


def naive_u_single(g, p, n):
    out = {}
    for exps, c in g.items():
        if all(e % p == p - 1 for e in exps):
            out[tuple((e - (p - 1)) // p for e in exps)] = c
    return out


def naive_u_image(gens, p, n):
    images = []
    for g in gens:
        for mult in itertools.product(range(p), repeat=n):
            shifted = {
                tuple(e + m for e, m in zip(exps, mult)): c for exps, c in g.items()
            }
            image = naive_u_single(shifted, p, n)
            if image:
                images.append(image)
    return images


def naive_in_frobenius_power(g, p, n):
    return all(any(e >= p for e in exps) for exps in g)


def naive_ladder_contained(f_res, delta_f, entries, p, n):
    gens = [naive_pow(f_res, p - entries[-1], p, n)]
    for j in range(len(entries) - 2, -1, -1):
        l = entries[j]
        delta_power = naive_pow(delta_f, l, p, n)
        multiplied = [naive_mul(g, delta_power, p) for g in gens]
        rooted = naive_u_image(multiplied, p, n)
        f_low = naive_pow(f_res, p - l - 1, p, n)
        gens = [naive_mul(g, f_low, p) for g in rooted]
        gens.append(naive_pow(f_res, p - l, p, n))
    return all(naive_in_frobenius_power(g, p, n) for g in gens if g)


def naive_sequence(f_int, p, n, depth):
    f_res = reduce_mod(f_int, p)
    delta_f = delta_int(f_int, p, n)
    values = [0]
    prefix = ()
    for _ in range(depth):
        found = None
        for s in range(p, -1, -1):
            if naive_ladder_contained(f_res, delta_f, prefix + (s,), p, n):
                found = s
                break
        assert found is not None
        values.append(found)
        if found == p:
            break
        prefix += (found,)
    while len(values) < depth + 1:
        values.append(p)
    return tuple(values)


def random_valid_input(rng, p, n):
    while True:
        terms = random_int_poly(rng, n, max_terms=3, max_exp=3, max_coeff=8)
        terms.pop((0,) * n, None)
        if terms and reduce_mod(terms, p):
            return terms


def test_sequences_match_naive_reference():
    rng = random.Random(600)
    for _ in range(120):
        p = rng.choice([2, 3])
        n = rng.randrange(1, 3)
        depth = rng.randrange(1, 4)
        f_int = random_valid_input(rng, p, n)
        ctx = Context(p, [f"x{i}" for i in range(n)])
        h = validate(ctx, LiftPoly(ctx, f_int))
        got = splitting_sequence(h, depth).values
        want = naive_sequence(f_int, p, n, depth)
        assert got == want, (p, n, f_int, got, want)


def test_known_inputs_match_naive_reference():
    cases = [
        (2, 2, {(2, 0): 1, (0, 2): 1}, 4),
        (2, 3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}, 3),
        (3, 1, {(0,): 3, (2,): -1}, 3),
        (2, 2, {(1, 0): 1, (0, 3): 1}, 4),
        (3, 2, {(3, 0): 1, (1, 1): 1, (0, 3): 1}, 3),
    ]
    for p, n, f_int, depth in cases:
        ctx = Context(p, [f"x{i}" for i in range(n)])
        h = validate(ctx, LiftPoly(ctx, f_int))
        got = splitting_sequence(h, depth).values
        want = naive_sequence(f_int, p, n, depth)
        assert got == want, (p, n, f_int, got, want)
