from fractions import Fraction

from pptlab.delta import validate
from pptlab.parser import expand_var_spec, parse_poly
from pptlab.pipeline import analyze
from pptlab.ring import Context


def prepare(p, vars_spec, expr):
    ctx = Context(p, expand_var_spec(vars_spec))
    return validate(ctx, parse_poly(expr, ctx))


def test_certificate_priority_quick_criterion_over_all_bounded():
    a = analyze(prepare(2, "x,y", "x^2 + y^2"), 5)
    assert a.certificate == "C3"
    assert a.verdict.certified
    assert a.verdict.up_to_depth is None


def test_fermat_certificate_when_no_criterion_fires():
    a = analyze(prepare(5, "x1..x4", "x1^4 + x2^4 + x3^4 + x4^4"), 3)
    assert a.certificate == "fermat"
    assert a.verdict.basis == "fermat"
    assert a.exact == Fraction(1)


def test_uncertified_purity_is_depth_qualified():
    # regular input, no quick criterion, not of Fermat shape
    a = analyze(prepare(3, "x", "3 - x^2"), 4)
    assert a.certificate is None
    assert a.verdict.kind == "perfectoid_pure"
    assert a.verdict.up_to_depth == 4
    assert a.exact == Fraction(1, 2)
    assert a.conjectural is True


def test_family_period_fills_in_short_windows():
    # depth 2 is too short to observe the alternating period twice, but the
    # quick-criterion certificate supplies it
    a = analyze(prepare(2, "x,y,z", "x^3 + y^3 + z^3"), 2)
    assert a.seq.values == (0, 1, 0)
    assert (a.preperiod, a.period) == (0, 2)
    assert a.exact == Fraction(1, 3)
    assert a.conjectural is False
    assert a.exact >= a.partial


def test_terminated_sequence_has_no_threshold_block():
    a = analyze(prepare(2, "x1..x4", "x1^4 + x2^4 + x3^4 + x4^4"), 3)
    assert a.seq.terminated_at_p == 2
    assert a.partial is None and a.exact is None
    assert a.period is None and a.conjectural is None


def test_strict_r1_flows_through():
    a = analyze(prepare(2, "x1..x4", "x1^4 + x2^4 + x3^4 + x4^4"), 3, strict_r1=True)
    assert a.verdict.kind == "inconclusive"


def test_exact_bounds_partial_on_certified_families():
    for p, vars_spec, expr, depth in [
        (2, "x,y,z", "x^3 + y^3 + z^3", 5),
        (3, "x1..x4", "x1^4 + x2^4 + x3^4 + x4^4", 4),
        (5, "x1..x3", "x1^3 + x2^3 + x3^3", 4),
    ]:
        a = analyze(prepare(p, vars_spec, expr), depth)
        assert a.partial is not None and a.exact is not None
        assert 0 <= a.partial <= a.exact <= 1
