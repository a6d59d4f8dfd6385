"""Verdicts, exact threshold values, quasi-F-split heights, nu-functions,
quick criteria, and the Fermat-type predictor.

Threshold values are exact ``fractions.Fraction``s throughout.  The
partial threshold of a sequence bounded by p-1 is

    sum_(i=1..depth) (p - 1 - s_i) / p^i,

and when the sequence is eventually periodic the closed form of the full
series is evaluated exactly.  A detected period is only ever reported as
proven when the input belongs to a family with a certificate (a quick
criterion or the Fermat predictor); otherwise it is conjectural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .delta import Hypersurface, delta
from .errors import (
    InputError,
    InternalCheckError,
    PNotGreaterThanNError,
    SequenceHitPError,
)
from .ideals import member_frobenius_power
from .ladder import SplitSequence
from .ring import FIELD_BITS, FIELD_MASK, LiftPoly, ResPoly

VERDICT_PERFECTOID_PURE = "perfectoid_pure"
VERDICT_NOT_PERFECTOID_PURE = "not_perfectoid_pure"
VERDICT_INCONCLUSIVE = "inconclusive"

BASIS_ALL_BOUNDED = "all_bounded"
REASON_DEPTH_EXHAUSTED = "depth_exhausted"
REASON_UNCLASSIFIED_PATTERN = "unclassified_pattern"

CERTIFICATES = ("C1", "C3", "fermat")


@dataclass(frozen=True)
class Verdict:
    kind: str
    basis: str | None = None  # all_bounded, C1, C3 or fermat (pure verdicts)
    up_to_depth: int | None = None  # set when purity is only depth-checked
    r: int | None = None  # length of the (p-1)-run (non-pure verdicts)
    flagged_r1: bool = False
    reason: str | None = None  # inconclusive verdicts

    @property
    def certified(self) -> bool:
        return self.kind == VERDICT_PERFECTOID_PURE and self.up_to_depth is None


def classify(
    seq: SplitSequence, *, strict_r1: bool = False, certificate: str | None = None
) -> Verdict:
    """Classify a sequence.

    All entries bounded by p-1 give a pure verdict, qualified "up to
    depth" unless a certificate extends it to all n.  A run
    s_1 = ... = s_r = p-1 followed by s_(r+1) = p is not perfectoid pure
    for r >= 2; the r = 1 case carries the same conclusion here but is
    flagged (strict mode downgrades it to inconclusive).  Any other way
    of reaching p is inconclusive: whether boundedness is necessary for
    purity is open.
    """
    if certificate is not None and certificate not in CERTIFICATES:
        raise InputError(f"unknown certificate {certificate!r}")
    p = seq.p
    if seq.terminated_at_p is None:
        if certificate:
            return Verdict(kind=VERDICT_PERFECTOID_PURE, basis=certificate)
        return Verdict(
            kind=VERDICT_PERFECTOID_PURE,
            basis=BASIS_ALL_BOUNDED,
            up_to_depth=seq.depth,
        )
    i = seq.terminated_at_p
    run = seq.values[1:i]
    r = i - 1
    if r >= 1 and all(s == p - 1 for s in run):
        if r == 1 and strict_r1:
            return Verdict(kind=VERDICT_INCONCLUSIVE, reason=REASON_UNCLASSIFIED_PATTERN)
        return Verdict(kind=VERDICT_NOT_PERFECTOID_PURE, r=r, flagged_r1=r == 1)
    return Verdict(kind=VERDICT_INCONCLUSIVE, reason=REASON_UNCLASSIFIED_PATTERN)


def ppt_partial(seq: SplitSequence) -> Fraction:
    """Exact partial sum of the threshold series down to the computed depth."""
    p = seq.p
    if seq.terminated_at_p is not None:
        raise SequenceHitPError("threshold series requires all entries <= p-1")
    total = Fraction(0)
    q = 1
    for s in seq.values[1:]:
        q *= p
        total += Fraction(p - 1 - s, q)
    return total


def detect_period(seq: SplitSequence) -> tuple[int, int] | None:
    """Smallest (preperiod a, period length pi) visible in the window.

    Requires at least two full repetitions (a + 2*pi <= depth) and the
    shift identity s_(a+j) = s_(a+pi+j) across the whole remaining
    window.  Returns None when nothing repeats.
    """
    values = seq.values
    depth = seq.depth
    for a in range(depth):
        for pi in range(1, (depth - a) // 2 + 1):
            if all(
                values[a + j] == values[a + pi + j]
                for j in range(1, depth - a - pi + 1)
            ):
                return a, pi
    return None


def ppt_closed_form(seq: SplitSequence, a: int, pi: int) -> Fraction:
    """Exact value of the full threshold series for a periodic pattern.

    With c_i = p - 1 - s_i:  sum_(i<=a) c_i/p^i
    + p^(-a) * (sum_(j<=pi) c_(a+j)/p^j) * p^pi/(p^pi - 1).
    """
    p = seq.p
    if a < 0 or pi < 1 or a + pi > seq.depth:
        raise InputError(f"period ({a}, {pi}) does not fit depth {seq.depth}")
    if seq.terminated_at_p is not None:
        raise SequenceHitPError("threshold series requires all entries <= p-1")
    head = Fraction(0)
    q = 1
    for i in range(1, a + 1):
        q *= p
        head += Fraction(p - 1 - seq.values[i], q)
    block = Fraction(0)
    q = 1
    for j in range(1, pi + 1):
        q *= p
        block += Fraction(p - 1 - seq.values[a + j], q)
    tail = block * Fraction(p**pi, p**pi - 1) / p**a
    return head + tail


QFS_HEIGHT = "height"
QFS_NOT_SPLIT = "not_quasi_f_split"
QFS_EXCEEDS_DEPTH = "exceeds_depth"


@dataclass(frozen=True)
class QfsResult:
    kind: str
    height: int | None = None
    depth: int | None = None

    def __str__(self) -> str:
        if self.kind == QFS_HEIGHT:
            return str(self.height)
        if self.kind == QFS_NOT_SPLIT:
            return "not quasi-F-split"
        return f"> {self.depth}"


def qfs_height(seq: SplitSequence) -> QfsResult:
    """Quasi-F-split height: smallest h with s_1 = ... = s_(h-1) = 1, s_h = 0.

    A prefix entry outside {0, 1} rules the characterization out; an
    unbroken run of ones exhausts the computed depth.
    """
    for i, s in enumerate(seq.values[1:], start=1):
        if s == 0:
            return QfsResult(kind=QFS_HEIGHT, height=i)
        if s != 1:
            return QfsResult(kind=QFS_NOT_SPLIT)
    return QfsResult(kind=QFS_EXCEEDS_DEPTH, depth=seq.depth)


# -- nu-functions and the F-pure threshold ----------------------------------


def _truncate_res(g: ResPoly, q: int) -> ResPoly:
    """Drop monomials with some exponent >= q (they stay inside the
    monomial ideal under further multiplication, so products of truncated
    polynomials stay correct modulo that ideal)."""
    n = g.ctx.n_vars
    out = {}
    for m, c in g.terms.items():
        rest = m
        live = True
        for _ in range(n):
            if rest & FIELD_MASK >= q:
                live = False
                break
            rest >>= FIELD_BITS
        if live:
            out[m] = c
    return ResPoly._raw(g.ctx, out, min(g.max_exponent, q - 1))


def _truncated_power(g: ResPoly, k: int, q: int) -> ResPoly:
    result = _truncate_res(ResPoly.one(g.ctx), q)
    base = _truncate_res(g, q)
    while k:
        if k & 1:
            result = _truncate_res(result * base, q)
        k >>= 1
        if k:
            base = _truncate_res(base * base, q)
    return result


def nu(f_res: ResPoly, e: int, *, start: int = 0) -> int:
    """nu(p^e) = max N with fbar^N outside (x_1^(p^e), ..., x_N^(p^e)).

    Iterated multiplication with truncation: any monomial already inside
    the target monomial ideal is dropped, which cannot resurrect a
    membership-relevant term.  ``start`` seeds the search from a known
    lower bound.
    """
    if f_res.is_zero():
        raise InputError("nu requires a nonzero reduction")
    if e < 1:
        raise InputError(f"e must be >= 1, got {e}")
    q = f_res.ctx.p ** e
    base = _truncate_res(f_res, q)
    power = _truncated_power(f_res, start, q)
    if power.is_zero():
        raise InternalCheckError(
            f"seed {start} for nu(p^{e}) is already inside the ideal"
        )
    n = start
    while True:
        power = _truncate_res(power * base, q)
        if power.is_zero():
            return n
        n += 1


def nu_table(f_res: ResPoly, e_max: int) -> dict[int, int]:
    """nu(p^e) for e = 1..e_max, each search seeded from p * nu(p^(e-1)).

    The standard monotonicity nu(p^(e+1)) >= p * nu(p^e) is asserted.
    """
    if e_max < 1:
        raise InputError(f"e_max must be >= 1, got {e_max}")
    p = f_res.ctx.p
    table: dict[int, int] = {}
    prev = 0
    for e in range(1, e_max + 1):
        value = nu(f_res, e, start=p * prev)
        if value < p * prev:
            raise InternalCheckError(
                f"nu(p^{e}) = {value} below the monotone bound {p * prev}"
            )
        table[e] = value
        prev = value
    return table


def fpt_approx(f_res: ResPoly, e_max: int) -> Fraction:
    """nu(p^e_max)/p^e_max, the F-pure threshold approximant at level e_max."""
    table = nu_table(f_res, e_max)
    return Fraction(table[e_max], f_res.ctx.p ** e_max)


# -- structural tests on the input -------------------------------------------


def regularity_test(h: Hypersurface) -> bool:
    """True iff the quotient by f is regular: f has a degree-1 monomial
    with unit coefficient mod p, or constant term p*v with v a unit."""
    ctx = h.ctx
    p = ctx.p
    const = h.f_lift.constant_coefficient()
    if const % p == 0 and const != 0:
        return True
    for exps, c in h.f_lift.items():
        if sum(exps) == 1 and c % p != 0:
            return True
    return False


@dataclass(frozen=True)
class QuickCriteria:
    """Outcome of the three fast congruence checks.

    All three require fbar inside (x_1^p, ..., x_N^p); when that fails
    ``fired`` is empty and ``note`` says why.  Fired criteria come with
    sequence/threshold predictions used both as certificates and as
    cross-checks of the ladder:

    * C1: fbar^(p-1)*delta(f)^(p-1) congruent to a nonzero multiple of
      (x_1...x_N)^(p^2-1) modulo (x_i^(p^2))  =>  s = (0, p-1, 0, p-1, ...)
      and threshold 1/(p+1).
    * C2: delta(f)^(p-1) inside (x_i^(p^2))  =>  s hits p at step 2; not
      perfectoid pure.
    * C3: f = f' + p*x_1...x_N with delta(f') inside (x_i^(p^2))  =>
      s = (0, p-1, p-1, ...) and threshold 0.
    """

    fired: frozenset[str]
    hypothesis_met: bool
    note: str | None = None

    def predicted_values(self, criterion: str, p: int, depth: int) -> tuple[int, ...]:
        if criterion not in self.fired:
            raise InputError(f"criterion {criterion} did not fire")
        if criterion == "C1":
            return tuple(0 if i % 2 == 0 else p - 1 for i in range(depth + 1))
        if criterion == "C3":
            return (0,) + (p - 1,) * depth
        # C2: the run ends at p on the second step
        values = [0, p - 1] + [p] * (depth - 1)
        return tuple(values[: depth + 1])

    def predicted_exact(self, criterion: str, p: int) -> Fraction | None:
        if criterion == "C1":
            return Fraction(1, p + 1)
        if criterion == "C3":
            return Fraction(0)
        return None


def _reduce_mod_frobenius_square(g: ResPoly) -> ResPoly:
    return _truncate_res(g, g.ctx.p ** 2)


def check_quick_criteria(h: Hypersurface) -> QuickCriteria:
    ctx = h.ctx
    p = ctx.p
    if not member_frobenius_power(h.f_res, 1):
        return QuickCriteria(
            fired=frozenset(),
            hypothesis_met=False,
            note="fbar is not inside (x_1^p, ..., x_N^p); "
            "the quick criteria do not apply",
        )
    fired = set()
    delta_pow = h.delta_power(p - 1)
    # C1: compare against the single monomial (x_1...x_N)^(p^2-1)
    residue = _reduce_mod_frobenius_square(h.f_res_power(p - 1) * delta_pow)
    target = ctx.encode_monomial((p * p - 1,) * ctx.n_vars)
    if set(residue.terms) == {target}:
        fired.add("C1")
    # C2
    if _reduce_mod_frobenius_square(delta_pow).is_zero():
        fired.add("C2")
    # C3
    full_product = LiftPoly.monomial(ctx, (1,) * ctx.n_vars, p)
    f_prime = h.f_lift - full_product
    if _reduce_mod_frobenius_square(delta(f_prime)).is_zero():
        fired.add("C3")
    return QuickCriteria(fired=frozenset(fired), hypothesis_met=True)


def fermat_degree(h: Hypersurface) -> int | None:
    """N when f is exactly x_1^N + ... + x_N^N with p > N, else None."""
    ctx = h.ctx
    n = ctx.n_vars
    terms = h.f_lift.terms_by_exponent()
    if len(terms) != n:
        return None
    degrees = set()
    for exps, c in terms.items():
        if c != 1:
            return None
        nonzero = [e for e in exps if e]
        if len(nonzero) != 1:
            return None
        degrees.add(nonzero[0])
    if len(degrees) != 1:
        return None
    deg = degrees.pop()
    if deg != n or deg < 2 or ctx.p <= deg:
        return None
    return deg


def fermat_predict(n_vars: int, p: int, depth: int) -> tuple[int, ...]:
    """Predicted sequence for x_1^N + ... + x_N^N (N = n_vars, p > N):
    s_e is the unique value in 0..N-2 with s_e + 1 = p^e mod N."""
    if not (p > n_vars >= 2):
        raise PNotGreaterThanNError(
            f"the predictor needs p > N >= 2, got p = {p}, N = {n_vars}"
        )
    values = [0]
    power = 1
    for _ in range(depth):
        power = power * p % n_vars
        values.append((power - 1) % n_vars)
    return tuple(values)
