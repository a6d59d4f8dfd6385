"""The ideal ladder and the splitting-order sequence engine.

The ladder ideal for an index (l_1, ..., l_n) is built inside-out:
start from the principal ideal (fbar^(p - l_n)) and, for i = n-1 down
to 1, replace K by

    fbar^(p-l_i-1) * u(F_*(delta(f)^(l_i) * K))  +  (fbar^(p-l_i)).

The sequence entry s_n is the largest s in 0..p whose ladder ideal for
(s_1, ..., s_(n-1), s) lies in (x_1^p, ..., x_N^p).  Containment is
downward-closed in s because the base ideal grows with the last slot and
every recursion step preserves inclusions; the scan asserts that.

``compute_ladder`` returns the exact ideal.  The scans inside ``next_s``
instead run a truncated chain: with k applications of u still ahead, a
monomial with any exponent >= p^(k+1) can only ever produce final
monomials with some exponent >= p, and all the chain's stages are
F_p-linear in the generators, so dropping those monomials never changes
the final containment answer.  Caps are rounded up to powers of two so
the drop test is a single bit mask.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .delta import Hypersurface
from .errors import InputError, InvalidIndexError, MonotonicityViolationError
from .ideals import (
    Echelon,
    ResIdeal,
    _terms_in_frobenius_power,
    _u_buckets,
    ideal_add_principal,
    ideal_mul_poly,
    principal_ideal,
    u_image,
)
from .ring import FIELD_BITS, Context


@dataclass(frozen=True)
class SplitSequence:
    """Computed sequence s_0, ..., s_depth with s_0 = 0.

    Once an entry equals p, all later entries are p; ``terminated_at_p``
    records the first such index.  ``per_step_ideals`` (debug only) holds
    the exact final ladder ideal of each computed step.
    """

    p: int
    depth: int
    values: tuple[int, ...]
    terminated_at_p: int | None
    hypersurface: Hypersurface | None = field(default=None, compare=False, repr=False)
    per_step_ideals: tuple[ResIdeal, ...] | None = field(
        default=None, compare=False, repr=False
    )
    per_depth_ms: tuple[float, ...] | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        if self.depth < 1 or len(self.values) != self.depth + 1:
            raise InputError("sequence length must be depth + 1")
        if self.values[0] != 0:
            raise InputError("s_0 must be 0")
        hit = False
        for i, s in enumerate(self.values):
            if not 0 <= s <= self.p:
                raise InputError(f"s_{i} = {s} outside 0..{self.p}")
            if hit and s != self.p:
                raise InputError("entries after the first p must all be p")
            hit = hit or s == self.p

    def computed_values(self) -> tuple[int, ...]:
        """Values up to and including the first p (drops the p-fill)."""
        if self.terminated_at_p is None:
            return self.values
        return self.values[: self.terminated_at_p + 1]


def _check_index(p: int, entries: Sequence[int]) -> tuple[int, ...]:
    entries = tuple(entries)
    if not entries:
        raise InvalidIndexError("ladder index must have at least one slot")
    for i, l in enumerate(entries):
        last = i == len(entries) - 1
        top = p if last else p - 1
        if not 0 <= l <= top:
            raise InvalidIndexError(
                f"slot {i + 1} value {l} outside 0..{top}"
                + ("" if last else " (only the last slot may reach p)")
            )
    return entries


def compute_ladder(h: Hypersurface, entries: Sequence[int]) -> ResIdeal:
    """Exact ladder ideal for the given index, echelon-reduced."""
    p = h.ctx.p
    entries = _check_index(p, entries)
    ideal = principal_ideal(h.f_res_power(p - entries[-1]))
    for j in range(len(entries) - 2, -1, -1):
        l = entries[j]
        ideal = ideal_add_principal(
            ideal_mul_poly(
                u_image(ideal_mul_poly(ideal, h.delta_power(l))),
                h.f_res_power(p - l - 1),
            ),
            h.f_res_power(p - l),
        )
    return ideal


# -- truncated scan machinery ----------------------------------------------


def _dead_mask(ctx: Context, cap: int) -> int:
    """Bit mask selecting monomials with some exponent >= 2**ceil(log2 cap).

    Zero when the rounded cap leaves the supported exponent range, which
    disables truncation at that level.
    """
    b = (cap - 1).bit_length()
    if b >= 31:
        return 0
    field_high = ((1 << (FIELD_BITS - b)) - 1) << b
    mask = 0
    for i in range(ctx.n_vars):
        mask |= field_high << (FIELD_BITS * i)
    return mask


def _truncate(terms: dict[int, int], mask: int) -> dict[int, int]:
    if not mask:
        return terms
    return {m: c for m, c in terms.items() if not m & mask}


def _mul_terms(
    a: dict[int, int], b: dict[int, int], mod: int, mask: int
) -> dict[int, int]:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: dict[int, int] = {}
    get = out.get
    if mask:
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma + mb
                if m & mask:
                    continue
                out[m] = get(m, 0) + ca * cb
    else:
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
    return {m: v for m, c in out.items() if (v := c % mod)}


class _Workspace:
    """Per-run cache of truncated delta- and f-power term dicts."""

    __slots__ = ("h", "_cache")

    def __init__(self, h: Hypersurface):
        self.h = h
        self._cache: dict[tuple[str, int, int], dict[int, int]] = {}

    def delta_terms(self, l: int, mask: int) -> dict[int, int]:
        key = ("d", l, mask)
        got = self._cache.get(key)
        if got is None:
            got = _truncate(self.h.delta_power(l).terms, mask)
            self._cache[key] = got
        return got

    def f_terms(self, k: int, mask: int) -> dict[int, int]:
        key = ("f", k, mask)
        got = self._cache.get(key)
        if got is None:
            got = _truncate(self.h.f_res_power(k).terms, mask)
            self._cache[key] = got
        return got


def _truncated_contained(ws: _Workspace, entries: tuple[int, ...]) -> bool:
    """Whether the ladder ideal for ``entries`` lies in (x_1^p, .., x_N^p).

    Runs the chain with level caps; the masks only ever drop monomials
    that are already certain to end up inside the target ideal, so the
    final exact membership test on the survivors gives the same answer
    as the untruncated chain.
    """
    ctx = ws.h.ctx
    p = ctx.p
    n = len(entries)
    base_mask = _dead_mask(ctx, p**n)
    base = _truncate(ws.f_terms(p - entries[-1], 0), base_mask)
    gens = [base] if base else []
    for j in range(n - 2, -1, -1):
        if not gens:
            return True
        l = entries[j]
        prod_mask = _dead_mask(ctx, p ** (j + 2))
        out_mask = _dead_mask(ctx, p ** (j + 1))
        w = ws.delta_terms(l, prod_mask) if l else None
        ech = Echelon(ctx)
        for g in gens:
            prod = _mul_terms(g, w, p, prod_mask) if l else g
            for key in sorted(buckets := _u_buckets(ctx, prod)):
                ech.insert(_truncate(buckets[key], out_mask))
        fmul = ws.f_terms(p - l - 1, out_mask)
        out = Echelon(ctx)
        for row in ech.basis_terms():
            out.insert(_mul_terms(row, fmul, p, out_mask))
        out.insert(ws.f_terms(p - l, out_mask))
        gens = out.basis_terms()
    return all(_terms_in_frobenius_power(ctx, g, 1) for g in gens)


def _scan_next(ws: _Workspace, prefix: tuple[int, ...]) -> int:
    """Largest s with the ladder ideal for prefix + (s,) contained.

    For small p every candidate is evaluated and the containment set is
    asserted to be an interval [0, s]; for larger p a binary search rides
    the monotonicity instead.
    """
    p = ws.h.ctx.p

    def contained(s: int) -> bool:
        return _truncated_contained(ws, prefix + (s,))

    if p <= 5:
        results = {s: contained(s) for s in range(p, -1, -1)}
        hits = [s for s, ok in results.items() if ok]
        if not hits:
            raise MonotonicityViolationError(
                f"no candidate in 0..{p} satisfies containment after prefix "
                f"{prefix}; the containment set must contain 0"
            )
        smax = max(hits)
        if sorted(hits) != list(range(smax + 1)):
            raise MonotonicityViolationError(
                f"containment set {sorted(hits)} after prefix {prefix} is not "
                f"the interval [0, {smax}]"
            )
        return smax
    lo, hi = 0, p
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if contained(mid):
            lo = mid
        else:
            hi = mid - 1
    if lo == 0 and not contained(0):
        raise MonotonicityViolationError(
            f"containment fails at s = 0 after prefix {prefix}"
        )
    return lo


def next_s(h: Hypersurface, prefix: Sequence[int]) -> int:
    """The next sequence entry after a committed prefix s_1..s_(n-1)."""
    p = h.ctx.p
    prefix = tuple(prefix)
    for i, l in enumerate(prefix):
        if not 0 <= l <= p - 1:
            raise InvalidIndexError(f"prefix entry s_{i + 1} = {l} outside 0..{p - 1}")
    return _scan_next(_Workspace(h), prefix)


def splitting_sequence(h: Hypersurface, depth: int, trace: bool = False) -> SplitSequence:
    """Compute s_0..s_depth; once an entry hits p the tail is filled with p."""
    if depth < 1:
        raise InputError(f"depth must be >= 1, got {depth}")
    p = h.ctx.p
    ws = _Workspace(h)
    values = [0]
    timings = []
    terminated = None
    prefix: tuple[int, ...] = ()
    for n in range(1, depth + 1):
        t0 = time.perf_counter()
        s = _scan_next(ws, prefix)
        timings.append((time.perf_counter() - t0) * 1000.0)
        values.append(s)
        if s == p:
            terminated = n
            break
        prefix = prefix + (s,)
    while len(values) < depth + 1:
        values.append(p)
    ideals = None
    if trace:
        ideals = tuple(
            compute_ladder(h, tuple(values[1 : n + 1]))
            for n in range(1, (terminated or depth) + 1)
        )
    return SplitSequence(
        p=p,
        depth=depth,
        values=tuple(values),
        terminated_at_p=terminated,
        hypersurface=h,
        per_step_ideals=ideals,
        per_depth_ms=tuple(timings),
    )
