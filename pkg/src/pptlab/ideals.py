"""Frobenius roots of ideals, echelon-compressed generator sets, and
membership in Frobenius powers of the maximal ideal.

Ideals of F_p[x_1..x_N] are stored as finite generator lists kept in
reduced row echelon form over F_p, with monomials (graded-lex order) as
the coordinates.  Echelon reduction preserves the F_p-span of the
generators, hence the generated ideal, and the reduced basis is the
unique canonical one for that span, so results are independent of the
order work arrives in.  Full ideal equality is deliberately not offered;
equality of ``ResIdeal`` values means equality of generator spans.

The operator ``u_single`` is the dual-basis component attached to the
Frobenius basis element (x_1...x_N)^(p-1): it keeps exactly the monomials
that are congruent to (p-1, ..., p-1) mod p and divides their shifted
exponents by p.  ``u_image`` pushes a whole ideal through it.  Because
u(F_*(a^p g)) = a * u(F_* g), the images of x^e * g for the p^N shift
multipliers e in {0..p-1}^N generate the image ideal; each monomial of g
is selected by exactly one multiplier, so the fan-out is computed by
bucketing the support by residue class instead of enumerating all p^N
multipliers.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ContextMismatchError, InputError, ResourceLimitError
from .ring import FIELD_BITS, FIELD_MASK, Context, ResPoly


class Echelon:
    """Incremental reduced row echelon accumulator over F_p.

    Rows are term dicts (packed monomial -> coefficient), each normalized
    so its pivot (graded-lex leading monomial) has coefficient 1, and no
    row contains another row's pivot.  ``insert`` reduces a new row
    against the basis and absorbs any remainder; the resulting basis is
    the unique RREF of the span regardless of insertion order.
    """

    __slots__ = ("ctx", "p", "_rows", "_pivots_desc", "_seen")

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.p = ctx.p
        self._rows: dict[int, dict[int, int]] = {}
        self._pivots_desc: list[int] = []
        self._seen: set[int] = set()

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, terms: dict[int, int]) -> dict[int, int]:
        """Remainder of a term dict after reduction against the basis."""
        p = self.p
        rows = self._rows
        h = dict(terms)
        for pivot in self._pivots_desc:
            c = h.get(pivot)
            if not c:
                continue
            for m, rc in rows[pivot].items():
                v = (h.get(m, 0) - c * rc) % p
                if v:
                    h[m] = v
                else:
                    h.pop(m, None)
        return h

    def spans(self, terms: dict[int, int]) -> bool:
        return not self.reduce(terms)

    def insert(self, terms: dict[int, int]) -> bool:
        """Absorb a row; returns True when the rank grew."""
        h = self.reduce(terms)
        if not h:
            return False
        pivot = max(h)
        inv = pow(h[pivot], -1, self.p)
        if inv != 1:
            p = self.p
            h = {m: c * inv % p for m, c in h.items()}
        # keep reduced form: clear the new pivot from every stored row
        p = self.p
        for other_pivot, row in self._rows.items():
            c = row.get(pivot)
            if not c:
                continue
            for m, rc in h.items():
                v = (row.get(m, 0) - c * rc) % p
                if v:
                    row[m] = v
                else:
                    row.pop(m, None)
            self._seen.update(row)
        self._rows[pivot] = h
        self._note_monomials(h)
        # maintain descending pivot order
        lo, hi = 0, len(self._pivots_desc)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._pivots_desc[mid] > pivot:
                lo = mid + 1
            else:
                hi = mid
        self._pivots_desc.insert(lo, pivot)
        return True

    def _note_monomials(self, terms: Iterable[int]) -> None:
        self._seen.update(terms)
        if len(self._seen) > self.ctx.max_workspace_monomials:
            raise ResourceLimitError(
                f"echelon workspace exceeded {self.ctx.max_workspace_monomials} "
                f"distinct monomials"
            )

    def basis_terms(self) -> list[dict[int, int]]:
        """Rows in descending pivot order (copies)."""
        return [dict(self._rows[pivot]) for pivot in self._pivots_desc]

    def basis_polys(self) -> list[ResPoly]:
        return [
            ResPoly._raw(self.ctx, row, _max_exponent_of(self.ctx, row))
            for row in self.basis_terms()
        ]


def _max_exponent_of(ctx: Context, terms: dict[int, int]) -> int:
    n = ctx.n_vars
    best = 0
    for m in terms:
        for _ in range(n):
            e = m & FIELD_MASK
            if e > best:
                best = e
            m >>= FIELD_BITS
    return best


def echelon_reduce(ctx: Context, gens: Sequence[ResPoly]) -> list[ResPoly]:
    """Row-echelon basis of the F_p-span of ``gens``: same span, same ideal."""
    if len(gens) > ctx.max_generators:
        raise ResourceLimitError(
            f"{len(gens)} generators exceed the cap {ctx.max_generators}"
        )
    ech = Echelon(ctx)
    for g in gens:
        if not isinstance(g, ResPoly):
            raise ContextMismatchError("echelon_reduce expects ResPoly generators")
        ctx.check_same(g.ctx)
        ech.insert(g.terms)
    return ech.basis_polys()


class ResIdeal:
    """Finitely generated ideal given by an echelon-reduced generator list.

    ``gens`` is the canonical RREF basis of the span of whatever
    generators the ideal was built from, in descending leading-monomial
    order.  ``degree_bound`` caches the maximal total degree among them.
    """

    __slots__ = ("ctx", "gens", "degree_bound")

    def __init__(self, ctx: Context, gens: Sequence[ResPoly]):
        reduced = echelon_reduce(ctx, list(gens))
        self.ctx = ctx
        self.gens = tuple(reduced)
        self.degree_bound = max((g.total_degree() for g in reduced), default=0)

    @classmethod
    def _from_echelon(cls, ctx: Context, ech: Echelon) -> "ResIdeal":
        self = object.__new__(cls)
        self.ctx = ctx
        self.gens = tuple(ech.basis_polys())
        self.degree_bound = max((g.total_degree() for g in self.gens), default=0)
        return self

    @classmethod
    def zero(cls, ctx: Context) -> "ResIdeal":
        return cls(ctx, [])

    @classmethod
    def unit(cls, ctx: Context) -> "ResIdeal":
        return cls(ctx, [ResPoly.one(ctx)])

    def is_zero(self) -> bool:
        return not self.gens

    def __eq__(self, other: object) -> bool:
        # equality of canonical generator spans, not full ideal equality
        return (
            isinstance(other, ResIdeal)
            and self.ctx == other.ctx
            and self.gens == other.gens
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        inside = ", ".join(str(g) for g in self.gens) or "0"
        return f"ResIdeal({inside})"


def principal_ideal(g: ResPoly) -> ResIdeal:
    return ResIdeal(g.ctx, [g])


def u_single(g: ResPoly) -> ResPoly:
    """Dual-basis component of F_* g along (x_1...x_N)^(p-1).

    Keeps monomials x^a with a = (p-1,...,p-1) mod p componentwise and
    sends them to x^((a-(p-1,...,p-1))/p); everything else dies.  Over F_p
    the coefficient p-th root is the identity.
    """
    ctx = g.ctx
    p = ctx.p
    n = ctx.n_vars
    out: dict[int, int] = {}
    for m, c in g.terms.items():
        packed = 0
        degree = 0
        rest = m
        ok = True
        for i in range(n):
            e = rest & FIELD_MASK
            rest >>= FIELD_BITS
            if e % p != p - 1:
                ok = False
                break
            q = e // p
            degree += q
            packed |= q << (FIELD_BITS * i)
        if ok:
            out[(degree << (FIELD_BITS * n)) | packed] = c
    return ResPoly._raw(ctx, out, _max_exponent_of(ctx, out))


def _u_buckets(ctx: Context, terms: dict[int, int]) -> dict[int, dict[int, int]]:
    """Split a support by shift multiplier.

    Each monomial x^a is selected by exactly one multiplier
    e = (p-1-a) mod p; bucket key is the packed e, bucket value maps the
    u-image monomial x^((a+e)/p) to the coefficient.  Distinct monomials
    in one bucket have distinct images, so no collisions occur.
    """
    p = ctx.p
    n = ctx.n_vars
    shift_n = FIELD_BITS * n
    buckets: dict[int, dict[int, int]] = {}
    for m, c in terms.items():
        rest = m
        e_packed = 0
        e_degree = 0
        q_packed = 0
        q_degree = 0
        for i in range(n):
            a = rest & FIELD_MASK
            rest >>= FIELD_BITS
            e = (p - 1 - a) % p
            q = (a + e) // p
            e_degree += e
            q_degree += q
            e_packed |= e << (FIELD_BITS * i)
            q_packed |= q << (FIELD_BITS * i)
        key = (e_degree << shift_n) | e_packed
        out_m = (q_degree << shift_n) | q_packed
        buckets.setdefault(key, {})[out_m] = c
    return buckets


def u_image(ideal: ResIdeal) -> ResIdeal:
    """Image ideal u(F_* J), echelon-reduced.

    Generated by u(F_*(x^e g)) over generators g and multipliers e in
    {0..p-1}^N; multipliers whose image is zero are skipped via the
    residue-class bucketing above.
    """
    ctx = ideal.ctx
    ech = Echelon(ctx)
    pending = 0
    for g in ideal.gens:
        buckets = _u_buckets(ctx, g.terms)
        pending += len(buckets)
        if pending > ctx.max_generators:
            raise ResourceLimitError(
                f"u-image fan-out exceeded {ctx.max_generators} generators"
            )
        for key in sorted(buckets):
            ech.insert(buckets[key])
    return ResIdeal._from_echelon(ctx, ech)


def ideal_mul_poly(ideal: ResIdeal, g: ResPoly) -> ResIdeal:
    """The ideal generated by h*g for generators h."""
    ideal.ctx.check_same(g.ctx)
    ech = Echelon(ideal.ctx)
    for h in ideal.gens:
        ech.insert((h * g).terms)
    return ResIdeal._from_echelon(ideal.ctx, ech)


def ideal_add(a: ResIdeal, b: ResIdeal) -> ResIdeal:
    a.ctx.check_same(b.ctx)
    ech = Echelon(a.ctx)
    for g in a.gens:
        ech.insert(g.terms)
    for g in b.gens:
        ech.insert(g.terms)
    return ResIdeal._from_echelon(a.ctx, ech)


def ideal_add_principal(a: ResIdeal, g: ResPoly) -> ResIdeal:
    a.ctx.check_same(g.ctx)
    ech = Echelon(a.ctx)
    for h in a.gens:
        ech.insert(h.terms)
    ech.insert(g.terms)
    return ResIdeal._from_echelon(a.ctx, ech)


def _terms_in_frobenius_power(ctx: Context, terms: dict[int, int], e: int) -> bool:
    q = ctx.p ** e
    n = ctx.n_vars
    for m in terms:
        rest = m
        hit = False
        for _ in range(n):
            if rest & FIELD_MASK >= q:
                hit = True
                break
            rest >>= FIELD_BITS
        if not hit:
            return False
    return True


def member_frobenius_power(g: ResPoly, e: int) -> bool:
    """Exact membership of g in (x_1^(p^e), ..., x_N^(p^e)).

    Membership in a monomial ideal is monomial by monomial: true iff every
    monomial of g has some exponent >= p^e.
    """
    if e < 1:
        raise InputError(f"Frobenius power exponent must be >= 1, got {e}")
    return _terms_in_frobenius_power(g.ctx, g.terms, e)


def ideal_in_frobenius_power(ideal: ResIdeal, e: int) -> bool:
    """True iff every generator lies in (x_1^(p^e), ..., x_N^(p^e))."""
    return all(member_frobenius_power(g, e) for g in ideal.gens)
