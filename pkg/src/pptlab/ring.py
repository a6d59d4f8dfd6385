"""Exact sparse multivariate polynomial arithmetic over Z/p^2 and F_p.

A monomial x1^e1 * ... * xN^eN is packed into a single int with N+1
64-bit fields, the total degree on top::

    packed = (((deg << 64 | e1) << 64 | e2) ... ) << 64 | eN

Packing this way makes the native int order on packed keys exactly the
graded-lex order (degree first, then x1 > x2 > ... > xN), so leading
monomials are ``max(terms)`` and canonical term sorting is plain integer
sorting.  Multiplying monomials is integer addition, and the Frobenius
substitution x_i -> x_i^p is integer multiplication by p; neither can
carry between fields while every exponent stays below 2**31, which is
enforced at construction and guarded on every product.

A polynomial is a dict mapping packed monomials to nonzero coefficients
in the least non-negative residue system.  ``LiftPoly`` holds
coefficients mod p^2 (classes of elements of W(F_p)[[x]]), ``ResPoly``
holds coefficients mod p (elements of the reduction mod p).  Values are
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import (
    ContextMismatchError,
    ExponentOverflowError,
    InputError,
    NotDivisibleError,
)

FIELD_BITS = 64
FIELD_MASK = (1 << FIELD_BITS) - 1
EXPONENT_LIMIT = 1 << 31

MAX_PRIME = 13
MAX_VARS = 6
MAX_MULTIPLIERS = 20_000  # cap on p**N, keeps Frobenius-root fans bounded


def is_prime(n: int) -> bool:
    """Deterministic primality check by trial division."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Context:
    """The ambient data (p, variable names) every value is interpreted against.

    Also carries the workspace caps used by the ideal engine:
    ``max_workspace_monomials`` bounds the number of distinct monomials an
    echelon workspace may touch, ``max_generators`` bounds generator counts
    fed into a single reduction.
    """

    __slots__ = ("p", "var_names", "max_workspace_monomials", "max_generators")

    def __init__(
        self,
        p: int,
        var_names: Iterable[str],
        *,
        max_workspace_monomials: int = 500_000,
        max_generators: int = 10_000,
    ):
        names = tuple(var_names)
        if not is_prime(p):
            raise InputError(f"p = {p} is not prime")
        if not 2 <= p <= MAX_PRIME:
            raise InputError(f"p = {p} outside supported range 2..{MAX_PRIME}")
        if not 1 <= len(names) <= MAX_VARS:
            raise InputError(f"variable count {len(names)} outside 1..{MAX_VARS}")
        if len(set(names)) != len(names):
            raise InputError(f"variable names must be distinct: {names}")
        for name in names:
            if not name.isidentifier():
                raise InputError(f"invalid variable name {name!r}")
        if p ** len(names) > MAX_MULTIPLIERS:
            raise InputError(
                f"p**N = {p ** len(names)} exceeds the supported cap "
                f"{MAX_MULTIPLIERS}; reduce p or the variable count"
            )
        if max_workspace_monomials < 1 or max_generators < 1:
            raise InputError("workspace caps must be positive")
        self.p = p
        self.var_names = names
        self.max_workspace_monomials = max_workspace_monomials
        self.max_generators = max_generators

    @property
    def n_vars(self) -> int:
        return len(self.var_names)

    @property
    def p_squared(self) -> int:
        return self.p * self.p

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Context)
            and self.p == other.p
            and self.var_names == other.var_names
        )

    def __hash__(self) -> int:
        return hash((self.p, self.var_names))

    def __repr__(self) -> str:
        return f"Context(p={self.p}, vars={','.join(self.var_names)})"

    # -- packed monomial helpers ------------------------------------------

    def encode_monomial(self, exponents: Iterable[int]) -> int:
        """Pack an exponent vector into a single graded-lex-ordered int."""
        exps = tuple(exponents)
        if len(exps) != self.n_vars:
            raise InputError(
                f"expected {self.n_vars} exponents, got {len(exps)}"
            )
        packed = 0
        degree = 0
        for e in exps:
            if e < 0:
                raise InputError("negative exponents are not supported")
            if e >= EXPONENT_LIMIT:
                raise ExponentOverflowError(f"exponent {e} >= 2**31")
            degree += e
            packed = (packed << FIELD_BITS) | e
        return (degree << (FIELD_BITS * self.n_vars)) | packed

    def decode_monomial(self, packed: int) -> tuple[int, ...]:
        exps = []
        for _ in range(self.n_vars):
            exps.append(packed & FIELD_MASK)
            packed >>= FIELD_BITS
        return tuple(reversed(exps))

    def monomial_degree(self, packed: int) -> int:
        return packed >> (FIELD_BITS * self.n_vars)

    def check_same(self, other: "Context") -> None:
        if self != other:
            raise ContextMismatchError(f"cannot mix {self!r} and {other!r}")


def _require_same_ring(a: "Poly", b: "Poly") -> None:
    if type(a) is not type(b):
        raise ContextMismatchError(
            f"cannot mix {type(a).__name__} and {type(b).__name__}"
        )
    a.ctx.check_same(b.ctx)


class Poly:
    """Shared machinery for both coefficient rings; do not instantiate."""

    __slots__ = ("ctx", "terms", "max_exponent")

    def __init__(self, ctx: Context, coeffs: Mapping[tuple[int, ...], int]):
        mod = self._modulus(ctx)
        terms: dict[int, int] = {}
        max_exp = 0
        for exps, c in coeffs.items():
            c %= mod
            if c == 0:
                continue
            terms[ctx.encode_monomial(exps)] = c
            max_exp = max(max_exp, max(exps, default=0))
        self.ctx = ctx
        self.terms = terms
        # conservative per-variable exponent bound, maintained through ops
        self.max_exponent = max_exp

    @classmethod
    def _raw(cls, ctx: Context, terms: dict[int, int], max_exponent: int):
        self = object.__new__(cls)
        self.ctx = ctx
        self.terms = terms
        self.max_exponent = max_exponent
        return self

    @staticmethod
    def _modulus(ctx: Context) -> int:
        raise NotImplementedError

    @property
    def modulus(self) -> int:
        return self._modulus(self.ctx)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx: Context):
        return cls._raw(ctx, {}, 0)

    @classmethod
    def one(cls, ctx: Context):
        return cls.constant(ctx, 1)

    @classmethod
    def constant(cls, ctx: Context, c: int):
        c %= cls._modulus(ctx)
        return cls._raw(ctx, {0: c} if c else {}, 0)

    @classmethod
    def variable(cls, ctx: Context, name: str):
        try:
            i = ctx.var_names.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None
        exps = tuple(1 if j == i else 0 for j in range(ctx.n_vars))
        return cls(ctx, {exps: 1})

    @classmethod
    def monomial(cls, ctx: Context, exponents: Iterable[int], coeff: int = 1):
        return cls(ctx, {tuple(exponents): coeff})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return self.ctx.monomial_degree(max(self.terms))

    def leading_monomial(self) -> int:
        """Packed graded-lex leading monomial; raises on zero."""
        if not self.terms:
            raise InputError("zero polynomial has no leading monomial")
        return max(self.terms)

    def constant_coefficient(self) -> int:
        return self.terms.get(0, 0)

    def coefficient(self, exponents: Iterable[int]) -> int:
        return self.terms.get(self.ctx.encode_monomial(exponents), 0)

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Terms in descending graded-lex order, exponent vectors decoded."""
        dec = self.ctx.decode_monomial
        for m in sorted(self.terms, reverse=True):
            yield dec(m), self.terms[m]

    def terms_by_exponent(self) -> dict[tuple[int, ...], int]:
        return dict(self.items())

    def __eq__(self, other: object) -> bool:
        return (
            type(other) is type(self)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        _require_same_ring(self, other)
        mod = self.modulus
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % mod
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._raw(self.ctx, out, max(self.max_exponent, other.max_exponent))

    def __sub__(self, other):
        _require_same_ring(self, other)
        mod = self.modulus
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) - c) % mod
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._raw(self.ctx, out, max(self.max_exponent, other.max_exponent))

    def __neg__(self):
        mod = self.modulus
        return self._raw(
            self.ctx,
            {m: mod - c for m, c in self.terms.items()},
            self.max_exponent,
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        _require_same_ring(self, other)
        if not self.terms or not other.terms:
            return self.zero(self.ctx)
        bound = self.max_exponent + other.max_exponent
        if bound >= EXPONENT_LIMIT:
            raise ExponentOverflowError(
                f"product exponents may reach {bound} >= 2**31"
            )
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        mod = self.modulus
        out: dict[int, int] = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
        out = {m: v for m, c in out.items() if (v := c % mod)}
        return self._raw(self.ctx, out, bound)

    __rmul__ = __mul__

    def scale(self, c: int):
        c %= self.modulus
        if c == 0:
            return self.zero(self.ctx)
        if c == 1:
            return self
        mod = self.modulus
        out = {m: v for m, old in self.terms.items() if (v := old * c % mod)}
        return self._raw(self.ctx, out, self.max_exponent)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError(f"exponent must be a non-negative integer, got {k}")
        result = self.one(self.ctx)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({render(self)!r}, p={self.ctx.p})"


class LiftPoly(Poly):
    """Sparse polynomial with coefficients in Z/p^2.

    Represents the class of f in W(F_p)[[x_1..x_N]] mod p^2, which is all
    the sequence machinery ever needs to see of f.
    """

    __slots__ = ()

    @staticmethod
    def _modulus(ctx: Context) -> int:
        return ctx.p * ctx.p


class ResPoly(Poly):
    """Sparse polynomial over F_p (an element of the reduction mod p)."""

    __slots__ = ()

    @staticmethod
    def _modulus(ctx: Context) -> int:
        return ctx.p


def frobenius_substitute(a: LiftPoly) -> LiftPoly:
    """Apply the Frobenius lift x_i -> x_i^p; coefficients are unchanged.

    On packed monomials this is multiplication by p (every field scales,
    including the degree field).
    """
    if not isinstance(a, LiftPoly):
        raise ContextMismatchError("frobenius_substitute expects a LiftPoly")
    p = a.ctx.p
    if a.max_exponent * p >= EXPONENT_LIMIT:
        raise ExponentOverflowError("Frobenius image exceeds exponent range")
    return LiftPoly._raw(a.ctx, {m * p: c for m, c in a.terms.items()}, a.max_exponent * p)


def project_mod_p(a: LiftPoly) -> ResPoly:
    """Coefficientwise reduction mod p, dropping vanishing terms."""
    if not isinstance(a, LiftPoly):
        raise ContextMismatchError("project_mod_p expects a LiftPoly")
    p = a.ctx.p
    out = {m: v for m, c in a.terms.items() if (v := c % p)}
    return ResPoly._raw(a.ctx, out, a.max_exponent)


def exact_div_p(a: LiftPoly) -> ResPoly:
    """The unique b over F_p with p * (lift of b) = a in Z/p^2.

    Every coefficient of ``a`` must be divisible by p; a violation means
    an internal arithmetic bug or invalid input, reported as
    ``NotDivisibleError``.
    """
    if not isinstance(a, LiftPoly):
        raise ContextMismatchError("exact_div_p expects a LiftPoly")
    p = a.ctx.p
    out = {}
    for m, c in a.terms.items():
        if c % p:
            raise NotDivisibleError(
                f"coefficient {c} of {a.ctx.decode_monomial(m)} is not divisible by {p}"
            )
        out[m] = c // p
    return ResPoly._raw(a.ctx, out, a.max_exponent)


def lift_of(a: ResPoly) -> LiftPoly:
    """The tautological lift to Z/p^2 with the same least residues."""
    if not isinstance(a, ResPoly):
        raise ContextMismatchError("lift_of expects a ResPoly")
    return LiftPoly._raw(a.ctx, dict(a.terms), a.max_exponent)


def render(a: Poly) -> str:
    """Canonical text form: descending graded-lex terms, least non-negative
    coefficients, ``^`` for powers and explicit ``*`` between factors, so the
    output re-parses to the same polynomial."""
    if not a.terms:
        return "0"
    names = a.ctx.var_names
    parts = []
    for exps, c in a.items():
        factors = []
        if c != 1 or not any(exps):
            factors.append(str(c))
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)
