"""Arithmetic in GF(3^m) as GF(3)[x] modulo a canonical irreducible.

``make_field(m)`` is deterministic: the modulus is the first monic
irreducible of degree m when coefficient sequences are compared
ascending from the constant term.  Any witness element reported by the
package is therefore reproducible from m alone.  m = 1 uses the
degree-1 placeholder modulus x, giving the prime field itself.

Contexts above ``ENUM_CAP`` are fine for arithmetic but refuse whole-field
enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .poly import ModGF3, PolyF3, is_irreducible

__all__ = [
    "ENUM_CAP",
    "FieldCtx",
    "FieldElem",
    "make_field",
    "nth_root",
    "enumerate_field",
    "eval_poly",
    "find_generator",
]

ENUM_CAP = 16  # 3^16 ~ 43M elements; exhaustive strategies stay under a minute


@dataclass(frozen=True)
class FieldCtx:
    m: int
    modulus: PolyF3
    reducer: ModGF3 = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return 3**self.m

    @property
    def group_order(self) -> int:
        return 3**self.m - 1

    def elem(self, rep: PolyF3) -> "FieldElem":
        return FieldElem(self, self.reducer.reduce(rep))

    def scalar(self, c: int) -> "FieldElem":
        return FieldElem(self, PolyF3([c % 3]) % self.modulus)

    def zero(self) -> "FieldElem":
        return FieldElem(self, PolyF3.zero())

    def one(self) -> "FieldElem":
        return self.scalar(1)

    def from_packed(self, value: int) -> "FieldElem":
        """Element from the base-3 packed integer in [0, 3^m)."""
        if not 0 <= value < self.order:
            raise ValueError("packed value out of range")
        digits = []
        while value:
            digits.append(value % 3)
            value //= 3
        return FieldElem(self, PolyF3(digits))

    def __str__(self) -> str:
        return f"GF(3^{self.m}) mod {self.modulus}"


_FIELD_CACHE: dict = {}


def make_field(m: int) -> FieldCtx:
    """Deterministic field context for GF(3^m)."""
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    ctx = _FIELD_CACHE.get(m)
    if ctx is None:
        mod = _canonical_irreducible(m)
        ctx = FieldCtx(m=m, modulus=mod, reducer=ModGF3(mod))
        _FIELD_CACHE[m] = ctx
    return ctx


def _canonical_irreducible(m: int) -> PolyF3:
    if m == 1:
        return PolyF3.x()
    # ascending lex from the constant term; c0 = 0 means x divides, so the
    # whole leading block is skipped, and linear-root candidates are
    # rejected by evaluation before the full irreducibility test
    for c0 in (1, 2):
        for rest in itertools.product(range(3), repeat=m - 1):
            cand = PolyF3([c0, *rest, 1])
            if cand.eval_f3(1) == 0 or cand.eval_f3(2) == 0:
                continue
            if is_irreducible(cand):
                return cand
    raise AssertionError("no irreducible found (impossible)")


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    rep: PolyF3

    def _join(self, other: "FieldElem") -> None:
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ValueError("elements from different field contexts")

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._join(other)
        return FieldElem(self.ctx, self.rep + other.rep)

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._join(other)
        return FieldElem(self.ctx, self.rep - other.rep)

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.ctx, -self.rep)

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._join(other)
        return FieldElem(self.ctx, self.ctx.reducer.mul(self.rep, other.rep))

    def __pow__(self, e: int) -> "FieldElem":
        if e < 0:
            return self.inv() ** (-e)
        if not self:
            return self.ctx.one() if e == 0 else self
        return FieldElem(self.ctx, self.ctx.reducer.pow(self.rep, e))

    def pow_unit(self, e: int) -> "FieldElem":
        """Power with the exponent reduced in the unit group (self != 0)."""
        if not self:
            raise ZeroDivisionError("0 is not in the unit group")
        return self ** (e % self.ctx.group_order)

    def inv(self) -> "FieldElem":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        g, s = _half_xgcd(self.rep, self.ctx.modulus)
        assert g.degree == 0
        return FieldElem(self.ctx, self.ctx.reducer.reduce(s.scale(g.leading)))

    def packed(self) -> int:
        """Base-3 packed integer of the representative."""
        return sum(int(c) * 3**i for i, c in enumerate(self.rep.coeffs))

    def __str__(self) -> str:
        return str(self.rep)


def _half_xgcd(a: PolyF3, b: PolyF3):
    """g = gcd(a, b) and s with s*a = g mod b (b the field modulus)."""
    r0, r1 = a, b
    s0, s1 = PolyF3.one(), PolyF3.zero()
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    # scale below turns g monic via leading==its own inverse trick (1 or 2)
    return r0, s0


def nth_root(t: FieldElem, nexp: int) -> FieldElem:
    """The beta with beta^nexp = t, valid when gcd(nexp, 3^m - 1) = 1.

    Computed as t^r with r the modular inverse of nexp in the unit-group
    order; no discrete logarithms involved.
    """
    if not t:
        raise ValueError("nth_root of zero")
    n = t.ctx.group_order
    try:
        r = pow(nexp, -1, n)
    except ValueError:
        raise ValueError(f"gcd({nexp}, {n}) != 1; root not unique") from None
    return t**r


def enumerate_field(ctx: FieldCtx):
    """All 3^m elements, packed order 0, 1, 2, x, x+1, ..."""
    if ctx.m > ENUM_CAP:
        raise ValueError(f"enumeration capped at m <= {ENUM_CAP}")
    for v in range(ctx.order):
        yield ctx.from_packed(v)


def eval_poly(P: PolyF3, x: FieldElem) -> FieldElem:
    """Horner evaluation of an F3[x] polynomial at a field point."""
    acc = x.ctx.zero()
    for c in P.coeffs[::-1]:
        acc = acc * x + x.ctx.scalar(int(c))
    return acc


def _factor_int(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_generator(ctx: FieldCtx) -> FieldElem:
    """First unit-group generator in packed order (diagnostic helper)."""
    n = ctx.group_order
    if n == 1:
        return ctx.one()
    primes = _factor_int(n)
    for v in range(2, ctx.order):
        cand = ctx.from_packed(v)
        if all(cand ** (n // p) != ctx.one() for p in primes):
            return cand
    raise AssertionError("no generator found (impossible)")
