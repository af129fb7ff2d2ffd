"""Dense univariate polynomial arithmetic and factorization over GF(3).

Coefficients are stored little-endian (index i holds the coefficient of
x^i) in a trimmed, read-only numpy int64 array with values in {0, 1, 2}.
The zero polynomial is the empty array and reports degree -1 (standing in
for the conventional "minus infinity").  All arithmetic is exact.

Two things make the large instances cheap:

* cubing is the Frobenius map of GF(3)[x], so P(x)^3 = P(x^3) and a cube
  costs one coefficient spread instead of two multiplications;
* ``ModGF3`` precomputes a table of x^j mod M for all j up to 3*deg(M),
  turning every reduction into a single matrix-vector product.

Together these let x^(3^k) mod M be computed as k table-backed spreads,
which is the workhorse behind root counting in GF(3^m), irreducibility
testing and distinct-degree factorization.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PolyF3",
    "FactorMultiset",
    "ModGF3",
    "gcd",
    "binomial_power",
    "derivative",
    "pow_mod",
    "frobenius_power",
    "is_irreducible",
    "count_roots_in_extension",
    "squarefree_decompose",
    "factor",
    "parse_poly",
]

_FFT_THRESHOLD = 256  # above this output size, convolve via rfft
_TABLE_DEGREE_CAP = 3000  # above this, ModGF3 reduces by Newton inverse, not table


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return c[:0]
    return c[: nz[-1] + 1]


def _conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer convolution; FFT path for large operands.

    Coefficient values stay <= 4 * min(len(a), len(b)), far inside the
    float64 exact-integer range, so rounding the FFT result is exact.
    """
    out_len = a.size + b.size - 1
    if out_len < _FFT_THRESHOLD:
        return np.convolve(a, b)
    n = 1 << (out_len - 1).bit_length()
    fa = np.fft.rfft(a.astype(np.float64), n)
    fb = np.fft.rfft(b.astype(np.float64), n)
    prod = np.fft.irfft(fa * fb, n)[:out_len]
    return np.rint(prod).astype(np.int64)


class PolyF3:
    """Immutable dense polynomial over GF(3)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        c = np.asarray(coeffs, dtype=np.int64) % 3
        c = _trim(np.ascontiguousarray(c)).copy()
        c.flags.writeable = False
        self._c = c

    # -- constructors ------------------------------------------------

    @classmethod
    def _raw(cls, trimmed: np.ndarray) -> "PolyF3":
        p = cls.__new__(cls)
        trimmed = np.ascontiguousarray(trimmed)
        trimmed.flags.writeable = False
        p._c = trimmed
        return p

    @classmethod
    def zero(cls) -> "PolyF3":
        return cls(())

    @classmethod
    def one(cls) -> "PolyF3":
        return cls((1,))

    @classmethod
    def x(cls) -> "PolyF3":
        return cls((0, 1))

    @classmethod
    def monomial(cls, deg: int, coeff: int = 1) -> "PolyF3":
        if coeff % 3 == 0:
            return cls.zero()
        c = np.zeros(deg + 1, dtype=np.int64)
        c[deg] = coeff % 3
        return cls._raw(c)

    @classmethod
    def from_text(cls, text: str) -> "PolyF3":
        return parse_poly(text)

    # -- basic views -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self._c.size - 1

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only little-endian coefficient array."""
        return self._c

    def residues(self) -> list:
        """Machine form: plain list of residues, constant term first."""
        return [int(v) for v in self._c]

    def __bool__(self) -> bool:
        return self._c.size > 0

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, i: int) -> int:
        return int(self._c[i]) if 0 <= i < self._c.size else 0

    @property
    def leading(self) -> int:
        return int(self._c[-1]) if self._c.size else 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def monic(self) -> "PolyF3":
        if not self or self.leading == 1:
            return self
        return self._raw((self._c * 2) % 3)  # 2 is its own inverse in GF(3)

    # -- ring operations ---------------------------------------------

    def __add__(self, other: "PolyF3") -> "PolyF3":
        a, b = self._c, other._c
        if a.size < b.size:
            a, b = b, a
        out = a.copy()
        out[: b.size] = (out[: b.size] + b) % 3
        return self._raw(_trim(out))

    def __sub__(self, other: "PolyF3") -> "PolyF3":
        n = max(self._c.size, other._c.size)
        out = np.zeros(n, dtype=np.int64)
        out[: self._c.size] = self._c
        out[: other._c.size] -= other._c
        return self._raw(_trim(out % 3))

    def __neg__(self) -> "PolyF3":
        return self._raw((self._c * 2) % 3)

    def __mul__(self, other: "PolyF3") -> "PolyF3":
        if not self or not other:
            return self.zero()
        return self._raw(_trim(_conv(self._c, other._c) % 3))

    def scale(self, c: int) -> "PolyF3":
        c %= 3
        if c == 0:
            return self.zero()
        if c == 1:
            return self
        return self._raw((self._c * 2) % 3)

    def shift(self, k: int) -> "PolyF3":
        """Multiply by x^k."""
        if not self or k == 0:
            return self
        out = np.zeros(self._c.size + k, dtype=np.int64)
        out[k:] = self._c
        return self._raw(out)

    def __pow__(self, e: int) -> "PolyF3":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "PolyF3"):
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.degree < other.degree:
            return self.zero(), self
        rem = self._c.copy()
        db = other.degree
        binv = 1 if other.leading == 1 else 2
        b = other._c
        quo = np.zeros(self.degree - db + 1, dtype=np.int64)
        for i in range(self.degree - db, -1, -1):
            q = (rem[i + db] * binv) % 3
            if q:
                quo[i] = q
                rem[i : i + db + 1] = (rem[i : i + db + 1] - q * b) % 3
        return self._raw(_trim(quo)), self._raw(_trim(rem[:db]))

    def __floordiv__(self, other: "PolyF3") -> "PolyF3":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyF3") -> "PolyF3":
        return divmod(self, other)[1]

    def derivative(self) -> "PolyF3":
        """Formal derivative; kills every x^(3k) term in characteristic 3."""
        if self._c.size <= 1:
            return self.zero()
        idx = np.arange(1, self._c.size, dtype=np.int64)
        return self._raw(_trim((self._c[1:] * idx) % 3))

    def eval_f3(self, a: int) -> int:
        """Evaluate at a point of the prime field GF(3)."""
        a %= 3
        acc = 0
        for c in self._c[::-1]:
            acc = (acc * a + int(c)) % 3
        return acc

    # -- comparison / canonical order ---------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyF3):
            return NotImplemented
        return self._c.size == other._c.size and bool(np.all(self._c == other._c))

    def __hash__(self) -> int:
        return hash(self._c.tobytes())

    def sort_key(self):
        """Canonical order: degree, then coefficients from the constant up."""
        return (self.degree, tuple(int(v) for v in self._c))

    # -- text form -----------------------------------------------------

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = int(self._c[i])
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else "2x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"2x^{i}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"PolyF3({str(self)!r})"


_TERM_RE = re.compile(r"([0-9]*)\s*(x)?\s*(?:\^\s*([0-9]+))?$")


def parse_poly(text: str) -> PolyF3:
    """Parse the human text form, e.g. "x^6+x^4+2x+1" or "x^3-1".

    Accepts +, - and arbitrary integer coefficients; the printer only ever
    emits + with coefficients in {1, 2}, so print -> parse round-trips.
    """
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return PolyF3.zero()
    out: dict = {}
    pos = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    while pos <= len(s):
        nxt = len(s)
        for j in range(pos, len(s)):
            if s[j] in "+-":
                nxt = j
                break
        term = s[pos:nxt]
        m = _TERM_RE.fullmatch(term)
        if not m or (not m.group(1) and not m.group(2)):
            raise ValueError(f"bad polynomial term {term!r} in {text!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            if m.group(3) is not None:
                raise ValueError(f"bad polynomial term {term!r} in {text!r}")
            exp = 0
        else:
            exp = int(m.group(3)) if m.group(3) else 1
        out[exp] = out.get(exp, 0) + sign * coeff
        if nxt == len(s):
            break
        sign = -1 if s[nxt] == "-" else 1
        pos = nxt + 1
    c = np.zeros(max(out) + 1, dtype=np.int64)
    for e, v in out.items():
        c[e] = v % 3
    return PolyF3._raw(_trim(c))


def gcd(a: PolyF3, b: PolyF3) -> PolyF3:
    """Monic greatest common divisor."""
    if not a and not b:
        raise ValueError("gcd of two zero polynomials")
    ca, cb = a._c, b._c
    while cb.size:
        ca, cb = cb, _poly_mod_arr(ca, cb)
    if ca[-1] != 1:
        ca = (ca * 2) % 3
    return PolyF3._raw(np.ascontiguousarray(ca))


def _poly_mod_arr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Remainder of a by b on raw trimmed arrays."""
    if a.size < b.size:
        return a
    rem = a.copy()
    db = b.size - 1
    binv = 1 if b[-1] == 1 else 2
    for i in range(a.size - 1 - db, -1, -1):
        q = (rem[i + db] * binv) % 3
        if q:
            rem[i : i + db + 1] = (rem[i : i + db + 1] - q * b) % 3
    return _trim(rem[:db])


_LUCAS_C = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (2, 0): 1, (2, 1): 2, (2, 2): 1}


def binomial_power(e: int) -> PolyF3:
    """(x+1)^e over GF(3), built from the base-3 digits of e.

    The coefficient of x^i is the digitwise product of binomials
    C(e_j, i_j) mod 3, so the support has exactly prod(e_j + 1) terms.
    """
    if e < 0:
        raise ValueError("negative exponent")
    digits = []
    v = e
    while v:
        digits.append(v % 3)
        v //= 3
    if not digits:
        return PolyF3.one()
    c = np.zeros(e + 1, dtype=np.int64)
    choices = [[(i, _LUCAS_C[(d, i)]) for i in range(d + 1)] for d in digits]
    for combo in itertools.product(*choices):
        idx = 0
        coeff = 1
        for j, (i_j, c_j) in enumerate(combo):
            idx += i_j * 3**j
            coeff = (coeff * c_j) % 3
        c[idx] = coeff
    return PolyF3._raw(_trim(c))


def derivative(p: PolyF3) -> PolyF3:
    return p.derivative()


def _series_inv(c: np.ndarray, L: int) -> np.ndarray:
    """Inverse of the power series c (c[0] invertible) mod x^L over GF(3)."""
    inv = np.array([1 if c[0] == 1 else 2], dtype=np.int64)
    k = 1
    while k < L:
        k = min(2 * k, L)
        prod = _conv(c[: min(k, c.size)], inv)[:k] % 3
        corr = (-prod) % 3
        corr[0] = (corr[0] + 2) % 3  # 2 - c*inv
        inv = _conv(inv, corr)[:k] % 3
    return inv


class ModGF3:
    """Reduction context modulo a fixed polynomial of degree >= 1.

    Handles any array of degree up to 3*(deg-1) — enough for products and
    Frobenius cubes of residues.  Small moduli precompute x^j mod M for
    every such j, making each reduction one float32 matrix-vector multiply
    (sums stay below 2^24, hence exact).  Large moduli switch to division
    via a Newton-inverted reversed modulus: two FFT multiplications per
    reduction, linear memory.
    """

    def __init__(self, modulus: PolyF3):
        if modulus.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        m = modulus.monic()
        self.modulus = m
        d = m.degree
        self.deg = d
        self._max_rows = max(2 * d - 2, 1)
        if d <= _TABLE_DEGREE_CAP:
            table = np.zeros((self._max_rows, d), dtype=np.int64)
            base = (-m.coeffs[:d]) % 3  # x^d mod M
            table[0] = base
            for j in range(1, self._max_rows):
                prev = table[j - 1]
                row = np.zeros(d, dtype=np.int64)
                row[1:] = prev[: d - 1]
                top = prev[d - 1]
                if top:
                    row = (row + top * base) % 3
                table[j] = row
            self._table_f32 = table.astype(np.float32)
        else:
            self._table_f32 = None
            self._rev_inv = _series_inv(m.coeffs[::-1], self._max_rows)

    def reduce_arr(self, c: np.ndarray) -> np.ndarray:
        """Reduce a little-endian coefficient array of degree <= 3*(deg-1)."""
        d = self.deg
        if c.size <= d:
            return _trim(c % 3)
        if c.size - d > self._max_rows:
            raise ValueError("array too long for single-shot reduction")
        if self._table_f32 is not None:
            high = c[d:]
            folded = np.dot(high.astype(np.float32), self._table_f32[: high.size])
            out = (c[:d] + np.rint(folded).astype(np.int64)) % 3
            return _trim(out)
        s = c.size - 1 - d  # quotient degree
        qrev = _conv(c[::-1][: s + 1], self._rev_inv[: s + 1])[: s + 1] % 3
        low = _conv(qrev[::-1], self.modulus.coeffs)[:d] % 3
        return _trim((c[:d] - low) % 3)

    def reduce(self, p: PolyF3) -> PolyF3:
        if p.degree < self.deg:
            return p
        if p.degree <= 3 * (self.deg - 1):
            return PolyF3._raw(self.reduce_arr(p.coeffs.astype(np.int64)))
        return p % self.modulus

    def mul(self, a: PolyF3, b: PolyF3) -> PolyF3:
        if not a or not b:
            return PolyF3.zero()
        return PolyF3._raw(self.reduce_arr(_conv(a.coeffs, b.coeffs) % 3))

    def sqr(self, a: PolyF3) -> PolyF3:
        return self.mul(a, a)

    def cube(self, a: PolyF3) -> PolyF3:
        """Frobenius cube: spread coefficients to x^(3i), then reduce once."""
        if not a:
            return a
        c = np.zeros(3 * a.degree + 1, dtype=np.int64)
        c[::3] = a.coeffs
        return PolyF3._raw(self.reduce_arr(c))

    def pow(self, base: PolyF3, e: int) -> PolyF3:
        if e < 0:
            raise ValueError("negative exponent")
        result = PolyF3.one()
        b = self.reduce(base)
        while e:
            if e & 1:
                result = self.mul(result, b)
            b = self.sqr(b)
            e >>= 1
        return self.reduce(result)

    def frobenius(self, p: PolyF3, k: int, progress=None) -> PolyF3:
        """p^(3^k) mod M via k successive cubes; never materializes 3^k."""
        h = self.reduce(p)
        for i in range(k):
            h = self.cube(h)
            if progress is not None:
                progress(i + 1, k)
        return h


def pow_mod(base: PolyF3, exponent: int, modulus: PolyF3) -> PolyF3:
    """base^exponent mod modulus for a plain integer exponent >= 0."""
    return ModGF3(modulus).pow(base, exponent)


def frobenius_power(p: PolyF3, modulus: PolyF3, k: int) -> PolyF3:
    """p^(3^k) mod modulus, as k cubing steps."""
    return ModGF3(modulus).frobenius(p, k)


def is_irreducible(p: PolyF3) -> bool:
    """Rabin irreducibility test over GF(3).

    p of degree d is irreducible iff x^(3^d) = x mod p and, for every prime
    r dividing d, gcd(x^(3^(d/r)) - x, p) is constant.
    """
    if p.degree < 1:
        raise ValueError("constant polynomial")
    if p.degree == 1:
        return True
    f = p.monic()
    d = f.degree
    checkpoints = {d // r for r in _prime_factors(d)}
    ctx = ModGF3(f)
    x = PolyF3.x()
    h = ctx.reduce(x)
    for k in range(1, d + 1):
        h = ctx.cube(h)
        if k in checkpoints:
            g = gcd(f, h - x) if h != x else f
            if g.degree != 0:
                return False
    return h == ctx.reduce(x)


def _prime_factors(n: int) -> list:
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


def count_roots_in_extension(p: PolyF3, m: int, progress=None) -> int:
    """Number of distinct roots of p lying in GF(3^m).

    Computed as deg gcd(p, x^(3^m) - x) without ever touching the field:
    the Frobenius chain x -> x^3 -> ... runs modulo p itself.
    """
    if p.degree < 1:
        raise ValueError("constant polynomial")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    f = p.monic()
    ctx = ModGF3(f)
    x = PolyF3.x()
    h = ctx.frobenius(x, m, progress=progress)
    diff = h - ctx.reduce(x)
    if not diff:
        return f.degree
    return gcd(f, diff).degree


@dataclass(frozen=True)
class FactorMultiset:
    """A scalar unit in {1, 2} together with monic factors and multiplicities.

    Factors are kept in canonical order (degree ascending, then coefficient
    sequence from the constant term up), so two multisets are equal iff
    their string forms are byte-identical.
    """

    unit: int
    factors: tuple  # of (PolyF3, int)

    @staticmethod
    def make(unit: int, parts) -> "FactorMultiset":
        merged: dict = {}
        for f, k in parts:
            merged[f] = merged.get(f, 0) + k
        ordered = tuple(sorted(merged.items(), key=lambda fk: fk[0].sort_key()))
        return FactorMultiset(unit=unit % 3, factors=ordered)

    def product(self) -> PolyF3:
        out = PolyF3((self.unit,))
        for f, k in self.factors:
            out = out * f**k
        return out

    def multiplicities(self) -> dict:
        return {f: k for f, k in self.factors}

    def degrees(self) -> list:
        return sorted(f.degree for f, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return str(self.unit)
        parts = [] if self.unit == 1 else [str(self.unit)]
        for f, k in self.factors:
            parts.append(f"({f})" if k == 1 else f"({f})^{k}")
        return "*".join(parts)

    def to_json_obj(self) -> dict:
        return {
            "unit": self.unit,
            "factors": [
                {"poly": f.residues(), "multiplicity": k} for f, k in self.factors
            ],
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "FactorMultiset":
        parts = [(PolyF3(f["poly"]), int(f["multiplicity"])) for f in obj["factors"]]
        return FactorMultiset.make(int(obj["unit"]), parts)


def _cube_root(p: PolyF3) -> PolyF3:
    """Inverse of the Frobenius cube on GF(3)[x]: P(x) = R(x)^3 -> R."""
    c = p.coeffs
    if np.any(c[np.arange(c.size) % 3 != 0]):
        raise ValueError("polynomial is not a cube")
    return PolyF3._raw(np.ascontiguousarray(c[::3]))


def squarefree_decompose(p: PolyF3) -> FactorMultiset:
    """Squarefree decomposition; parts are squarefree, not yet irreducible.

    Characteristic-3 wrinkle: when the derivative vanishes the polynomial
    is a perfect cube (coefficients are Frobenius-fixed), so we descend to
    its cube root and triple the pending multiplicity.
    """
    if not p:
        raise ValueError("zero polynomial")
    unit = p.leading
    f = p.monic()
    parts = []
    e = 1
    while f.degree > 0:
        fp = f.derivative()
        if not fp:
            f = _cube_root(f)
            e *= 3
            continue
        g = gcd(f, fp)
        w = f // g
        i = 1
        while w.degree > 0:
            y = gcd(w, g)
            z = w // y
            if z.degree > 0:
                parts.append((z, i * e))
            w = y
            g = g // y
            i += 1
        f = g
    return FactorMultiset.make(unit, parts)


def _distinct_degree(f: PolyF3) -> list:
    """Split a squarefree monic f into (product-of-degree-d factors, d)."""
    out = []
    x = PolyF3.x()
    ctx = ModGF3(f)
    h = ctx.reduce(x)
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = ctx.cube(h)
        g = gcd(f, h - ctx.reduce(x)) if h != ctx.reduce(x) else f
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            if f.degree == 0:
                return out
            ctx = ModGF3(f)
            h = ctx.reduce(h)
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree(f: PolyF3, d: int, rng: random.Random) -> list:
    """Cantor-Zassenhaus split of f into its irreducible degree-d factors."""
    if f.degree == d:
        return [f]
    exponent = (3**d - 1) // 2
    stack = [f]
    done = []
    while stack:
        g = stack.pop()
        if g.degree == d:
            done.append(g)
            continue
        ctx = ModGF3(g)
        while True:
            a = PolyF3([rng.randrange(3) for _ in range(g.degree)])
            if a.degree < 1:
                continue
            c = gcd(g, a)
            if 0 < c.degree < g.degree:
                split = c
                break
            b = ctx.pow(a, exponent) - PolyF3.one()
            if not b:
                continue
            c = gcd(g, b)
            if 0 < c.degree < g.degree:
                split = c
                break
        stack.append(split)
        stack.append(g // split)
    return done


def factor(p: PolyF3, seed: int = 0) -> FactorMultiset:
    """Complete factorization into monic irreducibles over GF(3).

    Squarefree decomposition, then distinct-degree, then seeded
    Cantor-Zassenhaus equal-degree splitting; deterministic for a fixed
    seed, and the canonical factor order makes the result seed-independent
    in content.
    """
    if p.degree < 1:
        raise ValueError("cannot factor a constant polynomial")
    rng = random.Random(seed)
    sqf = squarefree_decompose(p)
    parts = []
    for part, mult in sqf.factors:
        for bucket, d in _distinct_degree(part):
            for irr in _equal_degree(bucket, d, rng):
                parts.append((irr, mult))
    return FactorMultiset.make(sqf.unit, parts)
