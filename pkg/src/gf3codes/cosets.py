"""p-cyclotomic cosets modulo n and base-3 digit-vector rotation tests.

A coset is the orbit of a residue under multiplication by the base p.
For n = 3^m - 1 the same orbit structure shows up as cyclic rotation of
the length-m base-3 digit vector, and the two views are implemented
independently so they can serve as mutual oracles.

Residues are plain Python integers throughout, so moduli like 3^773 - 1
cost nothing extra: membership walks are O(orbit length) big-int
multiplications, never an enumeration of Z_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Coset",
    "AdicVector",
    "coset",
    "coset_size_divides_m",
    "same_coset",
    "adic_vector",
    "rotation_equivalent",
]


@dataclass(frozen=True)
class Coset:
    n: int
    rep: int
    members: tuple
    p: int = 3

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def to_json_obj(self, member_cap: int = 10**4) -> dict:
        obj = {"n": self.n, "rep": self.rep, "size": self.size}
        if self.size <= member_cap:
            obj["members"] = list(self.members)
        return obj


def coset(n: int, i: int, p: int = 3) -> Coset:
    """The p-cyclotomic coset of i modulo n: {i * p^s mod n}."""
    if not 0 <= i < n:
        raise ValueError("residue out of range")
    if math.gcd(p, n) != 1:
        raise ValueError(f"base {p} shares a factor with the modulus {n}")
    members = [i]
    x = i * p % n
    while x != i:
        members.append(x)
        x = x * p % n
    return Coset(n=n, rep=min(members), members=tuple(sorted(members)), p=p)


def same_coset(n: int, a: int, b: int, p: int = 3) -> bool:
    """True iff b lies in the p-cyclotomic coset of a (walks one orbit)."""
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError("residue out of range")
    x = a
    while True:
        if x == b:
            return True
        x = x * p % n
        if x == a:
            return False


def coset_size_divides_m(m: int, i: int) -> bool:
    """Coset sizes modulo 3^m - 1 divide m; a property-test hook."""
    return m % coset(3**m - 1, i % (3**m - 1)).size == 0


@dataclass(frozen=True)
class AdicVector:
    """Base-3 digit vector of a residue modulo 3^m - 1.

    Stored little-endian (index j = digit of 3^j); printed big-endian.
    Rotating every digit one index up multiplies the value by 3, because
    3^m wraps to 1 modulo 3^m - 1.
    """

    digits: tuple

    @property
    def m(self) -> int:
        return len(self.digits)

    def value(self) -> int:
        return sum(d * 3**j for j, d in enumerate(self.digits))

    def rotated(self, k: int) -> "AdicVector":
        """Digit vector of value * 3^k mod (3^m - 1)."""
        k %= self.m
        return AdicVector(self.digits[-k:] + self.digits[:-k] if k else self.digits)

    def __str__(self) -> str:
        return "(" + ",".join(str(d) for d in reversed(self.digits)) + ")"


def adic_vector(e: int, m: int) -> AdicVector:
    if not 0 <= e < 3**m - 1:
        raise ValueError("residue out of range for a length-m digit vector")
    digits = []
    for _ in range(m):
        digits.append(e % 3)
        e //= 3
    return AdicVector(tuple(digits))


def rotation_equivalent(a: AdicVector, b: AdicVector):
    """Smallest k with a.rotated(k) == b, or None.

    Non-empty exactly when the underlying residues share a 3-cyclotomic
    coset modulo 3^m - 1.
    """
    if a.m != b.m:
        raise ValueError("digit vectors of different lengths")
    for k in range(a.m):
        if a.rotated(k) == b:
            return k
    return None
