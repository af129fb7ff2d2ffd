"""The three-condition optimality criterion, identity suite, and scans.

For e even with e outside the coset of 1 and a full-size coset of its
own, the code C_(1,e) has parameters [3^m-1, 3^m-1-2m, 4] exactly when

  Q1: e is even,
  Q2: (x+1)^e + x^e + 1 = 0 has the unique solution x = 1 in GF(3^m),
  Q3: (x+1)^e - x^e - 1 = 0 has the unique solution x = 0 in GF(3^m).

Root counting runs under two interchangeable strategies — exhaustive
evaluation over the whole field (table-driven, m <= 16) and distinct-root
counting of the degree-~e polynomial itself via gcd with x^(3^m) - x —
which double-check each other on overlapping ranges.

The identity suite rebuilds, from first principles, the four combined
polynomials whose factorizations justify Q2/Q3 for the e = 3^h + 13
family, and compares both the expanded forms and the irreducible-factor
multisets against fixtures.  ``reproduce_counterexample`` runs the
m = 773 disproof: the Q3 polynomial for e = 2200 has at least 773 roots
in GF(3^773).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

import numpy as np

from .cosets import coset, same_coset
from .field import ENUM_CAP, make_field
from .poly import (
    FactorMultiset,
    PolyF3,
    binomial_power,
    count_roots_in_extension,
    factor,
    is_irreducible,
)
from .tables import get_tables

__all__ = [
    "GCD_DEGREE_CAP",
    "RootCondition",
    "OptimalityVerdict",
    "IdentityCase",
    "IdentityReport",
    "CounterexampleReport",
    "IDENTITY_CASES",
    "SCAN_FAMILIES",
    "q2_poly",
    "q3_poly",
    "check_q1",
    "check_q2",
    "check_q3",
    "check_optimality",
    "h13_hypothesis",
    "coset_power_hypothesis",
    "verify_identity",
    "reproduce_counterexample",
    "scan",
]

GCD_DEGREE_CAP = 10**5


def _tables(m: int):
    return get_tables(make_field(m))


def _fixture(name: str) -> dict:
    path = resources.files(__package__) / "fixtures" / name
    return json.loads(path.read_text())


# --------------------------------------------------------------- Q conditions


def q2_poly(e: int) -> PolyF3:
    """(x+1)^e + x^e + 1 as a dense polynomial."""
    return binomial_power(e) + PolyF3.monomial(e) + PolyF3.one()


def q3_poly(e: int) -> PolyF3:
    """(x+1)^e - x^e - 1; its leading terms cancel, so degree < e."""
    return binomial_power(e) - PolyF3.monomial(e) - PolyF3.one()


def check_q1(e: int) -> bool:
    if e < 1:
        raise ValueError("exponent must be >= 1")
    return e % 2 == 0


@dataclass(frozen=True)
class RootCondition:
    """Root count of one of the two criterion equations over GF(3^m)."""

    holds: bool
    root_count: int
    designated_root_ok: bool
    strategy: str
    extra_root: int | None = None  # packed value of a second root, if found
    extra_root_rep: str | None = None

    def to_json_obj(self) -> dict:
        obj = {
            "holds": self.holds,
            "root_count": self.root_count,
            "designated_root_ok": self.designated_root_ok,
            "strategy": self.strategy,
        }
        if self.extra_root is not None:
            obj["extra_root"] = {"packed": self.extra_root, "rep": self.extra_root_rep}
        return obj


def pick_strategy(m: int, e: int, strategy: str = "auto") -> str:
    if strategy == "auto":
        strategy = "exhaustive" if m <= ENUM_CAP else "gcd"
    if strategy == "exhaustive":
        if m > ENUM_CAP:
            raise ValueError(f"exhaustive strategy capped at m <= {ENUM_CAP}")
    elif strategy == "gcd":
        if e > GCD_DEGREE_CAP:
            raise ValueError(f"gcd strategy capped at e <= {GCD_DEGREE_CAP}")
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return strategy


def _root_condition_exhaustive(m, e, sign, const, designated) -> RootCondition:
    tab = _tables(m)
    v = tab.values()
    xe = tab.pow_all(e)
    x1e = xe[tab.plus_one(v)]  # (x+1)^e via the power table at shifted index
    mask = tab.zero_mask_linear_combo([(1, x1e), (sign, xe)], const)
    count = int(mask.sum())
    designated_ok = bool(mask[designated])
    holds = count == 1 and designated_ok
    extra = None
    if count > (1 if designated_ok else 0):
        others = np.flatnonzero(mask)
        others = others[others != designated]
        extra = int(others[0])
    ctx = make_field(m)
    return RootCondition(
        holds=holds,
        root_count=count,
        designated_root_ok=designated_ok,
        strategy="exhaustive",
        extra_root=extra,
        extra_root_rep=str(ctx.from_packed(extra).rep) if extra is not None else None,
    )


def _root_condition_gcd(m, e, poly, designated_value) -> RootCondition:
    count = count_roots_in_extension(poly, m)
    designated_ok = poly.eval_f3(designated_value) == 0
    return RootCondition(
        holds=count == 1 and designated_ok,
        root_count=count,
        designated_root_ok=designated_ok,
        strategy="gcd",
    )


def check_q2(m: int, e: int, strategy: str = "auto") -> RootCondition:
    """Does (x+1)^e + x^e + 1 = 0 have x = 1 as its only root in GF(3^m)?"""
    strategy = pick_strategy(m, e, strategy)
    if strategy == "exhaustive":
        return _root_condition_exhaustive(m, e, sign=+1, const=1, designated=1)
    return _root_condition_gcd(m, e, q2_poly(e), designated_value=1)


def check_q3(m: int, e: int, strategy: str = "auto") -> RootCondition:
    """Does (x+1)^e - x^e - 1 = 0 have x = 0 as its only root in GF(3^m)?"""
    strategy = pick_strategy(m, e, strategy)
    if strategy == "exhaustive":
        return _root_condition_exhaustive(m, e, sign=-1, const=-1, designated=0)
    return _root_condition_gcd(m, e, q3_poly(e), designated_value=0)


@dataclass(frozen=True)
class OptimalityVerdict:
    m: int
    e: int
    e_not_in_c1: bool
    coset_size: int
    q1: bool | None
    q2: RootCondition | None
    q3: RootCondition | None
    conclusion: str  # optimal | not-optimal | precondition-failed

    @property
    def preconditions_ok(self) -> bool:
        return self.e_not_in_c1 and self.coset_size == self.m

    def to_json_obj(self) -> dict:
        return {
            "m": self.m,
            "e": self.e,
            "preconditions": {
                "e_not_in_c1": self.e_not_in_c1,
                "coset_size": self.coset_size,
                "coset_size_ok": self.coset_size == self.m,
            },
            "q1": self.q1,
            "q2": self.q2.to_json_obj() if self.q2 else None,
            "q3": self.q3.to_json_obj() if self.q3 else None,
            "conclusion": self.conclusion,
        }


def check_optimality(m: int, e: int, strategy: str = "auto") -> OptimalityVerdict:
    """Full criterion verdict for C_(1,e) over GF(3^m).

    Preconditions (e outside the coset of 1, coset of e has size m) are
    checked, not assumed; failing them yields conclusion
    "precondition-failed" rather than an error.
    """
    n = 3**m - 1
    if not 1 <= e < n:
        raise ValueError("exponent out of range")
    e_not_in_c1 = not same_coset(n, 1, e)
    size_e = coset(n, e).size
    if not (e_not_in_c1 and size_e == m):
        return OptimalityVerdict(
            m=m, e=e, e_not_in_c1=e_not_in_c1, coset_size=size_e,
            q1=None, q2=None, q3=None, conclusion="precondition-failed",
        )
    q1 = check_q1(e)
    q2 = check_q2(m, e, strategy)
    q3 = check_q3(m, e, strategy)
    ok = q1 and q2.holds and q3.holds
    return OptimalityVerdict(
        m=m, e=e, e_not_in_c1=True, coset_size=size_e,
        q1=q1, q2=q2, q3=q3,
        conclusion="optimal" if ok else "not-optimal",
    )


# ------------------------------------------------------- hypothesis families


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def h13_hypothesis(m: int, h: int) -> dict:
    """Which of the two e = 3^h + 13 hypothesis branches (m, h) satisfies.

    shift27: m >= 5 odd prime with 2h = 3 (mod m) — applying the 3^h-power
    map twice collapses to x -> x^27.  shift3: m = 2 (mod 3) odd prime
    with h = (m+1)/3 — three applications collapse to x -> x^3.  Both
    require 3 <= h <= m-1.
    """
    base = _is_prime(m) and m % 2 == 1 and 3 <= h <= m - 1
    return {
        "shift27": base and m >= 5 and (2 * h) % m == 3 % m,
        "shift3": base and m % 3 == 2 and 3 * h == m + 1,
    }


def coset_power_hypothesis(m: int, e: int, n: int) -> dict:
    """Congruence hypotheses 3^n * e = 2 or 4 (mod 3^m - 1).

    The target-4 branch additionally requires m > 2 odd (which guarantees
    the coset of e has full size m); target-2 results at m <= 2 are
    flagged degenerate rather than excluded.
    """
    modulus = 3**m - 1
    if not 1 <= e < modulus:
        raise ValueError("exponent out of range")
    lhs = e * pow(3, n, modulus) % modulus
    return {
        "coset2": lhs == 2 % modulus,
        "coset4": lhs == 4 % modulus and m > 2 and m % 2 == 1,
        "degenerate": m <= 2,
    }


# ------------------------------------------------------------ identity suite


@dataclass(frozen=True)
class IdentityCase:
    """One combined-polynomial identity behind the Q2/Q3 arguments.

    The rational substitution x^(3^h) = f/g, homogenized to degree D,
    yields a pair (F, G); the shift27 cases compare against x^27 * G,
    the shift3 cases iterate the substitution once more (S, T from F, G)
    and compare against x^3 * T.  ``flip`` records which side is
    subtracted so the stated target is monic.
    """

    id: str
    numerator: PolyF3
    denominator: PolyF3
    hom_degree: int
    shift: int
    tower: bool  # apply the substitution twice (shift-3 cases)
    flip: bool   # target = x^shift * den_side - num_side
    nonlinear_degrees: frozenset

    def combined(self) -> PolyF3:
        F = _homog(self.numerator, self.numerator, self.denominator, self.hom_degree)
        G = _homog(self.denominator, self.numerator, self.denominator, self.hom_degree)
        if self.tower:
            F, G = (
                _homog(self.numerator, F, G, self.hom_degree),
                _homog(self.denominator, F, G, self.hom_degree),
            )
        shifted = PolyF3.monomial(self.shift) * G
        return shifted - F if self.flip else F - shifted


def _homog(outer: PolyF3, A: PolyF3, B: PolyF3, D: int) -> PolyF3:
    """outer(A/B) * B^D with D >= deg(outer)."""
    out = PolyF3.zero()
    for i in range(outer.degree + 1):
        c = outer[i]
        if c:
            out = out + (A**i * B ** (D - i)).scale(c)
    return out


_F_Q2 = PolyF3.from_text("x^6-x^5+x^2+1")
_G_Q2 = PolyF3.from_text("x^6+x^4-x+1")
_F_Q3 = PolyF3.from_text("-x^7-x^5+x^2-x")
_G_Q3 = PolyF3.from_text("x^6-x^5+x^2+1")

IDENTITY_CASES = (
    IdentityCase("q2-shift27", _F_Q2, _G_Q2, 6, 27, tower=False, flip=False,
                 nonlinear_degrees=frozenset({3, 15})),
    IdentityCase("q2-shift3", _F_Q2, _G_Q2, 6, 3, tower=True, flip=False,
                 nonlinear_degrees=frozenset({2, 4, 10, 56})),
    IdentityCase("q3-shift27", _F_Q3, _G_Q3, 7, 27, tower=False, flip=True,
                 nonlinear_degrees=frozenset({3, 12})),
    IdentityCase("q3-shift3", _F_Q3, _G_Q3, 7, 3, tower=True, flip=True,
                 nonlinear_degrees=frozenset({4, 20, 28, 200})),
)


@dataclass(frozen=True)
class IdentityReport:
    case_id: str
    degree: int
    expanded_match: bool
    factors_match: bool
    unit: int
    degrees_admit_no_extension_roots: bool
    factors: FactorMultiset
    first_mismatch: str | None = None

    @property
    def ok(self) -> bool:
        return (
            self.expanded_match
            and self.factors_match
            and self.degrees_admit_no_extension_roots
        )

    def to_json_obj(self) -> dict:
        return {
            "case": self.case_id,
            "degree": self.degree,
            "expanded_match": self.expanded_match,
            "factors_match": self.factors_match,
            "unit": self.unit,
            "degrees_admit_no_extension_roots": self.degrees_admit_no_extension_roots,
            "factors": str(self.factors),
            "ok": self.ok,
            **({"first_mismatch": self.first_mismatch} if self.first_mismatch else {}),
        }


def _case_by_id(case_id: str) -> IdentityCase:
    for c in IDENTITY_CASES:
        if c.id == case_id:
            return c
    raise ValueError(f"unknown identity case {case_id!r}")


def verify_identity(case: IdentityCase | str, seed: int = 0) -> IdentityReport:
    """Rebuild one combined polynomial and verify it against its fixture.

    Four checks: the build itself, the expanded-coefficient comparison,
    the canonical irreducible-factor multiset comparison (unit reported,
    never silently absorbed), and the degree argument — no non-linear
    factor degree divides any odd prime m >= 5, so the identity has no
    roots outside the prime field there.
    """
    if isinstance(case, str):
        case = _case_by_id(case)
    fx = _fixture("identities.json")["cases"][case.id]
    built = case.combined()
    expected = PolyF3(fx["expanded"])
    expanded_match = built == expected
    mismatch = None
    if not expanded_match:
        diff = built - expected
        at = min(i for i in range(diff.degree + 1) if diff[i])
        mismatch = f"expanded form differs first at degree {at}"

    mine = factor(built.monic(), seed=seed)
    unit = built.leading
    expected_factors = FactorMultiset.from_json_obj(fx["factors"])
    factors_match = mine == expected_factors and expected_factors.product() == built
    if factors_match is False and mismatch is None:
        mismatch = "factor multisets differ"

    nonlin = {f.degree for f, _ in mine.factors if f.degree > 1}
    degrees_ok = nonlin == set(case.nonlinear_degrees) and not any(
        l % 2 == 1 and l >= 5 and _is_prime(l) for l in nonlin
    )
    return IdentityReport(
        case_id=case.id,
        degree=built.degree,
        expanded_match=expanded_match,
        factors_match=factors_match,
        unit=unit,
        degrees_admit_no_extension_roots=degrees_ok,
        factors=mine,
        first_mismatch=mismatch,
    )


# ----------------------------------------------------------- counterexample


@dataclass(frozen=True)
class CounterexampleReport:
    m: int
    e: int
    poly_degree: int
    root_count: int
    q3_holds: bool
    known_factor_divides: Optional[bool]  # None when the re-check was skipped
    known_factor_irreducible: Optional[bool]
    known_factor_degree: int
    conclusion: str

    @property
    def ok(self) -> bool:
        factor_ok = (
            self.known_factor_divides is None  # skipped, root count stands alone
            or (self.known_factor_divides and self.known_factor_irreducible)
        )
        return (
            self.root_count >= self.m
            and not self.q3_holds
            and factor_ok
            and self.conclusion == "not-optimal"
        )

    def to_json_obj(self) -> dict:
        return {
            "m": self.m,
            "e": self.e,
            "poly_degree": self.poly_degree,
            "root_count": self.root_count,
            "q3_holds": self.q3_holds,
            "known_factor": {
                "degree": self.known_factor_degree,
                "divides": self.known_factor_divides,
                "irreducible": self.known_factor_irreducible,
            },
            "conclusion": self.conclusion,
            "ok": self.ok,
        }


def reproduce_counterexample(progress=None, check_factor: bool = True) -> CounterexampleReport:
    """Disprove optimality of C_(1,2200) over GF(3^773).

    Counts distinct roots of P = (x+1)^2200 - x^2200 - 1 in GF(3^773) by
    a 773-step cubing chain modulo P; the count crushes Q3's uniqueness
    requirement.  Also re-checks the stored degree-773 witness factor:
    it divides P and is irreducible.  x = 0 is a root of P; x = -1 is
    not (P(-1) = 1), so x is the only linear factor.
    """
    fx = _fixture("counterexample.json")
    m, e = fx["m"], fx["e"]
    P = q3_poly(e)
    count = count_roots_in_extension(P, m, progress=progress)
    assert P.eval_f3(0) == 0 and P.eval_f3(2) != 0
    divides = irreducible = None
    known = PolyF3(fx["factor"])
    if check_factor:
        divides = P % known == PolyF3.zero()
        irreducible = is_irreducible(known)
    return CounterexampleReport(
        m=m,
        e=e,
        poly_degree=P.degree,
        root_count=count,
        q3_holds=count == 1,
        known_factor_divides=divides,
        known_factor_irreducible=irreducible,
        known_factor_degree=known.degree,
        conclusion="not-optimal" if count > 1 else "optimal",
    )


# --------------------------------------------------------------------- scans

SCAN_FAMILIES = ("h13-shift27", "h13-shift3", "coset2", "coset4")


def _h13_instances(family: str, m_max: int, m_min: int = 3):
    for m in range(max(m_min, 3), m_max + 1):
        if not _is_prime(m) or m % 2 == 0:
            continue
        if family == "h13-shift27":
            if m < 5:
                continue
            h = 3 * pow(2, -1, m) % m  # the unique 2h = 3 (mod m) residue
        else:
            if m % 3 != 2 or (m + 1) % 3 != 0:
                continue
            h = (m + 1) // 3
        if not 3 <= h <= m - 1:
            continue
        branch = "shift27" if family == "h13-shift27" else "shift3"
        if not h13_hypothesis(m, h)[branch]:
            continue
        yield {"m": m, "h": h, "e": 3**h + 13, "n_shift": None}


def _coset_power_instances(family: str, m_max: int, m_min: int = 3):
    target = 2 if family == "coset2" else 4
    for m in range(max(m_min, 2), m_max + 1):
        if m % 2 == 0 or (target == 4 and m <= 2):
            continue
        modulus = 3**m - 1
        for n in range(1, m + 1):
            e = target * pow(3, m - n, modulus) % modulus
            if e < 1 or e >= modulus:
                continue
            hyp = coset_power_hypothesis(m, e, n)
            if not hyp["coset2" if target == 2 else "coset4"]:
                continue
            yield {"m": m, "h": None, "e": e, "n_shift": n}


def scan(family: str, m_max: int, m_min: int = 3, strategy: str = "auto",
         seed: int = 0, oracle: str = "auto"):
    """Walk one parameter family in deterministic order, yielding
    (instance, CodeReport) pairs; per-item failures become reports, not
    aborts."""
    from .code import CodeSpec, build_report  # cycle: code aggregates verdicts

    if family in ("h13-shift27", "h13-shift3"):
        instances = _h13_instances(family, m_max, m_min)
    elif family in ("coset2", "coset4"):
        instances = _coset_power_instances(family, m_max, m_min)
    else:
        raise ValueError(f"unknown scan family {family!r}; "
                         f"known: {', '.join(SCAN_FAMILIES)}")
    for inst in instances:
        report = build_report(
            CodeSpec(m=inst["m"], u=1, v=inst["e"]),
            strategy=strategy, seed=seed, oracle=oracle,
        )
        yield inst, report
