"""Code-level reporting for the two-zero ternary cyclic family.

A CodeSpec (m, u, v) fixes the length-(3^m - 1) cyclic code whose generator
polynomial is the product of the minimal polynomials of alpha^u and
alpha^v over the canonical GF(3^m).  ``build_report`` pulls together the
criterion verdict, the sphere-packing ceiling, coset sizes, optionally a
brute-force minimum-weight witness search (the oracle the criterion is
validated against), and optionally the generator polynomial itself.

The dimension k = n - |C_u| - |C_v| and the distance never require the
generator to be materialized, so reports stay cheap at m = 773.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cosets import coset, same_coset
from .field import ENUM_CAP, FieldCtx, find_generator, make_field
from .optimality import OptimalityVerdict, check_optimality
from .poly import PolyF3, pow_mod
from .tables import FieldTables, get_tables

__all__ = [
    "ORACLE_CAP",
    "CodeSpec",
    "CodeReport",
    "Witness",
    "minimal_poly",
    "generator_poly",
    "hamming_ball_volume",
    "sphere_packing_max_d",
    "min_weight_leq3_witness",
    "build_report",
]

ORACLE_CAP = 10  # the weight <= 3 search scans ratio space, a few 3^m passes


@dataclass(frozen=True)
class CodeSpec:
    """Defining exponents of one code; u and v must head distinct cosets."""

    m: int
    u: int
    v: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("extension degree must be >= 2")
        n = self.n
        if not (1 <= self.u < n and 1 <= self.v < n):
            raise ValueError("defining exponents must lie in [1, n-1]")
        if same_coset(n, self.u, self.v):
            raise ValueError(
                "defining exponents share a cyclotomic coset; the minimal "
                "polynomials coincide and the construction degenerates"
            )

    @property
    def n(self) -> int:
        return 3**self.m - 1


# ------------------------------------------------------------- generator side


def minimal_poly(ctx: FieldCtx, i: int) -> PolyF3:
    """Minimal polynomial of alpha^i over GF(3), alpha the canonical
    generator; the conjugates are the successive cubes, so the product
    of (x - root) over the coset of i must descend to prime-field
    coefficients — asserted, not assumed."""
    n = ctx.group_order
    cos = coset(n, i % n)
    alpha = find_generator(ctx)
    r = alpha ** cos.rep
    coeffs = [ctx.one()]
    for _ in range(cos.size):
        nxt = [ctx.zero()] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c
            nxt[j] -= c * r
        coeffs = nxt
        r = r**3
    out = []
    for c in coeffs:
        if c.rep.degree > 0:
            raise AssertionError(
                "conjugate product failed to descend to GF(3) — field tables "
                "or coset data are inconsistent"
            )
        out.append(c.rep[0])
    p = PolyF3(out)
    assert p.degree == cos.size and p.leading == 1
    return p


def generator_poly(spec: CodeSpec) -> PolyF3:
    """m_u * m_v; checked to divide x^n - 1 via x^n mod g == 1."""
    if spec.m > ENUM_CAP:
        raise ValueError(f"generator materialization capped at m <= {ENUM_CAP}")
    ctx = make_field(spec.m)
    g = minimal_poly(ctx, spec.u) * minimal_poly(ctx, spec.v)
    if pow_mod(PolyF3.x(), spec.n, g) != PolyF3.one():
        raise AssertionError("generator does not divide x^n - 1")
    return g


# --------------------------------------------------------------- sphere bound


def hamming_ball_volume(n: int, t: int, q: int = 3) -> int:
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))


def sphere_packing_max_d(n: int, k: int, q: int = 3) -> int:
    """Largest d an (n, q^k) code can have under the sphere-packing
    bound, taken as 2*t_max + 2 where t_max is the largest radius whose
    ball volume still fits in q^(n-k) — exact big-int arithmetic."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    budget = q ** (n - k)
    vol, t = 1, 0
    while t < n:
        nxt = vol + math.comb(n, t + 1) * (q - 1) ** (t + 1)
        if nxt > budget:
            break
        vol, t = nxt, t + 1
    return 2 * t + 2


# ------------------------------------------------------------- weight oracle


@dataclass(frozen=True)
class Witness:
    """A codeword of weight 2 or 3: positions are exponents of the
    canonical generator, coeffs the matching nonzero scalars."""

    weight: int
    positions: tuple
    coeffs: tuple

    def to_json_obj(self, ctx: FieldCtx | None = None) -> dict:
        obj = {
            "weight": self.weight,
            "positions": list(self.positions),
            "coeffs": list(self.coeffs),
        }
        if ctx is not None:
            obj["field"] = {"m": ctx.m, "modulus": str(ctx.modulus)}
        return obj


def _verify_witness(spec: CodeSpec, tab: FieldTables, w: Witness) -> None:
    # replay the two parity equations sum_k c_k * alpha^(i_k * exp) in
    # exact field arithmetic, independent of the vectorized search path
    if len(set(w.positions)) != len(w.positions):
        raise AssertionError("witness positions collide")
    ctx, alpha = tab.ctx, tab.alpha
    for exp in (spec.u, spec.v):
        total = ctx.zero()
        for i, c in zip(w.positions, w.coeffs):
            total += ctx.scalar(c) * alpha ** (i * exp)
        if total:
            raise AssertionError("witness fails a parity equation")


def min_weight_leq3_witness(
    spec: CodeSpec, tables: Optional[FieldTables] = None
) -> Optional[Witness]:
    """Exhaustive search for a codeword of weight 2 or 3 (weight 1 is
    impossible: a single nonzero term cannot vanish at alpha^u).

    Both parity equations are homogeneous under scaling the support by a
    unit, and scaling by alpha^j is exactly the cyclic shift by j — so a
    small-weight codeword exists iff one exists with 0 in its support.
    Fixing the first support element to alpha^0 = 1 and its coefficient
    to 1 (u = 1 makes the rescaling a unit choice, other u are rejected)
    turns the weight-3 search into a single pass over the ratio
    r = x2/x1: the first equation pins c3*x3 = -(1 + c2*r), and only the
    e-equation 1 + c2*r^e + c3*x3^e remains to test.  O(3^m) per
    coefficient pattern, not O(9^m).

    Returns the first witness scanning weight 2 before 3, coefficient
    patterns in lexicographic order, r in packed order — deterministic —
    or None, which certifies d >= 4.  Budget: m <= ORACLE_CAP.
    """
    if spec.u != 1:
        raise ValueError("witness search is implemented for u = 1 only")
    if spec.m > ORACLE_CAP:
        raise ValueError(f"witness search capped at m <= {ORACLE_CAP}")
    ctx = make_field(spec.m)
    tab = tables if tables is not None else get_tables(ctx)
    e = spec.v
    xe = tab.pow_all(e)
    dig = tab.digits_all()
    log = tab.log

    def checked(positions, coeffs):
        w = Witness(weight=len(positions), positions=positions, coeffs=coeffs)
        _verify_witness(spec, tab, w)
        return w

    # ---- weight 2: 1 + c2*r = 0 forces r = -c2; only r != 1 survives
    for c2 in (1, 2):
        r = 3 - c2  # packed scalar of the prime-field value -c2
        if r == 1:
            continue
        res = dig[:, xe[r]] * c2
        if (int(res[0]) + 1) % 3 == 0 and not np.any(res[1:] % 3):
            return checked((0, int(log[r])), (1, c2))

    # ---- weight 3: one vector pass per (c2, c3) over all ratios r
    vals = tab.values()
    one_e = np.zeros(tab.m, dtype=np.int16)
    one_e[0] = 1
    for c2 in (1, 2):
        A = (c2 * dig) % 3
        A[0] = (A[0] + 1) % 3            # digits of 1 + c2*r, all r
        T2 = (c2 * dig[:, xe]) % 3       # digits of c2 * r^e
        T2[0] += 1                       # the x1-term 1^e contributes 1
        for c3 in (1, 2):
            S = (c3 * (3 - A)) % 3       # x3 = c3^{-1} * -(1 + c2*r); c3^{-1} = c3
            x3 = tab.pack(S)
            ok = (vals > 1) & (x3 != 0) & (x3 != 1) & (x3 != vals)
            zero = ~np.any((T2 + c3 * dig[:, xe[x3]]) % 3, axis=0)
            idx = np.flatnonzero(ok & zero)
            if idx.size:
                r = int(idx[0])
                return checked(
                    (0, int(log[r]), int(log[int(x3[r])])), (1, c2, c3)
                )
    return None


# -------------------------------------------------------------------- report


@dataclass(frozen=True)
class CodeReport:
    spec: CodeSpec
    n: int
    k: int
    d_value: Optional[int]
    d_status: str  # verified | inferred | upper-bound | unknown
    optimal: bool
    conclusion: str
    verdict: OptimalityVerdict
    spb_max_d: int
    coset_size_u: int
    coset_size_v: int
    witness: Optional[Witness]
    oracle_ran: bool
    generator: Optional[PolyF3]
    strategy: str
    seed: int
    timings: dict
    notes: tuple = ()

    def to_json_obj(self, with_timings: bool = True) -> dict:
        ctx = make_field(self.spec.m) if self.spec.m <= ENUM_CAP else None
        q = self.verdict.to_json_obj()
        obj = {
            "m": self.spec.m,
            "u": self.spec.u,
            "v": self.spec.v,
            "n": self.n,
            "k": self.k,
            "d": {"value": self.d_value, "status": self.d_status},
            "optimal": self.optimal,
            "conclusion": self.conclusion,
            "spb_max_d": self.spb_max_d,
            "q_conditions": {
                "q1": q["q1"],
                "q2": q["q2"],
                "q3": q["q3"],
                "preconditions": q["preconditions"],
                "witnesses": {
                    "min_weight": self.witness.to_json_obj(ctx) if self.witness else None,
                    "oracle_ran": self.oracle_ran,
                },
            },
            "coset": {"size_u": self.coset_size_u, "size_v": self.coset_size_v},
            "strategy": self.strategy,
            "seed": self.seed,
        }
        if self.generator is not None:
            obj["generator"] = str(self.generator)
        if self.notes:
            obj["notes"] = list(self.notes)
        if with_timings:
            obj["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return obj


def build_report(
    spec: CodeSpec,
    strategy: str = "auto",
    seed: int = 0,
    oracle: str | bool = "auto",
    generator: str | bool = "auto",
) -> CodeReport:
    """One-stop verdict for a code spec.

    oracle: "auto" runs the weight search when it is essentially free
    (m <= 9), True forces it within budget, False skips.  generator
    follows the same pattern with the m <= 13 materialization cutoff.
    When both the criterion and the oracle ran, their conclusions must
    agree — a mismatch raises instead of reporting.
    """
    t_all = time.perf_counter()
    timings: dict = {}
    notes: list = []
    n = spec.n

    t0 = time.perf_counter()
    size_u = coset(n, spec.u).size
    size_v = coset(n, spec.v).size
    k = n - size_u - size_v
    timings["cosets"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    spb = sphere_packing_max_d(n, k)
    timings["sphere_packing"] = time.perf_counter() - t0

    verdict = None
    if spec.u == 1:
        t0 = time.perf_counter()
        verdict = check_optimality(spec.m, spec.v, strategy)
        timings["q_checks"] = time.perf_counter() - t0
    else:
        notes.append("criterion applies to u = 1 codes; preconditions only")
        verdict = OptimalityVerdict(
            m=spec.m, e=spec.v, e_not_in_c1=not same_coset(n, 1, spec.v),
            coset_size=size_v, q1=None, q2=None, q3=None,
            conclusion="precondition-failed",
        )

    run_oracle = (
        oracle is True
        or (oracle == "auto" and spec.m <= 9 and spec.u == 1)
    )
    witness = None
    if run_oracle:
        t0 = time.perf_counter()
        witness = min_weight_leq3_witness(spec)
        timings["oracle"] = time.perf_counter() - t0

    gen = None
    if generator is True or (generator == "auto" and spec.m <= 13):
        t0 = time.perf_counter()
        gen = generator_poly(spec)
        timings["generator"] = time.perf_counter() - t0
    elif generator == "auto":
        notes.append("generator polynomial elided at this size")

    conclusion = verdict.conclusion
    optimal = conclusion == "optimal" and spb == 4
    if conclusion == "optimal" and spb != 4:
        # cannot happen for full-size cosets with m >= 2, but keep the
        # report honest rather than trusting the caller's parameters
        notes.append(f"criterion holds but sphere packing allows d = {spb}")
        conclusion = "not-optimal"

    if run_oracle and verdict.preconditions_ok:
        agree = (witness is None) == (conclusion == "optimal")
        if not agree:
            raise AssertionError(
                f"criterion says {conclusion} but weight search "
                f"{'found ' + str(witness) if witness else 'found nothing'}"
            )

    if verdict.preconditions_ok:
        if conclusion == "optimal":
            d_value, d_status = 4, ("verified" if run_oracle else "inferred")
        elif witness is not None:
            d_value, d_status = witness.weight, "verified"
        else:
            d_value, d_status = 3, "upper-bound"
    elif witness is not None:
        d_value, d_status = witness.weight, "verified"
    else:
        d_value, d_status = None, "unknown"

    # report what actually ran, not what the caller asked for
    resolved = strategy
    if verdict.q2 is not None:
        resolved = verdict.q2.strategy
    elif strategy == "auto":
        resolved = "exhaustive" if spec.m <= ENUM_CAP else "gcd"

    timings["total"] = time.perf_counter() - t_all
    return CodeReport(
        spec=spec, n=n, k=k,
        d_value=d_value, d_status=d_status,
        optimal=optimal, conclusion=conclusion,
        verdict=verdict, spb_max_d=spb,
        coset_size_u=size_u, coset_size_v=size_v,
        witness=witness, oracle_ran=run_oracle,
        generator=gen, strategy=resolved, seed=seed,
        timings=timings, notes=tuple(notes),
    )
