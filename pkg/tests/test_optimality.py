"""Criterion checks, identity suite, hypothesis families, scans.

Root counts are validated against a from-scratch oracle (evaluate the
defining polynomial at every field element through the scalar API)
before being trusted in either vectorized or gcd form.
"""

import dataclasses

import pytest

from gf3codes.field import enumerate_field, eval_poly, make_field
from gf3codes.optimality import (
    IDENTITY_CASES,
    check_optimality,
    check_q1,
    check_q2,
    check_q3,
    coset_power_hypothesis,
    h13_hypothesis,
    q2_poly,
    q3_poly,
    scan,
    verify_identity,
)
from gf3codes.poly import PolyF3, parse_poly


def _brute_roots(p, m):
    ctx = make_field(m)
    return sum(1 for a in enumerate_field(ctx) if not eval_poly(p, a))


def test_q1_parity():
    assert check_q1(94) and check_q1(2)
    assert not check_q1(5)
    with pytest.raises(ValueError):
        check_q1(0)


def test_q_poly_small_closed_forms():
    # (x+1)^4 - x^4 - 1 = x^3 + x over GF(3)
    assert q3_poly(4) == parse_poly("x^3+x")
    assert q2_poly(2) == parse_poly("2x^2+2x+2")
    assert q3_poly(2200).degree == 2199  # top terms cancel
    assert q2_poly(2200).degree == 2200


@pytest.mark.parametrize("m,e", [(3, 4), (4, 20), (4, 22), (5, 94), (5, 22)])
def test_root_counts_match_brute_force(m, e):
    for builder, check, designated in (
        (q2_poly, check_q2, 1),
        (q3_poly, check_q3, 0),
    ):
        expect = _brute_roots(builder(e), m)
        for strategy in ("exhaustive", "gcd"):
            got = check(m, e, strategy)
            assert got.root_count == expect, (m, e, strategy)
            assert got.designated_root_ok == (
                not eval_poly(builder(e), make_field(m).scalar(designated))
            )


def test_q3_designated_root_always_zero():
    # x = 0 kills (x+1)^e - x^e - 1 for every e; x = 1 kills the q2 form
    # only for even e
    for e in (2, 4, 94, 2200):
        assert check_q3(5, e).designated_root_ok
        assert check_q2(5, e).designated_root_ok
    assert not check_q2(5, 5).designated_root_ok


def test_extra_root_surfaced_when_unique_fails():
    v = check_q3(4, 20)
    assert not v.holds and v.root_count == 7
    assert v.extra_root not in (None, 0)
    assert v.extra_root_rep
    # the reported element really is a root
    ctx = make_field(4)
    assert not eval_poly(q3_poly(20), ctx.from_packed(v.extra_root))


def test_strategy_guards():
    with pytest.raises(ValueError):
        check_q2(17, 742, "exhaustive")  # above table cap
    with pytest.raises(ValueError):
        check_q2(5, 94, "newton")


def test_check_optimality_known_instances():
    for m, e in [(3, 2), (5, 2), (5, 94), (7, 256)]:
        v = check_optimality(m, e)
        assert v.conclusion == "optimal", (m, e)
        assert v.q1 and v.q2.holds and v.q3.holds
    v = check_optimality(4, 4)
    assert v.conclusion == "not-optimal" and not v.q3.holds
    assert v.q3.root_count == 3


def test_check_optimality_preconditions():
    # 3 sits in the coset of 1; 40 has a singleton coset mod 80
    v = check_optimality(5, 3)
    assert v.conclusion == "precondition-failed" and not v.e_not_in_c1
    v = check_optimality(4, 40)
    assert v.conclusion == "precondition-failed" and v.coset_size == 1
    assert v.q1 is None and v.q2 is None
    with pytest.raises(ValueError):
        check_optimality(5, 242)


def test_odd_exponent_fails_q1_not_preconditions():
    v = check_optimality(5, 5)
    assert v.preconditions_ok and v.q1 is False
    assert v.conclusion == "not-optimal"


# ------------------------------------------------------- hypothesis families


def test_h13_hypothesis_known_rows():
    # the doubled shift lands on 27 when 2h = 3 (mod m)
    assert h13_hypothesis(5, 4) == {"shift27": True, "shift3": False}
    assert h13_hypothesis(7, 5) == {"shift27": True, "shift3": False}
    assert h13_hypothesis(11, 7) == {"shift27": True, "shift3": False}
    assert h13_hypothesis(13, 8) == {"shift27": True, "shift3": False}
    # the tripled shift lands on 3 when 3h = m + 1
    assert h13_hypothesis(11, 4) == {"shift27": False, "shift3": True}
    assert h13_hypothesis(17, 6) == {"shift27": False, "shift3": True}
    # out of range, composite, or wrong congruence
    assert h13_hypothesis(5, 2) == {"shift27": False, "shift3": False}
    assert h13_hypothesis(9, 5) == {"shift27": False, "shift3": False}
    assert h13_hypothesis(773, 7) == {"shift27": False, "shift3": False}


def test_coset_power_hypothesis_known():
    assert coset_power_hypothesis(5, 18, 3)["coset2"]
    assert coset_power_hypothesis(5, 36, 3)["coset4"]
    assert not coset_power_hypothesis(5, 18, 3)["coset4"]
    assert coset_power_hypothesis(2, 6, 1)["degenerate"]
    with pytest.raises(ValueError):
        coset_power_hypothesis(5, 0, 1)


def test_coset_power_solution_unique_per_shift():
    m = 5
    n3 = 3**m - 1
    for n in range(1, m + 1):
        hits = [e for e in range(1, n3)
                if coset_power_hypothesis(m, e, n)["coset2"]]
        assert len(hits) == 1
        assert hits[0] * pow(3, n, n3) % n3 == 2


# ------------------------------------------------------------ identity suite


def test_identity_suite_all_cases():
    degrees = {}
    for case in IDENTITY_CASES:
        rep = verify_identity(case)
        assert rep.ok, (case.id, rep.first_mismatch)
        assert rep.expanded_match and rep.factors_match
        assert rep.unit == 1
        degrees[case.id] = rep.degree
    assert degrees == {
        "q2-shift27": 63,
        "q2-shift3": 219,
        "q3-shift27": 75,
        "q3-shift3": 345,
    }


def test_identity_factor_degree_sets():
    expected = {
        "q2-shift27": {3, 15},
        "q2-shift3": {2, 4, 10, 56},
        "q3-shift27": {3, 12},
        "q3-shift3": {4, 20, 28, 200},
    }
    for case in IDENTITY_CASES:
        rep = verify_identity(case)
        nonlin = {f.degree for f, _ in rep.factors.factors if f.degree > 1}
        assert nonlin == expected[case.id]
        # no factor can acquire roots in GF(3^m) for odd prime m >= 5:
        # that would need its degree to divide m
        assert not any(d >= 5 and d % 2 and _is_prime(d) for d in nonlin)


def _is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_identity_tamper_detected():
    # wrong shift must fail the expanded comparison, loudly and precisely
    case = dataclasses.replace(IDENTITY_CASES[0], shift=9)
    rep = verify_identity(case)
    assert not rep.ok and not rep.expanded_match
    assert "differs first at degree" in rep.first_mismatch


def test_factor_fixtures_multiply_back():
    for case in IDENTITY_CASES:
        rep = verify_identity(case)
        assert rep.factors.product() == case.combined()


def test_identity_unknown_id():
    with pytest.raises(ValueError):
        verify_identity("q5-shift81")


# --------------------------------------------------------------------- scans


def test_scan_h13_shift27_instances():
    rows = [(i["m"], i["h"], i["e"]) for i, _ in scan("h13-shift27", 13)]
    assert rows == [(5, 4, 94), (7, 5, 256), (11, 7, 2200), (13, 8, 6574)]


def test_scan_h13_shift3_instances():
    rows = list(scan("h13-shift3", 17))
    assert [(i["m"], i["h"], i["e"]) for i, _ in rows] == [
        (11, 4, 94), (17, 6, 742)
    ]
    assert all(r.conclusion == "optimal" for _, r in rows)


def test_scan_coset_families_small():
    rows = list(scan("coset2", 5))
    assert [(i["m"], i["n_shift"], i["e"]) for i, _ in rows] == [
        (3, 1, 18), (3, 2, 6), (3, 3, 2),
        (5, 1, 162), (5, 2, 54), (5, 3, 18), (5, 4, 6), (5, 5, 2),
    ]
    assert all(r.conclusion == "optimal" and r.d_status == "verified"
               for _, r in rows)
    # every exponent in the family lives in the coset of its target
    from gf3codes.cosets import same_coset

    for inst, _ in rows:
        assert same_coset(3 ** inst["m"] - 1, inst["e"], 2)

    rows4 = list(scan("coset4", 3))
    assert [(i["n_shift"], i["e"]) for i, _ in rows4] == [(1, 10), (2, 12), (3, 4)]


def test_scan_rejects_unknown_family():
    with pytest.raises(ValueError):
        list(scan("coset8", 5))
