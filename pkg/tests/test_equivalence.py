"""Coset equivalence classification and table reproduction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gf3codes.cosets import same_coset
from gf3codes.equivalence import classify, shift_partner, table_rows


def test_classify_worked_example():
    # 2 * 3^4 = 162 at m = 5: four cubings rotate 2 onto 162
    v = classify(5, 162, 2)
    assert v.relation == "equivalent-same-coset"
    assert v.rotation == 4
    # and one cubing in the reverse direction
    assert classify(5, 2, 162).rotation == 1


def test_classify_self_is_rotation_zero():
    for m, e in [(5, 94), (11, 2200), (3, 7)]:
        v = classify(m, e, e)
        assert v.relation == "equivalent-same-coset" and v.rotation == 0


def test_classify_distinct_cosets():
    v = classify(11, 3**7 + 13, 3**5 + 13)
    assert v.relation == "coset-distinct"
    assert v.rotation is None
    # the one-way reading is surfaced, not silently asserted
    assert "forward direction" in v.interpretation


def test_classify_range_check():
    with pytest.raises(ValueError):
        classify(5, 242, 2)


def test_classify_huge_m():
    n = 3**773 - 1
    e2 = 2200 * pow(3, 50, n) % n
    v = classify(773, e2, 2200)
    assert v.relation == "equivalent-same-coset" and v.rotation == 50
    assert classify(773, 2200, 2201).relation == "coset-distinct"


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 12),
    st.integers(0, 3**12 - 2),
    st.integers(0, 3**12 - 2),
)
def test_classify_agrees_with_coset_walk(m, e1, e2):
    n = 3**m - 1
    e1, e2 = e1 % n, e2 % n
    v = classify(m, e1, e2)
    assert (v.relation == "equivalent-same-coset") == same_coset(n, e1, e2)
    if v.rotation is not None:
        assert e2 * 3**v.rotation % n == e1


@settings(max_examples=40, deadline=None)
@given(
    st.integers(2, 10),
    st.integers(0, 3**10 - 2),
    st.integers(0, 3**10 - 2),
    st.integers(0, 3**10 - 2),
)
def test_classify_symmetric_transitive(m, e1, e2, e3):
    n = 3**m - 1
    e1, e2, e3 = e1 % n, e2 % n, e3 % n
    r12 = classify(m, e1, e2).relation
    assert r12 == classify(m, e2, e1).relation
    if r12 == "equivalent-same-coset" and (
        classify(m, e2, e3).relation == "equivalent-same-coset"
    ):
        assert classify(m, e1, e3).relation == "equivalent-same-coset"


# ------------------------------------------------------------------ partners


def test_shift_partner_examples():
    assert shift_partner(5, 162, 1, 2) == 162  # 3 * 162 = 2 (mod 242)
    assert shift_partner(5, 82, 1, 4) == 82    # 4 * 81 = 324 = 82 (mod 242)
    assert shift_partner(7, 486, 2, 2) == 486  # 9 * 486 = 2 (mod 2186)


def test_shift_partner_preconditions():
    with pytest.raises(ValueError):
        shift_partner(5, 161, 1, 2)  # congruence fails
    with pytest.raises(ValueError):
        shift_partner(4, 27, 1, 4)  # even m barred for target 4
    with pytest.raises(ValueError):
        shift_partner(5, 162, 1, 3)
    with pytest.raises(ValueError):
        shift_partner(5, 162, 6, 2)


def test_shift_partner_all_solvable_small():
    # the congruence has a unique solution for every (m, n); partner
    # must equal it and sit in its own coset
    for target in (2, 4):
        for m in range(3, 14, 2):
            n3 = 3**m - 1
            for n in range(1, m + 1):
                e = target * pow(3, m - n, n3) % n3
                assert shift_partner(m, e, n, target) == e


# -------------------------------------------------------------------- tables


def test_table_rows_m11_all_types():
    rows = [r for r in table_rows("all", 11) if r.m == 11]
    assert {(r.type, r.h) for r in rows} == {(1, 5), (2, 6), (3, 7), (4, 4)}
    assert all(r.e == 3**r.h + 13 for r in rows)
    # every cross-type pair lands in a different coset here
    for r in rows:
        assert all(rel == "coset-distinct" for _, rel in r.pairwise)


def test_table_row_bounds():
    kinds = {(r.type, r.m) for r in table_rows("all", 13)}
    assert (1, 5) not in kinds  # type 1 starts at m = 7
    assert (1, 7) in kinds
    assert (4, 5) not in kinds  # h = 2 falls below the shift floor
    assert (4, 11) in kinds
    assert (2, 5) in kinds and (3, 5) in kinds
    assert all(m % 2 and m > 2 for _, m in kinds)


def test_table_kind_split():
    known = table_rows("known", 13)
    new = table_rows("new", 13)
    assert {r.type for r in known} == {1, 2}
    assert {r.type for r in new} == {3, 4}
    assert all(r.kind == "known" for r in known)
    assert all(r.kind == "new" for r in new)


def test_table_m7_type_collision_classified():
    # type 3 (h=5) and type 2 (h=4) both exist at m=7 with different e
    rows = {r.type: r for r in table_rows("all", 7) if r.m == 7}
    assert rows[3].h == 5 and rows[2].h == 4
    rels = dict(rows[3].pairwise)
    assert rels[2] == "coset-distinct"


def test_cross_type_distinct_primes_to_31():
    # type 3 never shares a coset with type 1 or 2 once m > 7
    for r in table_rows("new", 31, m_min=11):
        if r.type != 3:
            continue
        for other, rel in r.pairwise:
            if other in (1, 2):
                assert rel == "coset-distinct", (r.m, other)


def test_table_rows_kind_validation():
    with pytest.raises(ValueError):
        table_rows("old", 13)
