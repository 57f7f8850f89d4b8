from fractions import Fraction
from math import comb, gcd

import pytest
from hypothesis import given, strategies as st

from rank2csd import exponent_formulas as ef
from rank2csd.errors import IncompleteSpecials, RangeError
from rank2csd.ordering import ExponentTable, compute_table
from rank2csd.pbc import PBC, ZERO, basis


@pytest.fixture(scope="module")
def table7():
    return compute_table(7)


def test_closed_forms_b1_a1():
    assert ef.closed_form_b1(4) == basis(4, 1)
    assert ef.closed_form_a1(1) == basis(1, 1)
    assert ef.closed_form_a1(3) == basis(1, 3)


def test_closed_form_b2_examples():
    assert ef.closed_form_b2(1) == basis(1, 2)
    assert ef.closed_form_b2(2) == basis(2, 2).scale(2)
    assert ef.closed_form_b2(3) == PBC({(2, 2): 2, (3, 2): 6, (3, 1): 1})
    assert ef.closed_form_b2(4) == PBC({(3, 2): 6, (4, 2): 12, (4, 1): 2})
    with pytest.raises(RangeError):
        ef.closed_form_b2(0)


@pytest.mark.parametrize("a", range(1, 6))
def test_closed_form_b2_matches_table(table7, a):
    assert ef.closed_form_b2(a) == table7[(a, 2)]
    assert ef.closed_form_b2(a).transpose() == table7[(2, a)]


def test_closed_form_b2_beyond_degree_7():
    # a = 7 needs the degree-9 table
    t = compute_table(9)
    assert ef.closed_form_b2(7) == t[(7, 2)]


def test_kernel_examples():
    assert ef.simplify_kernel_a(4, 3) == ef.kernel_a_sum(4, 3) == 6
    assert ef.simplify_kernel_a(2, 2) == 2
    assert ef.simplify_kernel_b(3, 3) == ef.kernel_b_sum(3, 3) == 1
    with pytest.raises(RangeError):
        ef.simplify_kernel_a(4, 1)
    with pytest.raises(RangeError):
        ef.simplify_kernel_b(4, 2)


@pytest.mark.parametrize("a", range(1, 31))
def test_kernels_equal_their_sums(a):
    for k in range((a + 1) // 2, a + 1):
        assert ef.simplify_kernel_a(a, k) == ef.kernel_a_sum(a, k)
    for k in range((a + 1) // 2 + 1, a + 1):
        assert ef.simplify_kernel_b(a, k) == ef.kernel_b_sum(a, k)


def test_appendix_examples():
    assert sum((4 - 2 * x) * comb(4, x) for x in range(3)) == 12
    assert sum(comb(4, x) for x in range(3)) == 11
    assert ef.appendix_identity_A(0) and ef.appendix_identity_A(4)
    assert ef.appendix_identity_B(0) and ef.appendix_identity_B(4)


@given(st.integers(0, 50))
def test_appendix_identities(u):
    assert ef.appendix_identity_A(u)
    assert ef.appendix_identity_B(u)


def test_recurrences_against_table(table7):
    for a in range(1, 6):
        assert ef.recurrence_a2_in_n(a, table7), a
    for a in range(3, 6):
        assert ef.recurrence_a2_in_m(a, table7), a
    with pytest.raises(RangeError):
        ef.recurrence_a2_in_m(2, table7)


@pytest.mark.parametrize("a", range(1, 31))
def test_recurrences_on_closed_form(a):
    assert ef.recurrence_a2_in_n(a, ef.CLOSED_FORM_B2)
    if a >= 3:
        assert ef.recurrence_a2_in_m(a, ef.CLOSED_FORM_B2)


def test_recurrence_reports_counterexample():
    bad = ExponentTable(7, {**compute_table(7).entries})
    key = next(v for v in bad.entries if tuple(v) == (3, 2))
    bad.entries[key] = bad.entries[key] + basis(3, 2)
    r = ef.recurrence_a2_in_n(3, bad)
    assert not r and r.witness is not None


# inverse formula -----------------------------------------------------------------


def test_inverse_formula_worked_3_2():
    specials = {(1, 1): 0, (1, 2): 0, (2, 1): 0, (2, 2): 2, (3, 1): 1, (3, 2): 14}
    got = ef.inverse_formula(3, 2, specials)
    assert got.nonzero() == {(2, 2): 2, (3, 1): 1, (3, 2): 6}
    assert got.is_integral()


def test_inverse_formula_zero():
    got = ef.inverse_formula(2, 3, {(i, j): 0 for i in (1, 2) for j in (1, 2, 3)})
    assert got.nonzero() == {}


def test_inverse_formula_4_2(table7):
    got = ef.inverse_formula(4, 2, ef.special_values(4, 2, table7[(4, 2)]))
    assert got.scale == Fraction(1, 2)
    assert got.nonzero() == {(3, 2): 12, (4, 2): 24, (4, 1): 4}
    assert got.to_pbc() == table7[(4, 2)]


def test_inverse_formula_missing():
    with pytest.raises(IncompleteSpecials):
        ef.inverse_formula(2, 2, {(1, 1): 0, (1, 2): 0, (2, 1): 0})


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_inverse_formula_round_trip(a, b, data):
    alpha = {
        (i, j): data.draw(st.integers(0, 20))
        for i in range(1, a + 1)
        for j in range(1, b + 1)
    }
    u = PBC(alpha)
    got = ef.inverse_formula(a, b, ef.special_values(a, b, u.scale(Fraction(1, gcd(a, b)))))
    assert got.to_pbc() == u.scale(Fraction(1, gcd(a, b)))


# table predicates ---------------------------------------------------------------


def test_table_predicates(table7):
    for check in (
        ef.check_reciprocity,
        ef.check_support,
        ef.check_corner,
        ef.check_lower_zeros,
        ef.check_inverse_roundtrip,
        ef.check_closed_forms,
    ):
        assert check(table7), check.__name__


def test_lower_zeros_example(table7):
    u = table7[(5, 2)]
    assert all(i > 2 for (i, j), _ in u.items())


def test_predicates_catch_bad_tables(table7):
    bad = ExponentTable(7, dict(table7.entries))
    key = next(v for v in bad.entries if tuple(v) == (5, 2))
    bad.entries[key] = bad.entries[key] + basis(1, 1)
    assert not ef.check_lower_zeros(bad)
    assert not ef.check_reciprocity(bad)
    assert not ef.check_closed_forms(bad)
    bad.entries[key] = bad.entries[key] + basis(6, 1)
    r = ef.check_support(bad)
    assert not r and r.witness == (5, 2, 6, 1)


def test_support_rejects_fractional_alpha(table7):
    bad = ExponentTable(7, dict(table7.entries))
    key = next(v for v in bad.entries if tuple(v) == (3, 2))
    bad.entries[key] = bad.entries[key] + basis(3, 2).scale(Fraction(1, 2))
    assert not ef.check_support(bad)


def test_monotonicity_observation():
    # holds for small a, and the first failure is a = 7, where alpha(6,1) = 42 > alpha(7,1) = 38
    assert all(ef.check_monotonicity_b2(a) for a in range(1, 7))
    r = ef.check_monotonicity_b2(7)
    assert not r and r.witness == (7, 6, 1, 7, 1)
    u = ef.closed_form_b2(7)
    assert (u.coeff(6, 1), u.coeff(7, 1)) == (42, 38)
    assert [a for a in range(1, 31) if not ef.check_monotonicity_b2(a)] == list(range(7, 31))


def test_alpha_matrix_out_of_range_is_zero():
    m = ef.AlphaMatrix.from_pbc(3, 2, ef.closed_form_b2(3))
    assert m[0, 1] == 0 and m[4, 1] == 0 and m[3, 2] == 6
    assert ef.AlphaMatrix.from_pbc(1, 1, ZERO).nonzero() == {}
