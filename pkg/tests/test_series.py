from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from orient_rr.errors import BadConstantTerm, InsufficientOrder, NonzeroConstantTerm, NotReversible, ZeroConstantTerm
from orient_rr.series import (
    Series,
    default_order,
    exp_series,
    format_rat,
    format_series,
    parse_rat,
    series_from_json,
    series_to_json,
)

from oracles import (
    exp_coeffs,
    log1p_coeffs,
    naive_inverse,
    naive_mul,
    naive_pow,
    neg_log1m_coeffs,
    one_minus_exp_neg,
)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def series_st(order=8, zero_const=False, unit_const=False):
    coeffs = st.lists(rats, min_size=order, max_size=order)

    def build(c):
        if zero_const:
            c = [F(0)] + c[1:]
        if unit_const:
            c = [F(1)] + c[1:]
        return Series(c)

    return coeffs.map(build)


# -- rationals and construction ---------------------------------------------


@pytest.mark.parametrize("text,value", [("3", F(3)), ("-1/720", F(-1, 720)), ("4/6", F(2, 3)), (" 0 ", F(0))])
def test_parse_rat(text, value):
    assert parse_rat(text) == value


@pytest.mark.parametrize("text", ["1.5", "1e3", "1/0", "", "a/b"])
def test_parse_rat_rejects(text):
    with pytest.raises(ValueError):
        parse_rat(text)


def test_format_rat_lowest_terms():
    assert format_rat(F(4, -6)) == "-2/3"
    assert format_rat(F(5)) == "5"


def test_floats_refused():
    with pytest.raises(TypeError):
        Series([0.5])
    with pytest.raises(TypeError):
        Series([1]) * 0.5


def test_order_padding_and_truncation():
    s = Series([1, 2], 4)
    assert s.coeffs == (1, 2, 0, 0)
    assert s.truncate(1) == Series([1])
    assert Series([1, 2, 3], 2) == Series([1, 2])


def test_equality_needs_matching_order():
    assert Series([1, 0], 2) != Series([1, 0, 0], 3)


def test_unknown_coefficient_raises():
    with pytest.raises(InsufficientOrder):
        Series([1, 2])[2]
    assert list(Series([1, 2])) == [1, 2]


def test_all_coefficients_are_fractions():
    s = exp_series(10).log()
    assert all(type(c) is F for c in s.coeffs)


def test_default_order(monkeypatch):
    assert default_order() == 32
    monkeypatch.setenv("ORIENT_RR_ORDER", "12")
    assert default_order() == 12


# -- arithmetic -----------------------------------------------------------


def test_difference_of_squares():
    assert Series([1, 1], 4) * Series([1, -1], 4) == Series([1, 0, -1, 0])


def test_additive_identity():
    a = Series([3, F(1, 2), -7])
    assert a + Series.zero(3) == a


def test_cube_coefficient():
    s = Series([1, F(1, 2), F(1, 12)], 3)
    assert (s ** 3)[2] == 1
    assert naive_pow(list(s.coeffs), 3, 3)[2] == 1


def test_binary_ops_truncate_to_min_order():
    a, b = Series([1, 1, 1, 1]), Series([1, 1])
    assert (a + b).order == 2
    assert (a * b).order == 2


@given(series_st(), series_st())
def test_mul_matches_naive_convolution(a, b):
    assert list((a * b).coeffs) == naive_mul(list(a.coeffs), list(b.coeffs), 8)


@given(series_st(), series_st(), series_st())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Series.zero(8)


# -- inverse ----------------------------------------------------------------


def test_invert_geometric():
    assert Series([1, -1], 6).invert() == Series([1] * 6)


def test_invert_one():
    assert Series.one(5).invert() == Series.one(5)


def test_invert_todd_unit_part():
    h = Series(one_minus_exp_neg(6)).shift_down(1)  # order 5
    inv = h.invert()
    assert inv == Series([1, F(1, 2), F(1, 12), 0, F(-1, 720)])
    assert inv.coeffs == tuple(naive_inverse(list(h.coeffs), 5))
    assert h * inv == Series.one(5)


def test_invert_zero_constant():
    with pytest.raises(ZeroConstantTerm):
        Series([0, 1]).invert()


@given(series_st())
def test_invert_property(a):
    assume(a[0] != 0)
    assert a * a.invert() == Series.one(8)


# -- composition --------------------------------------------------------------


def test_compose_identity():
    f = Series([2, 3, 5, 7, 11])
    assert f.compose(Series.variable(5)) == f


def test_compose_exp_log():
    expm1 = exp_series(9) - 1
    log1p = Series(log1p_coeffs(9))
    assert expm1.compose(log1p) == Series.variable(9)


def test_compose_one_minus_exp_neg_with_log():
    outer = Series(one_minus_exp_neg(9))
    result = outer.compose(Series(log1p_coeffs(9)))
    # 1 - 1/(1+u) = u/(1+u)
    assert result == Series([0] + [(-1) ** (k + 1) for k in range(1, 9)])


def test_compose_rejects_constant_inner():
    with pytest.raises(NonzeroConstantTerm):
        Series([1, 1]).compose(Series([1, 1]))


def test_compose_matches_naive_power_sum():
    outer = Series([1, -2, F(1, 3), 4, 0, F(5, 7)])
    inner = Series([0, 2, -1, F(1, 2), 3, 1])
    expect = [F(0)] * 6
    for k, c in enumerate(outer.coeffs):
        for i, x in enumerate(naive_pow(list(inner.coeffs), k, 6)):
            expect[i] += c * x
    assert list(outer.compose(inner).coeffs) == expect


# -- reversion -----------------------------------------------------------------


def test_revert_identity():
    assert Series.variable(7).revert() == Series.variable(7)


@pytest.mark.parametrize(
    "forward,backward",
    [
        (Series(one_minus_exp_neg(11)), Series(neg_log1m_coeffs(11))),
        (exp_series(11) - 1, Series(log1p_coeffs(11))),
    ],
)
def test_revert_known(forward, backward):
    r = forward.revert()
    assert r == backward
    u = Series.variable(11)
    assert forward.compose(r) == u
    assert r.compose(forward) == u


def test_revert_requires_unit_linear_term():
    with pytest.raises(NotReversible):
        Series([0, 0, 1]).revert()
    with pytest.raises(NotReversible):
        Series([1, 1]).revert()


@given(series_st())
def test_revert_double_composition(a):
    a = Series([0] + list(a.coeffs[1:]))
    assume(a[1] != 0)
    u = Series.variable(8)
    r = a.revert()
    assert a.compose(r) == u
    assert r.compose(a) == u


# -- exp / log -------------------------------------------------------------------


def test_exp_zero():
    assert Series.zero(6).exp() == Series.one(6)


def test_exp_u():
    assert Series.variable(10).exp() == Series(exp_coeffs(10))
    assert exp_series(10, -3) == Series(exp_coeffs(10, -3))


def test_log_one_plus_u():
    assert Series([1, 1], 10).log() == Series(log1p_coeffs(10))
    assert Series(log1p_coeffs(10)).exp() == Series([1, 1], 10)


def test_exp_log_constant_terms():
    with pytest.raises(BadConstantTerm):
        Series([1, 1]).exp()
    with pytest.raises(BadConstantTerm):
        Series([2, 1]).log()


@given(series_st(zero_const=True), series_st(zero_const=True))
def test_exp_log_laws(a, b):
    assert a.exp().log() == a
    assert (a + b).exp() == a.exp() * b.exp()


@given(series_st(unit_const=True))
def test_log_exp_inverse(b):
    assert b.log().exp() == b


# -- I/O ---------------------------------------------------------------------------


def test_json_round_trip():
    s = Series([1, F(-1, 2), 0, F(7, 3)])
    data = series_to_json(s)
    assert data == ["1", "-1/2", "0", "7/3"]
    assert series_from_json(data) == s


def test_human_format_suppresses_zeros():
    s = Series([1, F(1, 2), F(1, 12), 0, F(-1, 720)])
    assert format_series(s) == "1 + 1/2 u + 1/12 u^2 - 1/720 u^4 + O(u^5)"
