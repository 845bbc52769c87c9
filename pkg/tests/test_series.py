from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mopkit.numerics import Polynomial
from mopkit.series import LaurentSeries

F = Fraction

coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def test_coefficient_access_and_truncation():
    s = LaurentSeries((F(1), F(2)), (F(3), F(4)))
    assert s.coefficient(1) == 2 and s.coefficient(-1) == 3 and s.coefficient(5) == 0
    with pytest.raises(IndexError):
        s.coefficient(-3)
    assert s.truncate(1).tail == (3,)
    with pytest.raises(ValueError):
        s.truncate(5)


def test_geometric_series_times_denominator():
    # 1/(z - 1) = sum z^-k-1; multiplying by z - 1 leaves exactly 1
    s = LaurentSeries((), (F(1),) * 8)
    prod = s.mul_poly(Polynomial([-1, 1]))
    assert prod.poly_part == (1,)
    assert all(c == 0 for c in prod.tail)
    # the z^-8 coefficient would need c_8, which is not known
    assert prod.terms == 7


def test_series_product_truncates_to_shorter():
    a = LaurentSeries((F(0), F(1)), (F(1), F(2), F(3)))
    b = LaurentSeries((), (F(1), F(1)))
    assert (a * b).terms <= min(a.terms, b.terms) + 2


@settings(max_examples=40, deadline=None)
@given(st.lists(coef, max_size=3), st.lists(coef, min_size=2, max_size=6),
       st.lists(coef, max_size=4))
def test_mul_poly_is_linear_and_matches_product(poly, tail, p):
    s = LaurentSeries(tuple(poly), tuple(tail))
    P = Polynomial(p)
    as_series = LaurentSeries(tuple(P.coeffs), (F(0),) * (len(tail) + 8))
    lhs = s.mul_poly(P)
    rhs = s * as_series
    for j in range(min(lhs.terms, rhs.terms)):
        assert lhs.coefficient(-j - 1) == rhs.coefficient(-j - 1)
    assert lhs.polynomial() == rhs.polynomial()


@settings(max_examples=40, deadline=None)
@given(st.lists(coef, max_size=3), st.lists(coef, min_size=1, max_size=6))
def test_t_representation_round_trip(poly, tail):
    s = LaurentSeries(tuple(poly), tuple(tail))
    e, u = s.to_t()
    back = LaurentSeries.from_t(e, u)
    assert back.poly_part == s.poly_part
    assert back.tail == s.tail


def test_add_and_sub():
    a = LaurentSeries((F(1),), (F(1), F(1)))
    b = LaurentSeries((), (F(1), F(0), F(5)))
    c = a - b
    assert c.poly_part == (1,) and c.tail == (0, 1)
    assert (a + Polynomial([0, 2])).poly_part == (1, 2)
