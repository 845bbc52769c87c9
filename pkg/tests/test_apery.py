from fractions import Fraction
from math import comb, gcd

import mpmath
import pytest

from mopkit.apery import apery_sequence, apery_spec, apery_step, zeta3
from mopkit.errors import NoSolution
from mopkit.hermitepade import order_of_contact
from mopkit.measures import APERY_TRIPLE, cauchy_series
from mopkit.mopcore import mixed_solve
from mopkit.numerics import Polynomial

F = Fraction


def legendre_pair(n):
    """(A, B) with int_t^1 P(x) P(t/x) dx/x = A(t) + B(t) log t.

    P is the shifted Legendre polynomial sum (-1)^k C(n,k) C(n+k,k) x^k.
    Integrating term by term, x^(m-1) gives (1 - t^m)/m for m != 0 and
    -log t for m = 0.
    """
    a = [(-1) ** k * comb(n, k) * comb(n + k, k) for k in range(n + 1)]
    A = [F(0)] * (2 * n + 1)
    B = [F(0)] * (n + 1)
    for k in range(n + 1):
        for j in range(n + 1):
            c = a[k] * a[j]
            m = k - j
            if m == 0:
                B[j] -= c
            else:
                A[j] += F(c, m)
                A[j + m] -= F(c, m)
    return Polynomial(A), Polynomial(B)


def apery_recurrence(n_max):
    """a_n / b_n from n^3 u_n = (34n^3 - 51n^2 + 27n - 5) u_{n-1} - (n-1)^3 u_{n-2}."""
    a, b = [F(0), F(6)], [F(1), F(5)]
    for n in range(2, n_max + 1):
        c = 34 * n ** 3 - 51 * n ** 2 + 27 * n - 5
        a.append((c * a[-1] - (n - 1) ** 3 * a[-2]) / n ** 3)
        b.append((c * b[-1] - (n - 1) ** 3 * b[-2]) / n ** 3)
    return [x / y for x, y in zip(a, b)], b


def test_step_one():
    st = apery_step(1, 200)
    assert st.A == Polynomial([-4, 4]) and st.B == Polynomial([-1, -4])
    assert st.D(1) == 12 and st.B(1) == -5
    assert st.approximant == F(6, 5)
    assert abs(st.abs_error - mpmath.mpf("2.0569031595942854e-3")) < 1e-12


def test_step_zero_has_no_solution():
    with pytest.raises(NoSolution):
        apery_step(0)


@pytest.mark.parametrize("n", range(1, 9))
def test_solution_matches_legendre_double_integral(n):
    st = apery_step(n)
    A, B = legendre_pair(n)
    assert A.degree <= n
    scale = st.A.leading / A.leading
    assert st.A == A * scale
    assert st.B == B * scale


def test_approximants_are_aperys_sequence():
    ratios, b = apery_recurrence(10)
    assert b[:4] == [1, 5, 73, 1445]
    for st in apery_sequence(10):
        assert st.approximant == ratios[st.n]
    assert apery_step(2).approximant == F(351, 292)


def test_zeta3_against_series():
    # zeta(3) = 5/2 sum (-1)^(k+1) / (k^3 C(2k, k)); the alternating tail is below the next term
    with mpmath.workprec(260):
        total = mpmath.mpf(0)
        k = 1
        while True:
            term = mpmath.mpf(1) / (k ** 3 * comb(2 * k, k))
            if term < mpmath.ldexp(1, -250):
                break
            total += term if k % 2 else -term
            k += 1
        assert abs(zeta3(260) - total * 5 / 2) < mpmath.ldexp(1, -245)


def test_order_conditions_and_point_constraint():
    for st in apery_sequence(6):
        assert st.A(1) == 0
        assert min(st.orders) >= st.n + 1


def test_approximant_invariant_under_scaling():
    st = apery_step(4)
    terms = 16
    f2, f3 = (cauchy_series(mu, terms) for mu in APERY_TRIPLE[1:])
    for s in (F(3), F(-2, 7)):
        D = (f2.mul_poly(st.A * s) - (f3 * 2).mul_poly(st.B * s)).polynomial()
        assert -D(1) / (2 * (st.B * s)(1)) == st.approximant


def test_content_one_integers():
    for n in range(1, 16):
        A, B = mixed_solve(apery_spec(n), APERY_TRIPLE)
        coeffs = list(A.coeffs) + list(B.coeffs)
        assert all(c.denominator == 1 for c in coeffs)
        g = 0
        for c in coeffs:
            g = gcd(g, int(c))
        assert g == 1
        assert A.leading > 0


def test_errors_decrease_geometrically():
    seq = apery_sequence(10, 256)
    errs = [s.abs_error for s in seq]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-12
    # classical rate (sqrt(2) - 1)^8 for |zeta(3) - a_n/b_n|
    rate = (mpmath.sqrt(2) - 1) ** 8
    assert abs(seq.ratios[-1] - rate) < 1e-5


def test_checks_use_exact_remainders():
    st = apery_step(3)
    f1, f2 = (cauchy_series(mu, 20) for mu in APERY_TRIPLE[:2])
    assert order_of_contact([f1, f2], [st.A, -st.B], st.C) == 4
