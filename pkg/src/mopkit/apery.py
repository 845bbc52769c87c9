"""Rational approximants to zeta(3) from a mixed-type system.

With ``f_j(z) = int dmu_j(x) / (z - x)`` for the measure triple ``dx``,
``-log x dx`` and ``log(x)**2 / 2 dx`` on ``[0, 1]`` we look for ``A``, ``B``
of degree at most ``n`` with

    A f1 - B f2 - C   = O(z^-n-1),
    A f2 - 2B f3 - D  = O(z^-n-1),
    A(1) = 0.

Since ``f3(1) = zeta(3)`` the second relation at ``z = 1`` yields the
approximant ``-D(1) / (2 B(1))``.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import NoSolution
from .hermitepade import order_of_contact
from .measures import APERY_TRIPLE, cauchy_series
from .mopcore import LinearForm, MixedSystemSpec, mixed_solve
from .numerics.domain import to_mpf

__all__ = ["AperyStep", "AperySequence", "apery_spec", "apery_step", "apery_sequence", "zeta3"]


@dataclass(frozen=True)
class AperyStep:
    n: int
    A: object
    B: object
    C: object
    D: object
    approximant: Fraction
    abs_error: object
    orders: tuple = ()


@dataclass(frozen=True)
class AperySequence:
    steps: tuple
    ratios: tuple

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)


def zeta3(precision):
    with mpmath.workprec(precision):
        return +mpmath.zeta(3)


def apery_spec(n):
    """The mixed system for step ``n``: unknowns ``A``, ``B`` of degree ``n``."""
    forms = (
        LinearForm(((1, 0, "A"), (-1, 1, "B")), n),
        LinearForm(((1, 1, "A"), (-2, 2, "B")), n),
    )
    return MixedSystemSpec({"A": n, "B": n}, forms, point_constraints=(("A", 1, 0),),
                           solution="nullspace", nonzero=("A",))


def apery_step(n, precision=200):
    """Solve the mixed system for ``n`` and evaluate the approximant.

    Raises NoSolution for ``n = 0``: the point constraint forces the
    constant ``A`` to vanish.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        raise NoSolution("A_0 is constant and A_0(1) = 0 forces A_0 = 0")
    A, B = mixed_solve(apery_spec(n), APERY_TRIPLE)
    terms = 2 * n + 8
    f1, f2, f3 = (cauchy_series(mu, terms) for mu in APERY_TRIPLE)
    rel1 = f1.mul_poly(A) - f2.mul_poly(B)
    rel2 = f2.mul_poly(A) - (f3 * 2).mul_poly(B)
    C, D = rel1.polynomial(), rel2.polynomial()
    orders = (order_of_contact([f1, f2], [A, -B], C),
              order_of_contact([f2, f3], [A, B * -2], D))
    b1 = B(Fraction(1))
    if b1 == 0:
        raise NoSolution(f"B_{n}(1) = 0; no approximant at this step")
    approx = -D(Fraction(1)) / (2 * b1)
    with mpmath.workprec(precision):
        err = abs(zeta3(precision) - to_mpf(approx))
    return AperyStep(n, A, B, C, D, approx, err, orders)


def apery_sequence(n_max, precision=200):
    """Steps ``1..n_max`` and the ratios ``abs_error(n+1) / abs_error(n)``."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    steps = tuple(apery_step(n, precision) for n in range(1, n_max + 1))
    with mpmath.workprec(precision):
        ratios = tuple(b.abs_error / a.abs_error for a, b in zip(steps, steps[1:]))
    return AperySequence(steps, ratios)
